"""
Shared helpers: deterministic seed derivation for trials and blocks.
"""

from .seeds import derive_seed, derive_seeds, splitmix64, trial_rng

__all__ = ['derive_seed', 'derive_seeds', 'splitmix64', 'trial_rng']
