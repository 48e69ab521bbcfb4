"""
Seeded instance generation
"""

from .generator import FAMILIES, GeneratedInstance, InstanceFamily, InstanceGenerator, Scenario

__all__ = ['FAMILIES', 'GeneratedInstance', 'InstanceFamily', 'InstanceGenerator', 'Scenario']
