#!/usr/bin/env python3
"""
Demo script showing the complete smoothed Pareto-set workflow.

Author: Grigor Crandon
"""

import os
import subprocess
import sys

def run_command(cmd, description):
    """Run a command and print its description."""
    print(f"\n{'='*60}")
    print(f"🔧 {description}")
    print(f"{'='*60}")
    print(f"Running: {cmd}")
    print("-" * 40)

    result = subprocess.run(cmd, shell=True, capture_output=False)
    if result.returncode != 0:
        print(f"❌ Command failed with exit code {result.returncode}")
        return False
    print("✅ Command completed successfully")
    return True

def main():
    """Run the complete demo workflow."""
    print("🚀 SMOOTHED PARETO-SET ANALYSIS DEMO")
    print("=" * 60)

    # Change to repository root regardless of invocation location
    repo_root = os.path.dirname(os.path.abspath(__file__))
    os.chdir(repo_root)

    for file_path in ["out/instance.json", "out/sweep.csv", "out/tail.csv", "out/checks.json"]:
        if os.path.exists(file_path):
            os.remove(file_path)

    steps = [
        ("python cli.py --seed 1 --out out/instance.json generate --family hypercube -n 8 -d 2",
         "STEP 1: Generating a seeded hypercube instance with two perturbed objectives"),
        ("python cli.py pareto out/instance.json",
         "STEP 2: Enumerating its Pareto set"),
        ("python cli.py --out out/checks.json witness-check out/instance.json",
         "STEP 3: Checking witnesses, certificates and reconstruction on every Pareto-optimal solution"),
        ("python cli.py --trials 100 --out out/sweep.csv sweep --n-values 6,8,10 --phi-values 1,4",
         "STEP 4: Sweeping E[PO] over an (n, phi) grid"),
        ("python cli.py --trials 100 --out out/tail.csv tail --absolute --threshold 4 --threshold 16",
         "STEP 5: Empirical concentration tails"),
        ("python cli.py --trials 200000 prob-check -n 3 -k 2 --eps 0.05",
         "STEP 6: Monte-Carlo check of the box probability bound"),
    ]
    for cmd, description in steps:
        if not run_command(cmd, description):
            return 1

    print(f"\n{'='*60}")
    print("📁 GENERATED FILES")
    print(f"{'='*60}")

    for file_path in ["out/instance.json", "out/checks.json", "out/sweep.csv", "out/tail.csv"]:
        if os.path.exists(file_path):
            size = os.path.getsize(file_path)
            print(f"✅ {file_path:<30} {size:>8} bytes")
        else:
            print(f"❌ {file_path:<30} NOT FOUND")

    print(f"\n{'='*60}")
    print("🎉 DEMO COMPLETED SUCCESSFULLY!")
    print(f"{'='*60}")
    print("""
Key Features Demonstrated:
• ✅ Seeded smoothed instances (hypercube, explicit, zero-preserving, knapsack)
• ✅ Exact Pareto enumeration (brute force, Nemhauser-Ullmann)
• ✅ Witness certificates, reconstruction and rank checks
• ✅ Moment sweeps with confidence intervals and exponent fits
• ✅ Closed-form bounds evaluated in log space
• ✅ Command-line interface with CSV/JSON output

Next Steps:
• Open out/sweep.csv for per-cell means, moments and bounds
• Review out/checks.json for the witness-check summary
• Try `python cli.py path-trade graph.json` on your own AS graph
""")

    return 0

if __name__ == "__main__":
    sys.exit(main())
