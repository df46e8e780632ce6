#!/usr/bin/env python3
"""
spikit test runner

Thin wrapper over pytest that selects test suites by directory and marker.

Usage:
    python scripts/run_tests.py                    # Unit, golden and e2e suites
    python scripts/run_tests.py --unit             # Unit tests only
    python scripts/run_tests.py --golden           # Template golden tests only
    python scripts/run_tests.py --e2e              # Command-line tests only
    python scripts/run_tests.py --performance      # Oracle and determinism runs
    python scripts/run_tests.py --data             # Tests that need the PRISMATIC corpus
    python scripts/run_tests.py --quick            # Unit tests, slow ones skipped
    python scripts/run_tests.py --verbose          # Verbose output
"""

import argparse
import subprocess
import sys
from pathlib import Path
from typing import List, Optional


def run_pytest(test_paths: List[str], extra_args: Optional[List[str]] = None) -> int:
    """Run pytest with given paths and arguments"""
    cmd = [sys.executable, "-m", "pytest"] + test_paths

    if extra_args:
        cmd.extend(extra_args)

    print(f"Running: {' '.join(cmd)}")
    result = subprocess.run(cmd, cwd=Path(__file__).parent.parent)
    return result.returncode


def main() -> int:
    parser = argparse.ArgumentParser(description="spikit test runner")

    # Test suite selection
    parser.add_argument("--unit", action="store_true", help="Run unit tests")
    parser.add_argument("--golden", action="store_true", help="Run golden tests")
    parser.add_argument("--e2e", action="store_true", help="Run CLI tests")
    parser.add_argument(
        "--performance", action="store_true", help="Run oracle/determinism tests"
    )
    parser.add_argument("--data", action="store_true", help="Run corpus tests")
    parser.add_argument("--quick", action="store_true", help="Unit tests, not slow")

    # Output options
    parser.add_argument("--verbose", "-v", action="store_true", help="Verbose output")
    parser.add_argument("--coverage", action="store_true", help="Run with coverage")

    args = parser.parse_args()

    test_paths: List[str] = []
    pytest_args: List[str] = []

    if args.unit or args.quick:
        test_paths.append("tests/unit/")
    if args.golden:
        test_paths.append("tests/golden/")
    if args.e2e:
        test_paths.append("tests/e2e/")
    if args.performance:
        test_paths.append("tests/performance/")
    if args.data:
        test_paths.append("tests/")
        pytest_args.extend(["-m", "data"])
    if args.quick:
        pytest_args.extend(["-m", "not slow"])

    if not test_paths:
        print("No specific suites selected - running unit, golden and e2e")
        test_paths = ["tests/unit/", "tests/golden/", "tests/e2e/"]

    if args.verbose:
        pytest_args.extend(["-v", "-s"])

    if args.coverage:
        pytest_args.extend(["--cov=spikit", "--cov-report=term"])

    pytest_args.append("--tb=short")

    print("=" * 50)
    print(f"Test paths: {', '.join(test_paths)}")
    print(f"Extra args: {' '.join(pytest_args)}")
    print("=" * 50)

    exit_code = run_pytest(test_paths, pytest_args)

    if exit_code == 0:
        print("\nAll tests passed")
    else:
        print(f"\nTests failed with exit code {exit_code}")

    return exit_code


if __name__ == "__main__":
    sys.exit(main())
