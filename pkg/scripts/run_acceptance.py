#!/usr/bin/env python3
"""Run the acceptance suite standalone, printing one verdict per criterion."""
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main() -> int:
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "pytest",
            str(ROOT / "tests" / "test_acceptance.py"),
            "-q",
            "-s",
            "--no-header",
        ],
        cwd=ROOT,
    )
    return proc.returncode


if __name__ == "__main__":
    raise SystemExit(main())
