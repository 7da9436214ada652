"""Regenerate the frozen analytic-front samples under src/archdam/data/golden.

Run from the repository root:

    python3 scripts/make_golden.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from archdam.benchmarks import get_benchmark  # noqa: E402

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "archdam", "data", "golden")


def main():
    for name in ("sch", "zdt1", "zdt2"):
        front = get_benchmark(name).analytic_front(1000)
        path = os.path.join(OUT, f"{name}_front.csv")
        with open(path, "w", newline="\n") as fh:
            fh.write("f1,f2\n")
            for f1, f2 in front:
                fh.write(f"{f1:.17g},{f2:.17g}\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
