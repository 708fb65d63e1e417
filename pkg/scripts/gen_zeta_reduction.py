#!/usr/bin/env python3
"""Build the packaged multizeta reduction tables.

Runs the double-shuffle elimination for all weights up to the cap,
attaches high-precision numeric values for the depth >= 2 generators, and
writes the JSON artifact used by parinv.zreduce.load_tables().

Usage:
    python3 scripts/gen_zeta_reduction.py [--max-weight 12] [--out PATH]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from parinv.zreduce import (ReductionTable, build_tables,  # noqa: E402
                            save_tables)
from parinv.zeta import zeta_word_mpmath, zeta_word_numeric  # noqa: E402


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-weight", type=int, default=12)
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parent.parent
                    / "src" / "parinv" / "data" / "zeta_reduction.json")
    args = ap.parse_args()

    t0 = time.time()
    gens, tables = build_tables(args.max_weight, verbose=True)
    print(f"elimination done in {time.time() - t0:.1f}s; generators:")
    for g in gens:
        print("   ", g)

    numeric = {}
    for g in gens:
        if len(g) >= 2:  # cache reference values for the non-classical ones
            t1 = time.time()
            numeric[g] = zeta_word_mpmath(g)
            if len(g) == 2:  # independent evaluator agreement check
                assert abs(numeric[g] - zeta_word_numeric(g, 1e-13)) < 1e-12
            print(f"numeric {g} = {numeric[g]!r}  ({time.time()-t1:.1f}s)")

    table = ReductionTable(generators=tuple(gens), tables=tables,
                           numeric=numeric)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    save_tables(table, args.out)
    print(f"wrote {args.out} ({args.out.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
