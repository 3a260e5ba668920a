"""Derive the expected trade-volume spectra by brute force and freeze them as JSON.

For every codeword support of RM(v-t-1, v) up to the volume gate, all
2-colorings are tried against the containment-count definition directly.  For
the smallest cubes the volume sets are also taken from an enumeration of all
disjoint leg pairs, which does not rely on the Reed-Muller reduction at all.

Usage: python scripts/derive_spectrum_fixtures.py > tests/data/spectrum_expected.json
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import leg_pair_volumes, rm_codewords, splittable_by_partition  # noqa: E402

CASES = [(3, 1, 4), (4, 1, 8), (4, 2, 8), (5, 2, 16), (5, 3, 16)]
LEG_PAIR_CASES = {(3, 1), (4, 1), (4, 2)}


def derive(v, t, max_volume):
    counts = {}
    checked = 0
    for support in rm_codewords(v - t - 1, v):
        if not 0 < len(support) <= 2 * max_volume:
            continue
        checked += 1
        if splittable_by_partition(support, v, t):
            vol = len(support) // 2
            counts[vol] = counts.get(vol, 0) + 1
    record = {
        "v": v,
        "t": t,
        "max_volume": max_volume,
        "unitrades_checked": checked,
        "counts": {str(k): counts[k] for k in sorted(counts)},
        "volumes": sorted(counts),
    }
    if (v, t) in LEG_PAIR_CASES:
        legs = sorted(x for x in leg_pair_volumes(v, t) if x <= max_volume)
        if legs != record["volumes"]:
            raise SystemExit(f"oracles disagree at {(v, t)}: {legs} vs {record['volumes']}")
    return record


def main():
    out = []
    for case in CASES:
        print(f"deriving {case}", file=sys.stderr)
        out.append(derive(*case))
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
