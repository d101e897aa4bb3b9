#!/usr/bin/env python3
"""Sweep the classification drivers over character grids and print a summary.

For each (family, p, character) cell this runs the family driver, counts the
isomorphism classes and their dimensions, and cross-checks against the
brute-force oracle whenever the regular module is small enough.

Usage:
    python3 scripts/classification_sweep.py            # default grid
    python3 scripts/classification_sweep.py --family dim4 --primes 2 3
    python3 scripts/classification_sweep.py --json out.json
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from modlie.errors import ModlieError, NeedsExtension, TooLarge
from modlie.gfp import ff_make
from modlie.uenv import Character
from modlie.repmod import module_iso, oracle_irreducibles
from modlie.classify import (
    classify_dim2,
    classify_dim4,
    classify_sl2,
    make_dim2,
    make_dim4,
    make_sl2,
)

# character grids per family: label patterns filled with basis labels
GRIDS = {
    "dim2": [{}, {"x": 1}, {"h": 1}, {"h": 1, "x": 1}],
    "sl2": [{}, {"f": 1}, {"h": 1}, {"e": 1}, {"e": 1, "f": 1}],
    "dim4": [{}, {"x": 1}, {"y": 1}, {"z": 1}, {"z": 1, "x": 1}, {"t": 1}],
}
MAKERS = {"dim2": make_dim2, "sl2": make_sl2, "dim4": make_dim4}
DRIVERS = {"dim2": classify_dim2, "sl2": classify_sl2, "dim4": classify_dim4}


@dataclass
class SweepConfig:
    families: list = field(default_factory=lambda: ["dim2", "sl2", "dim4"])
    primes: list = field(default_factory=lambda: [2, 3])
    field_degree: int = 1
    oracle_bound: int = 512
    json_path: str = ""


def run_cell(config: SweepConfig, family: str, p: int, values: dict) -> dict:
    if family == "sl2" and p == 2:
        return {}
    fd = ff_make(p, config.field_degree)
    L, P = MAKERS[family](fd)
    S = Character(L, values)
    cell = {"family": family, "p": p, "m": config.field_degree,
            "character": {k: str(v) for k, v in values.items()}}
    try:
        report = DRIVERS[family](S)
    except NeedsExtension as exc:
        cell.update(status="needs-extension", degree=exc.degree)
        return cell
    except ModlieError as exc:
        cell.update(status=type(exc).__name__, message=str(exc))
        return cell
    cell.update(status="ok", case=report.case, count=report.count,
                dims=sorted(c.dim for c in report.classes),
                verified=report.verified)
    if fd.q ** L.n <= config.oracle_bound:
        try:
            oracle = oracle_irreducibles(L, P, S)
        except TooLarge:
            cell["oracle"] = "skipped"
            return cell
        matched = (len(oracle) == report.count and all(
            any(module_iso(o, c.rep, irreducible=True) for c in report.classes)
            for o in oracle))
        cell["oracle"] = "match" if matched else "MISMATCH"
    else:
        cell["oracle"] = "skipped"
    return cell


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", choices=sorted(GRIDS), action="append",
                        dest="families")
    parser.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    parser.add_argument("--field-degree", type=int, default=1)
    parser.add_argument("--json", dest="json_path", default="")
    args = parser.parse_args(argv)
    config = SweepConfig(
        families=args.families or ["dim2", "sl2", "dim4"],
        primes=args.primes,
        field_degree=args.field_degree,
        json_path=args.json_path,
    )

    cells = []
    for family in config.families:
        for p in config.primes:
            for values in GRIDS[family]:
                cell = run_cell(config, family, p, values)
                if cell:
                    cells.append(cell)

    widths = (6, 3, 24, 18, 6, 14, 10)
    header = ("family", "p", "character", "case/status", "count", "dims", "oracle")
    print("  ".join(f"{h:<{w}}" for h, w in zip(header, widths)))
    mismatches = 0
    for c in cells:
        char = ",".join(f"{k}={v}" for k, v in c["character"].items()) or "0"
        if c["status"] == "ok":
            row = (c["family"], str(c["p"]), char, c["case"], str(c["count"]),
                   str(c["dims"]), c.get("oracle", "-"))
            if c.get("oracle") == "MISMATCH":
                mismatches += 1
        else:
            detail = c["status"] + (f"({c['degree']})" if "degree" in c else "")
            row = (c["family"], str(c["p"]), char, detail, "-", "-", "-")
        print("  ".join(f"{v:<{w}}" for v, w in zip(row, widths)))

    if config.json_path:
        with open(config.json_path, "w") as fh:
            json.dump(cells, fh, indent=2, sort_keys=True)
        print(f"\nwrote {config.json_path}")
    if mismatches:
        print(f"\n{mismatches} oracle mismatch(es)", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
