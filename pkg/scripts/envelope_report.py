#!/usr/bin/env python3
"""Report the minimal p-envelope of the non-restrictable 3-dim family.

For L = Fh + Fx + Fy with [h,x] = x, [h,y] = alpha y over GF(p^m) and
alpha^p != alpha, print the 4-dim envelope (brackets, p-map) and classify the
irreducible modules for a small grid of envelope characters S'' with
S''(h) = 0, covering all four envelope sub-cases.

Usage:
    python3 scripts/envelope_report.py               # p=3, m=2, alpha=theta
    python3 scripts/envelope_report.py --alpha 0,1
"""

import argparse
import sys
from dataclasses import dataclass

from modlie.errors import ModlieError, NeedsExtension
from modlie.gfp import ff_make
from modlie.pstruct import minimal_p_envelope, pmap_extend
from modlie.uenv import Character
from modlie.classify import classify_dim3alpha, make_dim3alpha


@dataclass
class EnvelopeConfig:
    p: int = 3
    m: int = 2
    alpha_text: str = "0,1"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=3)
    parser.add_argument("--m", type=int, default=2)
    parser.add_argument("--alpha", default="0,1",
                        help="alpha as a coefficient string (low-to-high)")
    args = parser.parse_args(argv)
    config = EnvelopeConfig(p=args.p, m=args.m, alpha_text=args.alpha)

    fd = ff_make(config.p, config.m)
    alpha = fd.parse(config.alpha_text)
    if fd.frob(alpha.idx) == alpha.idx:
        print(f"alpha = {fd.fmt(alpha.idx)} satisfies alpha^p = alpha; "
              "L is restrictable and has no proper envelope", file=sys.stderr)
        return 1

    L = make_dim3alpha(fd, alpha)
    env = minimal_p_envelope(L)
    G = env.ambient
    print(f"L = span(h, x, y) over GF({fd.p}^{fd.m}), alpha = {fd.fmt(alpha.idx)}")
    print(f"minimal p-envelope: dim {G.n}, basis {', '.join(G.basis)}")
    for (i, j), vec in sorted(G.table.items()):
        terms = " + ".join(f"{fd.fmt(c)}*{G.basis[k]}"
                           for k, c in enumerate(vec) if c) or "0"
        print(f"  [{G.basis[i]}, {G.basis[j]}] = {terms}")
    for i in range(G.n):
        img = pmap_extend(env.pmap, G.basis_element(i))
        terms = " + ".join(f"{fd.fmt(c)}*{G.basis[k]}"
                           for k, c in enumerate(img.coeffs_idx) if c) or "0"
        print(f"  {G.basis[i]}^[{fd.p}] = {terms}")

    print("\nenvelope characters S'' (S''(h) = 0) and their class tables:")
    grid = [
        {"t1": fd.fmt(alpha.idx)},
        {"x": "1"},
        {"y": "1"},
        {"x": "1", "y": "1"},
    ]
    for values in grid:
        label = ", ".join(f"S''({k})={v}" for k, v in values.items())
        try:
            r = classify_dim3alpha(alpha, Character(G, values))
        except NeedsExtension as exc:
            print(f"  {label}: needs GF({fd.p}^{exc.degree})")
            continue
        except ModlieError as exc:
            print(f"  {label}: {type(exc).__name__}: {exc}")
            continue
        dims = sorted(c.dim for c in r.classes)
        print(f"  {label}: case {r.case}, {r.count} class(es), dims {dims}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
