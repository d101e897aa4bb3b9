"""Reduced enveloping algebras u(L,S).

PBW monomials e_1^{a_1}...e_n^{a_n} with 0 <= a_i <= p-1 form the basis;
products are straightened with the rewriting rules
    e_j e_i -> e_i e_j + [e_j, e_i]          (j > i)
    e_i^p   -> iota(e_i^[p]) + S(e_i)^p . 1
both of which strictly decrease (total degree, inversions), so the recursion
terminates.  Single-generator-times-monomial products are memoized; the same
adjacent products recur heavily.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AlgebraMismatch, BadCoefficient, TooLarge
from .gfp import FieldElement
from .liealg import LieAlgebra, LieElement
from .pstruct import PMapping


def binom_mod(s: int, t: int, p: int) -> int:
    """Binomial coefficient mod p by Lucas' theorem."""
    if t < 0 or t > s:
        return 0
    out = 1
    while s or t:
        sd, td = s % p, t % p
        if td > sd:
            return 0
        num = den = 1
        for i in range(td):
            num = num * (sd - i) % p
            den = den * (i + 1) % p
        out = out * num * pow(den, -1, p) % p
        s //= p
        t //= p
    return out


class Character:
    """Linear form S on L, stored by its values on the basis."""

    def __init__(self, algebra: LieAlgebra, values):
        self.algebra = algebra
        fd = algebra.field
        if isinstance(values, dict):
            vec = [0] * algebra.n
            for lbl, v in values.items():
                if lbl not in algebra.basis:
                    raise BadCoefficient(f"unknown basis label {lbl!r} in character")
                vec[algebra.basis.index(lbl)] = algebra._coeff_idx(v)
            self.values = vec
        else:
            self.values = [algebra._coeff_idx(v) for v in values]
            if len(self.values) != algebra.n:
                raise BadCoefficient("character needs one value per basis element")

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "Character":
        return cls(algebra, [0] * algebra.n)

    def of(self, x: LieElement) -> FieldElement:
        fd = self.algebra.field
        acc = 0
        for c, v in zip(x.coeffs_idx, self.values):
            if c and v:
                acc = fd.add(acc, fd.mul(c, v))
        return FieldElement(fd, acc)

    def is_zero(self) -> bool:
        return not any(self.values)

    def restrict(self, H: LieAlgebra, embed) -> "Character":
        """Character on a subalgebra H, given its coordinate embedding."""
        vals = []
        for i in range(H.n):
            hvec = [0] * H.n
            hvec[i] = 1
            lvec = embed(hvec)
            vals.append(self.of(LieElement(self.algebra, lvec)).idx)
        return Character(H, vals)

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and other.algebra == self.algebra
            and other.values == self.values
        )

    def __repr__(self):
        fd = self.algebra.field
        parts = [
            f"S({lbl})={fd.fmt(v)}" for lbl, v in zip(self.algebra.basis, self.values) if v
        ]
        return "[" + ", ".join(parts) + "]" if parts else "[S=0]"


class EnvAlgebra:
    """u(L,S) for a restricted structure (L, [p]) and character S."""

    def __init__(self, L: LieAlgebra, P: PMapping, S: Character):
        if P.algebra != L or S.algebra != L:
            raise AlgebraMismatch("p-mapping / character for a different algebra")
        self.L = L
        self.P = P
        self.S = S
        self.field = L.field
        self.p = L.field.p
        self.n = L.n
        self.dim = self.p ** self.n
        if self.dim > 2 ** 20:
            raise TooLarge(f"u(L,S) dimension {self.dim} exceeds 2^20")
        # reduction constants: iota(e_i)^p = iota(e_i^[p]) + S(e_i)^p . 1
        fd = self.field
        self._pimages = [P.images[i].coeffs_idx for i in range(self.n)]
        self._sconst = [fd.pow(S.values[i], self.p) for i in range(self.n)]
        self._memo: Dict[tuple, dict] = {}
        self._lock = threading.Lock()

    # -- element constructors ------------------------------------------------

    def zero_elem(self) -> "EnvElement":
        return EnvElement(self, {})

    def one(self) -> "EnvElement":
        return EnvElement(self, {(0,) * self.n: 1})

    def monomial(self, exps: Sequence[int], coeff=1) -> "EnvElement":
        exps = tuple(exps)
        if len(exps) != self.n or any(not 0 <= a < self.p for a in exps):
            raise BadCoefficient(f"bad exponent vector {exps}")
        c = self.L._coeff_idx(coeff)
        return EnvElement(self, {exps: c} if c else {})

    def embed(self, x: LieElement) -> "EnvElement":
        if x.algebra != self.L:
            raise AlgebraMismatch("element of a different algebra")
        terms = {}
        for i, c in enumerate(x.coeffs_idx):
            if c:
                e = [0] * self.n
                e[i] = 1
                terms[tuple(e)] = c
        return EnvElement(self, terms)

    # -- monomial index bijection ---------------------------------------------

    def mono_to_index(self, exps: Sequence[int]) -> int:
        idx = 0
        for a in reversed(exps):
            idx = idx * self.p + a
        return idx

    def index_to_mono(self, idx: int) -> tuple:
        out = []
        for _ in range(self.n):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def monomials(self):
        for idx in range(self.dim):
            yield self.index_to_mono(idx)

    # -- straightening core -----------------------------------------------------

    def _mul_gen_mono(self, i: int, exps: tuple) -> dict:
        """Straightened product iota(e_i) . e^a as {exponents: coeff}."""
        key = (i, exps)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        fd = self.field
        p = self.p
        j = next((k for k, a in enumerate(exps) if a), None)
        if j is None or i < j:
            out_e = list(exps)
            out_e[i] += 1
            result = {tuple(out_e): 1}
        elif i == j:
            if exps[i] + 1 < p:
                out_e = list(exps)
                out_e[i] += 1
                result = {tuple(out_e): 1}
            else:
                # e_i^p (rest) = (iota(e_i^[p]) + S(e_i)^p) . (rest)
                rest = list(exps)
                rest[i] = 0
                rest = tuple(rest)
                result = {}
                sc = self._sconst[i]
                if sc:
                    result[rest] = sc
                for k, c in enumerate(self._pimages[i]):
                    if c:
                        for mono, cc in self._mul_gen_mono(k, rest).items():
                            _acc(fd, result, mono, fd.mul(c, cc))
        else:
            # i > j: e_i e_j^{a_j} R = e_j (e_i e_j^{a_j-1} R) + [e_i,e_j] e_j^{a_j-1} R
            dec = list(exps)
            dec[j] -= 1
            dec = tuple(dec)
            result = {}
            for mono, c in self._mul_gen_mono(i, dec).items():
                for mono2, c2 in self._mul_gen_mono(j, mono).items():
                    _acc(fd, result, mono2, fd.mul(c, c2))
            br = self.L.bracket_basis(i, j)
            for k, c in enumerate(br):
                if c:
                    for mono, cc in self._mul_gen_mono(k, dec).items():
                        _acc(fd, result, mono, fd.mul(c, cc))
            result = {m: c for m, c in result.items() if c}
        with self._lock:
            self._memo.setdefault(key, result)
        return result

    def _mul_mono_terms(self, a: tuple, terms: dict) -> dict:
        """e^a . (sparse element), applying a's generators right to left."""
        fd = self.field
        cur = dict(terms)
        for i in range(self.n - 1, -1, -1):
            for _ in range(a[i]):
                nxt: dict = {}
                for mono, c in cur.items():
                    for mono2, c2 in self._mul_gen_mono(i, mono).items():
                        _acc(fd, nxt, mono2, fd.mul(c, c2))
                cur = {m: c for m, c in nxt.items() if c}
        return cur

    def __eq__(self, other):
        return (
            isinstance(other, EnvAlgebra)
            and other.L == self.L
            and other.P.images == self.P.images
            and other.S == self.S
        )

    def __repr__(self):
        return f"u({self.L!r}, S={self.S!r}), dim {self.dim}"

    # -- text form ---------------------------------------------------------------

    def parse_element(self, text: str) -> "EnvElement":
        """Parse "c*e^(a1,..,an) + c2*e^(..)" (coefficient part optional)."""
        fd = self.field
        terms = {}
        for chunk in str(text).split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "e^(" in chunk:
                head, tail = chunk.split("e^(", 1)
                if not tail.endswith(")"):
                    raise BadCoefficient(f"bad monomial {chunk!r}")
                exps = tuple(int(s) for s in tail[:-1].split(","))
                head = head.strip()
                if head.endswith("*"):
                    head = head[:-1].strip()
                c = fd.parse(head).idx if head else 1
            else:
                exps = (0,) * self.n
                c = fd.parse(chunk).idx
            if len(exps) != self.n or any(not 0 <= a < self.p for a in exps):
                raise BadCoefficient(f"bad exponent vector in {chunk!r}")
            _acc(fd, terms, exps, c)
        return EnvElement(self, {m: c for m, c in terms.items() if c})


def _acc(fd, d: dict, key, val):
    if not val:
        return
    cur = d.get(key, 0)
    d[key] = fd.add(cur, val)


class EnvElement:
    """Sparse element of u(L,S): exponent tuple -> nonzero coefficient."""

    __slots__ = ("env", "terms")

    def __init__(self, env: EnvAlgebra, terms: dict):
        self.env = env
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if not isinstance(other, EnvElement) or other.env != self.env:
            raise AlgebraMismatch("elements of different enveloping algebras")

    def __add__(self, other):
        self._check(other)
        fd = self.env.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(fd, out, m, c)
        return EnvElement(self.env, out)

    def __sub__(self, other):
        self._check(other)
        fd = self.env.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(fd, out, m, fd.neg(c))
        return EnvElement(self.env, out)

    def __neg__(self):
        fd = self.env.field
        return EnvElement(self.env, {m: fd.neg(c) for m, c in self.terms.items()})

    def scale(self, c) -> "EnvElement":
        fd = self.env.field
        ci = self.env.L._coeff_idx(c)
        return EnvElement(self.env, {m: fd.mul(ci, v) for m, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, EnvElement):
            return NotImplemented
        return self.scale(c)

    def __eq__(self, other):
        return (
            isinstance(other, EnvElement)
            and other.env == self.env
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def power(self, k: int) -> "EnvElement":
        out = self.env.one()
        for _ in range(k):
            out = pbw_mul(self.env, out, self)
        return out

    def text(self) -> str:
        fd = self.env.field
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=self.env.mono_to_index):
            c = self.terms[m]
            if any(m):
                parts.append(f"{fd.fmt(c)}*e^({','.join(str(a) for a in m)})")
            else:
                parts.append(fd.fmt(c))
        return " + ".join(parts)

    def __repr__(self):
        return self.text()


def uls_make(L: LieAlgebra, P: PMapping, S: Optional[Character] = None) -> EnvAlgebra:
    """Build u(L,S); S omitted or zero gives the restricted envelope u(L)."""
    if S is None:
        S = Character.zero(L)
    return EnvAlgebra(L, P, S)


def pbw_mul(A: EnvAlgebra, u: EnvElement, v: EnvElement) -> EnvElement:
    if u.env != A or v.env != A:
        raise AlgebraMismatch("operands not indexed by this algebra")
    fd = A.field
    out: dict = {}
    for a, ca in u.terms.items():
        part = A._mul_mono_terms(a, v.terms)
        for m, c in part.items():
            _acc(fd, out, m, fd.mul(ca, c))
    return EnvElement(A, out)


def env_embed(A: EnvAlgebra, x: LieElement) -> EnvElement:
    return A.embed(x)


def env_bracket_check(A: EnvAlgebra, x: LieElement, y: LieElement) -> bool:
    """iota(x)iota(y) - iota(y)iota(x) = iota([x,y])."""
    from .liealg import bracket

    ix, iy = A.embed(x), A.embed(y)
    lhs = pbw_mul(A, ix, iy) - pbw_mul(A, iy, ix)
    return lhs == A.embed(bracket(x, y))


def nested_commutator(A: EnvAlgebra, z: EnvElement, xs: Sequence[EnvElement],
                      t: Sequence[int]) -> EnvElement:
    """{z, x; t}: commutator with x_1 taken t_1 times, then x_2, etc."""
    if len(xs) != len(t):
        raise BadCoefficient("one multiplicity per generator")
    cur = z
    for x, mult in zip(xs, t):
        for _ in range(mult):
            cur = pbw_mul(A, cur, x) - pbw_mul(A, x, cur)
    return cur
