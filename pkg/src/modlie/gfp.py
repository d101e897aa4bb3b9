"""Exact arithmetic in GF(p^m) and linear / semilinear algebra over it.

Field elements are encoded internally by an integer index in [0, p^m):
the base-p digits of the index are the coefficients of the element in the
power basis 1, theta, ..., theta^(m-1).  All tables a field needs
(exp/log for multiplication, Frobenius) are precomputed once per field,
which keeps every arithmetic operation at table-lookup cost.  Supported
sizes are small by design (p <= 13), so full tables are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    ReducibleModulus,
    ShapeMismatch,
)

_SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), coefficient lists low-to-high
# ---------------------------------------------------------------------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(_poly_trim(a)) - 1 >= dm and len(a) > dm:
        a = _poly_trim(a)
        if len(a) - 1 < dm:
            break
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(mod):
            a[shift + i] = (a[shift + i] - factor * c) % p
        a = _poly_trim(a)
    return _poly_trim(a)


def _poly_is_irreducible(mod, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(mod) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for idx in range(p ** d):
            div = []
            t = idx
            for _ in range(d):
                div.append(t % p)
                t //= p
            div.append(1)
            if not _poly_mod(mod, div, p):
                return False
    return True


def _default_modulus(p, m):
    """Lexicographically-first monic irreducible of degree m over GF(p)."""
    if m == 1:
        return (0, 1)
    # lexicographic order on (c_0, ..., c_{m-1})
    from itertools import product

    for cand in product(range(p), repeat=m):
        mod = cand + (1,)
        if _poly_is_irreducible(list(mod), p):
            return mod
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over GF({p})")


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


# ---------------------------------------------------------------------------
# field descriptor
# ---------------------------------------------------------------------------

class FieldDesc:
    """GF(p^m) with all arithmetic tables precomputed.

    Index-level methods (`add`, `mul`, ...) operate on integer encodings and
    are the workhorses for the linear algebra layers; `element` wraps an
    index into a `FieldElement` for the public API.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int]):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(c % p for c in modulus)
        self._powers = [p ** i for i in range(m)]
        if m > 1:
            self._build_tables()

    # -- construction ------------------------------------------------------

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        self._idx2vec = []
        for idx in range(q):
            t = idx
            vec = []
            for _ in range(m):
                vec.append(t % p)
                t //= p
            self._idx2vec.append(tuple(vec))
        mod = list(self.modulus)

        def mul_raw(a_idx, b_idx):
            prod = _poly_mul(list(self._idx2vec[a_idx]), list(self._idx2vec[b_idx]), p)
            prod = _poly_mod(prod, mod, p)
            idx = 0
            for i, c in enumerate(prod):
                idx += c * self._powers[i]
            return idx

        # multiplicative generator -> exp/log tables
        factors = _prime_factors(q - 1)
        gen = None
        for cand in range(2, q):
            if all(self._pow_raw(cand, (q - 1) // f, mul_raw) != 1 for f in factors):
                gen = cand
                break
        if gen is None:  # pragma: no cover - cannot happen for a field
            raise ReducibleModulus("no multiplicative generator found; modulus not irreducible?")
        exp = [1] * (q - 1)
        log = [0] * q
        cur = 1
        for k in range(q - 1):
            exp[k] = cur
            log[cur] = k
            cur = mul_raw(cur, gen)
        self._exp = exp
        self._log = log
        self._frob = [self.pow(a, self.p) for a in range(q)]
        self._frob_inv = [0] * q
        for a in range(q):
            self._frob_inv[self._frob[a]] = a

    @staticmethod
    def _pow_raw(a, k, mul_raw):
        r = 1
        while k:
            if k & 1:
                r = mul_raw(r, a)
            a = mul_raw(a, a)
            k >>= 1
        return r

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldDesc)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    # -- index-level arithmetic --------------------------------------------

    def coeffs_of(self, idx: int) -> tuple:
        if self.m == 1:
            return (idx,)
        return self._idx2vec[idx]

    def index_of(self, coeffs: Sequence[int]) -> int:
        idx = 0
        for i, c in enumerate(coeffs):
            idx += (c % self.p) * self._powers[i]
        return idx

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        va, vb = self._idx2vec[a], self._idx2vec[b]
        idx = 0
        for i in range(self.m):
            idx += ((va[i] + vb[i]) % self.p) * self._powers[i]
        return idx

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        va, vb = self._idx2vec[a], self._idx2vec[b]
        idx = 0
        for i in range(self.m):
            idx += ((va[i] - vb[i]) % self.p) * self._powers[i]
        return idx

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        va = self._idx2vec[a]
        idx = 0
        for i in range(self.m):
            idx += ((-va[i]) % self.p) * self._powers[i]
        return idx

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        if self.m == 1:
            return pow(a, k % (self.p - 1) if k >= 0 else k, self.p) if self.p > 2 else (a if k != 0 else 1)
        if hasattr(self, "_exp"):
            return self._exp[(self._log[a] * k) % (self.q - 1)]
        r = 1
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def frob(self, a: int) -> int:
        if self.m == 1:
            return a
        return self._frob[a]

    def frob_inv(self, a: int) -> int:
        if self.m == 1:
            return a
        return self._frob_inv[a]

    def trace(self, a: int) -> int:
        """Trace down to the prime field; result is an index in [0, p)."""
        t = 0
        cur = a
        for _ in range(self.m):
            t = self.add(t, cur)
            cur = self.frob(cur)
        return t

    def embed_int(self, n: int) -> int:
        """Index of the prime-subfield element n mod p."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    # -- public element API --------------------------------------------------

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.m:
            raise DegreeMismatch(f"expected {self.m} coefficients, got {len(coeffs)}")
        return FieldElement(self, self.index_of(coeffs))

    def from_index(self, idx: int) -> "FieldElement":
        return FieldElement(self, idx)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def parse(self, text: str) -> "FieldElement":
        """Parse the text encoding: "2" or "1,2" (coefficients low-to-high)."""
        parts = [s.strip() for s in str(text).split(",")]
        try:
            vals = [int(s) for s in parts]
        except ValueError as exc:
            raise DegreeMismatch(f"cannot parse field element {text!r}") from exc
        if len(vals) == 1:
            return FieldElement(self, vals[0] % self.p)
        if len(vals) != self.m:
            raise DegreeMismatch(
                f"{len(vals)} coefficients in {text!r}, field has degree {self.m}"
            )
        return self.element(vals)

    def fmt(self, idx: int) -> str:
        if self.m == 1:
            return str(idx)
        return ",".join(str(c) for c in self._idx2vec[idx])


_FIELD_CACHE: dict = {}


def ff_make(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldDesc:
    """Build (or fetch from cache) a field descriptor for GF(p^m).

    With no modulus given and m > 1, the lexicographically-first monic
    irreducible of degree m is selected, so results are reproducible.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p not in _SUPPORTED_PRIMES:
        raise NotPrime(f"characteristic {p} outside supported range (p <= 13)")
    if m < 1:
        raise DegreeMismatch("extension degree must be >= 1")
    if modulus is None:
        mod = _default_modulus(p, m)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise DegreeMismatch(f"modulus must be monic of degree {m}")
        if m > 1 and not _poly_is_irreducible(list(mod), p):
            raise ReducibleModulus(f"modulus {list(mod)} is reducible over GF({p})")
    key = (p, m, mod)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldDesc(p, m, mod)
    return _FIELD_CACHE[key]


class FieldElement:
    """Immutable element of a FieldDesc, stored as an integer index."""

    __slots__ = ("field", "idx")

    def __init__(self, field: FieldDesc, idx: int):
        self.field = field
        self.idx = idx

    @property
    def coeffs(self) -> tuple:
        return self.field.coeffs_of(self.idx)

    def _co(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("operands live in different fields")
            return other.idx
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.idx, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.idx, o))

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.idx))

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.idx, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.idx, o))

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.idx))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.idx, k))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.idx))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.idx))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.idx == other.idx
        if isinstance(other, int):
            return self.idx == other % self.field.p and (
                self.field.m == 1 or self.idx < self.field.p
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.idx))

    def __bool__(self):
        return self.idx != 0

    def __repr__(self):
        return f"{self.field.fmt(self.idx)}"


# ---------------------------------------------------------------------------
# Frobenius and Artin-Schreier
# ---------------------------------------------------------------------------

def frobenius(a: FieldElement, inverse: bool = False) -> FieldElement:
    """a^p, or with `inverse` the unique b with b^p = a."""
    fd = a.field
    idx = fd.frob_inv(a.idx) if inverse else fd.frob(a.idx)
    return FieldElement(fd, idx)


def artin_schreier_roots(c: FieldElement) -> list:
    """All roots of X^p - X = c in c's field, by exhaustive evaluation.

    The result is empty or has exactly p elements forming a coset of the
    prime field.
    """
    fd = c.field
    roots = []
    for a in fd.elements():
        if fd.sub(fd.pow(a, fd.p), a) == c.idx:
            roots.append(FieldElement(fd, a))
    return roots


def artin_schreier_solvable(c: FieldElement) -> bool:
    """Trace diagnostic: X^p - X = c has roots iff Tr(c) = 0."""
    return c.field.trace(c.idx) == 0


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def rref_rows(fd: FieldDesc, rows: list) -> tuple:
    """Reduced row echelon form of a list of index-encoded row vectors.

    Returns (rows, pivots); zero rows are dropped.  Input is not mutated.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = fd.inv(rows[r][c])
        if inv != 1:
            rows[r] = [fd.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [fd.sub(ri[k], fd.mul(f, rr[k])) for k in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def echelon_insert(fd: FieldDesc, basis: list, pivots: list, v: list) -> bool:
    """Reduce v against an RREF basis; insert if independent.

    Mutates basis/pivots, keeps them in RREF.  Returns True if v was added.
    """
    v = list(v)
    for row, c in zip(basis, pivots):
        if v[c] != 0:
            f = v[c]
            v = [fd.sub(v[k], fd.mul(f, row[k])) for k in range(len(v))]
    lead = None
    for c, x in enumerate(v):
        if x != 0:
            lead = c
            break
    if lead is None:
        return False
    inv = fd.inv(v[lead])
    if inv != 1:
        v = [fd.mul(inv, x) for x in v]
    for i in range(len(basis)):
        if basis[i][lead] != 0:
            f = basis[i][lead]
            basis[i] = [fd.sub(basis[i][k], fd.mul(f, v[k])) for k in range(len(v))]
    pos = 0
    while pos < len(pivots) and pivots[pos] < lead:
        pos += 1
    basis.insert(pos, v)
    pivots.insert(pos, lead)
    return True


class Matrix:
    """Dense matrix over a FieldDesc; entries stored as integer indices."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldDesc, data: list):
        self.field = field
        self.data = [list(r) for r in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for r in self.data:
            if len(r) != self.cols:
                raise ShapeMismatch("ragged rows")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_elements(cls, field: FieldDesc, grid: Iterable[Iterable]) -> "Matrix":
        data = []
        for row in grid:
            out = []
            for x in row:
                out.append(field.element(x).idx)
            data.append(out)
        return cls(field, data)

    @classmethod
    def identity(cls, field: FieldDesc, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldDesc, r: int, c: int) -> "Matrix":
        return cls(field, [[0] * c for _ in range(r)])

    # -- access --------------------------------------------------------------

    def __getitem__(self, rc) -> FieldElement:
        r, c = rc
        return FieldElement(self.field, self.data[r][c])

    def row(self, i: int) -> list:
        return list(self.data[i])

    def col(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def entries(self) -> list:
        return [[FieldElement(self.field, x) for x in row] for row in self.data]

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("addition shape mismatch")
        fd = self.field
        return Matrix(
            fd,
            [
                [fd.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        fd = self.field
        return Matrix(
            fd,
            [
                [fd.sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __neg__(self) -> "Matrix":
        fd = self.field
        return Matrix(fd, [[fd.neg(a) for a in row] for row in self.data])

    def scale(self, c) -> "Matrix":
        fd = self.field
        ci = fd.element(c).idx
        return Matrix(fd, [[fd.mul(ci, a) for a in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.cols != other.rows:
                raise ShapeMismatch("matmul shape mismatch")
            fd = self.field
            bt = list(zip(*other.data))
            out = []
            for ra in self.data:
                row = []
                for cb in bt:
                    acc = 0
                    for a, b in zip(ra, cb):
                        if a and b:
                            acc = fd.add(acc, fd.mul(a, b))
                    row.append(acc)
                out.append(row)
            return Matrix(fd, out)
        return self.scale(other)

    def apply(self, v: list) -> list:
        """Matrix times index-encoded column vector."""
        fd = self.field
        out = []
        for row in self.data:
            acc = 0
            for a, b in zip(row, v):
                if a and b:
                    acc = fd.add(acc, fd.mul(a, b))
            out.append(acc)
        return out

    def mat_pow(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeMismatch("power of non-square matrix")
        r = Matrix.identity(self.field, self.rows)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(c) for c in zip(*self.data)]) if self.data else self

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.data)))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __repr__(self):
        fd = self.field
        body = "; ".join(" ".join(fd.fmt(x) for x in row) for row in self.data)
        return f"Matrix[{body}]"

    # -- elimination -------------------------------------------------------------

    def rref(self) -> tuple:
        rows, pivots = rref_rows(self.field, self.data)
        return Matrix(self.field, rows) if rows else Matrix.zeros(self.field, 0, self.cols), pivots

    def rank(self) -> int:
        return len(rref_rows(self.field, self.data)[0])

    def nullspace(self) -> list:
        """Echelonized basis of the right nullspace, as index vectors."""
        fd = self.field
        rows, pivots = rref_rows(fd, self.data)
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [0] * self.cols
            v[fc] = 1
            for r, pc in enumerate(pivots):
                v[pc] = fd.neg(rows[r][fc])
            basis.append(v)
        basis, _ = rref_rows(fd, basis)
        return basis

    def charpoly(self) -> list:
        """Characteristic polynomial det(XI - A), Berkowitz (division-free).

        Returns index-encoded coefficients low-to-high, monic of degree n.
        """
        fd = self.field
        n = self.rows
        if n != self.cols:
            raise ShapeMismatch("charpoly of non-square matrix")
        if n == 0:
            return [1]
        A = self.data
        # Berkowitz: iteratively build the coefficient vector
        vec = [fd.neg(A[0][0]), 1]  # charpoly of 1x1 leading block, low-to-high
        for k in range(1, n):
            a = A[k][k]
            R = [A[k][j] for j in range(k)]          # row vector
            C = [A[i][k] for i in range(k)]          # column vector
            M = [[A[i][j] for j in range(k)] for i in range(k)]
            # Toeplitz coefficients: t_0 = 1 (as -1 convention below),
            # t_1 = -a, t_{j} = -(R M^{j-2} C) for j >= 2
            t = [1, fd.neg(a)]
            cur = C
            for _ in range(k):
                val = 0
                for x, y in zip(R, cur):
                    if x and y:
                        val = fd.add(val, fd.mul(x, y))
                t.append(fd.neg(val))
                nxt = [0] * k
                for i in range(k):
                    acc = 0
                    Mi = M[i]
                    for j in range(k):
                        if Mi[j] and cur[j]:
                            acc = fd.add(acc, fd.mul(Mi[j], cur[j]))
                    nxt[i] = acc
                cur = nxt
            # new_vec (degree k+1) = convolution of t with vec (vec high-degree first)
            old = list(reversed(vec))  # high-to-low
            new = [0] * (k + 2)
            for i, ti in enumerate(t):
                if ti == 0:
                    continue
                for j, vj in enumerate(old):
                    if vj and i + j <= k + 1:
                        new[i + j] = fd.add(new[i + j], fd.mul(ti, vj))
            vec = list(reversed(new))
        return vec


# ---------------------------------------------------------------------------
# solving
# ---------------------------------------------------------------------------

@dataclass
class LinearSolution:
    """Particular solution plus echelonized nullspace basis (index vectors)."""

    field: FieldDesc
    particular: list
    nullspace: list

    def count(self) -> int:
        return self.field.q ** len(self.nullspace)

    def enumerate(self):
        fd = self.field
        sols = []
        k = len(self.nullspace)

        def rec(i, acc):
            if i == k:
                sols.append(list(acc))
                return
            for c in fd.elements():
                rec(i + 1, [fd.add(a, fd.mul(c, b)) for a, b in zip(acc, self.nullspace[i])])

        rec(0, self.particular)
        return sols


def mat_solve(A: Matrix, b) -> Optional[LinearSolution]:
    """Exact solve A x = b; returns None when inconsistent.

    b may be a Matrix column, an index vector, or a list of FieldElement.
    """
    fd = A.field
    if isinstance(b, Matrix):
        if b.cols != 1:
            raise ShapeMismatch("right-hand side must be a single column")
        bv = [b.data[i][0] for i in range(b.rows)]
    else:
        # plain ints are taken as element indices (identical to residues on
        # prime fields, which is where raw ints typically originate)
        bv = [x.idx if isinstance(x, FieldElement) else int(x) for x in b]
    if len(bv) != A.rows:
        raise ShapeMismatch("rhs length mismatch")
    aug = [list(A.data[i]) + [bv[i]] for i in range(A.rows)]
    rows, pivots = rref_rows(fd, aug)
    for r, pc in zip(rows, pivots):
        if pc == A.cols:
            return None
    particular = [0] * A.cols
    for r, pc in zip(rows, pivots):
        particular[pc] = r[A.cols]
    return LinearSolution(fd, particular, A.nullspace())


@dataclass
class SemilinearMap:
    """v -> B . phi(v), phi the componentwise Frobenius."""

    matrix: Matrix

    def __call__(self, v: list) -> list:
        fd = self.matrix.field
        return self.matrix.apply([fd.frob(x) for x in v])


@dataclass
class SemilinearSolutions:
    """All alpha with B.phi(alpha) = c: affine space, optionally enumerated."""

    field: FieldDesc
    particular: list
    nullspace: list
    solutions: Optional[list]  # None when above the enumeration bound

    @property
    def too_many(self) -> bool:
        return self.solutions is None


_ENUM_BOUND = 10 ** 5


def solve_semilinear(f: SemilinearMap, c) -> Optional[SemilinearSolutions]:
    """Solve B.phi(alpha) = c by substituting beta = phi(alpha).

    Returns None when there is no solution.  Solutions are enumerated when
    the solution set has at most 10^5 elements, else only the affine
    description (particular + basis) is returned.
    """
    B = f.matrix
    if B.rows != B.cols:
        raise ShapeMismatch("semilinear solve requires a square system")
    fd = B.field
    lin = mat_solve(B, c)
    if lin is None:
        return None
    part = [fd.frob_inv(x) for x in lin.particular]
    basis = [[fd.frob_inv(x) for x in v] for v in lin.nullspace]
    count = fd.q ** len(basis)
    sols = None
    if count <= _ENUM_BOUND:
        sols = LinearSolution(fd, part, basis).enumerate()
    return SemilinearSolutions(fd, part, basis, sols)


# ---------------------------------------------------------------------------
# small vector helpers shared by the higher layers (index-encoded)
# ---------------------------------------------------------------------------

def vadd(fd: FieldDesc, u: list, v: list) -> list:
    return [fd.add(a, b) for a, b in zip(u, v)]


def vsub(fd: FieldDesc, u: list, v: list) -> list:
    return [fd.sub(a, b) for a, b in zip(u, v)]


def vscale(fd: FieldDesc, c: int, u: list) -> list:
    return [fd.mul(c, a) for a in u]


def vzero(n: int) -> list:
    return [0] * n
