"""Structure-constant Lie algebras over small finite fields.

An algebra stores its bracket table only for ordered basis pairs i < j, so
antisymmetry holds by construction; the Jacobi identity is verified on all
basis triples when the algebra is built.  Subspaces are canonicalized by
reduced row echelon form, making subspace equality plain tuple equality.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from .errors import (
    AlgebraMismatch,
    BadCoefficient,
    DegreeMismatch,
    DuplicateLabel,
    JacobiViolation,
    NotSubalgebra,
    TooLarge,
)
from .gfp import FieldDesc, FieldElement, Matrix, echelon_insert, ff_make, rref_rows, vadd, vscale, vzero

MAX_DIM = 16


class LieAlgebra:
    """Lie algebra given by basis labels and structure constants."""

    def __init__(self, field: FieldDesc, basis: Sequence[str], table: dict,
                 check: bool = True):
        """table maps (i, j) with i < j to the index-encoded coefficient
        vector of [e_i, e_j]; missing pairs are zero brackets."""
        self.field = field
        self.basis = tuple(basis)
        self.n = len(self.basis)
        if self.n > MAX_DIM:
            raise TooLarge(f"dimension {self.n} exceeds supported cap {MAX_DIM}")
        if len(set(self.basis)) != self.n:
            raise DuplicateLabel("basis labels must be unique")
        self.table = {}
        for (i, j), vec in table.items():
            if not (0 <= i < j < self.n):
                raise BadCoefficient(f"bad table key {(i, j)}")
            vec = tuple(vec)
            if any(vec):
                self.table[(i, j)] = vec
        if check:
            self._check_jacobi()

    # -- construction -----------------------------------------------------

    def _check_jacobi(self):
        for i, j, k in combinations(range(self.n), 3):
            ei, ej, ek = (self.basis_element(t).coeffs_idx for t in (i, j, k))
            s = vadd(
                self.field,
                vadd(
                    self.field,
                    self.bracket_vec(self.bracket_vec(ei, ej), ek),
                    self.bracket_vec(self.bracket_vec(ej, ek), ei),
                ),
                self.bracket_vec(self.bracket_vec(ek, ei), ej),
            )
            if any(s):
                raise JacobiViolation(self.basis[i], self.basis[j], self.basis[k], s)

    # -- elements -----------------------------------------------------------

    def zero(self) -> "LieElement":
        return LieElement(self, vzero(self.n))

    def basis_element(self, i: int) -> "LieElement":
        v = vzero(self.n)
        v[i] = 1
        return LieElement(self, v)

    def element(self, coeffs) -> "LieElement":
        """Build an element from index vector, FieldElement sequence, or a
        {label: coefficient} mapping."""
        if isinstance(coeffs, LieElement):
            if coeffs.algebra is not self and coeffs.algebra != self:
                raise AlgebraMismatch("element of a different algebra")
            return coeffs
        fd = self.field
        if isinstance(coeffs, dict):
            v = vzero(self.n)
            for label, c in coeffs.items():
                if label not in self.basis:
                    raise BadCoefficient(f"unknown basis label {label!r}")
                v[self.basis.index(label)] = self._coeff_idx(c)
            return LieElement(self, v)
        vec = [self._coeff_idx(c) for c in coeffs]
        if len(vec) != self.n:
            raise BadCoefficient(f"expected {self.n} coefficients")
        return LieElement(self, vec)

    def _coeff_idx(self, c) -> int:
        fd = self.field
        if isinstance(c, FieldElement):
            if c.field != fd:
                raise BadCoefficient("coefficient from a different field")
            return c.idx
        if isinstance(c, int):
            return c % fd.p if fd.m == 1 else (c if 0 <= c < fd.q else c % fd.p)
        if isinstance(c, str):
            return fd.parse(c).idx
        raise BadCoefficient(f"cannot interpret coefficient {c!r}")

    # -- bracket -------------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> list:
        if i == j:
            return vzero(self.n)
        if i < j:
            vec = self.table.get((i, j))
            return list(vec) if vec else vzero(self.n)
        vec = self.table.get((j, i))
        return [self.field.neg(x) for x in vec] if vec else vzero(self.n)

    def bracket_vec(self, x: list, y: list) -> list:
        fd = self.field
        out = vzero(self.n)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj or i == j:
                    continue
                vec = self.bracket_basis(i, j)
                c = fd.mul(xi, yj)
                if c:
                    for k, vk in enumerate(vec):
                        if vk:
                            out[k] = fd.add(out[k], fd.mul(c, vk))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.field == other.field
            and self.basis == other.basis
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.field, self.basis, tuple(sorted(self.table.items()))))

    def __repr__(self):
        return f"LieAlgebra(dim={self.n}, basis={self.basis}, field={self.field})"


class LieElement:
    """Element of a LieAlgebra as an index-encoded coefficient vector."""

    __slots__ = ("algebra", "coeffs_idx")

    def __init__(self, algebra: LieAlgebra, coeffs_idx: list):
        self.algebra = algebra
        self.coeffs_idx = list(coeffs_idx)

    @property
    def coeffs(self) -> list:
        fd = self.algebra.field
        return [FieldElement(fd, c) for c in self.coeffs_idx]

    def is_zero(self) -> bool:
        return not any(self.coeffs_idx)

    def _check(self, other):
        if not isinstance(other, LieElement) or other.algebra != self.algebra:
            raise AlgebraMismatch("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return LieElement(self.algebra, vadd(self.algebra.field, self.coeffs_idx, other.coeffs_idx))

    def __sub__(self, other):
        self._check(other)
        fd = self.algebra.field
        return LieElement(self.algebra, [fd.sub(a, b) for a, b in zip(self.coeffs_idx, other.coeffs_idx)])

    def __neg__(self):
        fd = self.algebra.field
        return LieElement(self.algebra, [fd.neg(a) for a in self.coeffs_idx])

    def scale(self, c) -> "LieElement":
        fd = self.algebra.field
        ci = self.algebra._coeff_idx(c)
        return LieElement(self.algebra, vscale(fd, ci, self.coeffs_idx))

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and other.algebra == self.algebra
            and other.coeffs_idx == self.coeffs_idx
        )

    def __hash__(self):
        return hash(tuple(self.coeffs_idx))

    def __repr__(self):
        fd = self.algebra.field
        terms = [
            f"{fd.fmt(c)}*{lbl}" for c, lbl in zip(self.coeffs_idx, self.algebra.basis) if c
        ]
        return " + ".join(terms) if terms else "0"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    if x.algebra != y.algebra:
        raise AlgebraMismatch("bracket of elements in different algebras")
    return LieElement(x.algebra, x.algebra.bracket_vec(x.coeffs_idx, y.coeffs_idx))


def ad_matrix(x: LieElement) -> Matrix:
    """Matrix of y -> [x, y]; column j is [x, e_j] in the basis."""
    L = x.algebra
    cols = [L.bracket_vec(x.coeffs_idx, L.basis_element(j).coeffs_idx) for j in range(L.n)]
    return Matrix(L.field, [[cols[j][i] for j in range(L.n)] for i in range(L.n)])


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """Subspace of the algebra's underlying vector space, canonical RREF."""

    def __init__(self, algebra: LieAlgebra, rows: list, pivots: Optional[list] = None):
        self.algebra = algebra
        if pivots is None:
            rows, pivots = rref_rows(algebra.field, rows)
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, algebra: LieAlgebra, vectors: Iterable) -> "Subspace":
        rows = []
        for v in vectors:
            if isinstance(v, LieElement):
                rows.append(v.coeffs_idx)
            else:
                rows.append(algebra.element(v).coeffs_idx)
        return cls(algebra, rows)

    @classmethod
    def full(cls, algebra: LieAlgebra) -> "Subspace":
        return cls(algebra, [algebra.basis_element(i).coeffs_idx for i in range(algebra.n)])

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "Subspace":
        return cls(algebra, [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains_vec(self, v: list) -> bool:
        fd = self.algebra.field
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [fd.sub(v[k], fd.mul(f, row[k])) for k in range(len(v))]
        return not any(v)

    def contains(self, x) -> bool:
        if isinstance(x, LieElement):
            return self.contains_vec(x.coeffs_idx)
        if isinstance(x, Subspace):
            return all(self.contains_vec(r) for r in x.rows)
        return self.contains_vec(list(x))

    def basis_elements(self) -> list:
        return [LieElement(self.algebra, list(r)) for r in self.rows]

    def coords_of(self, v: list) -> Optional[list]:
        """Coordinates of v in the RREF basis, or None if v is outside."""
        fd = self.algebra.field
        v = list(v)
        coords = []
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            coords.append(f)
            if f:
                v = [fd.sub(v[k], fd.mul(f, row[k])) for k in range(len(v))]
        if any(v):
            return None
        return coords

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.algebra, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rows [a|a] for a in self, [b|0] for b in other."""
        fd = self.algebra.field
        n = self.algebra.n
        stacked = [list(r) + list(r) for r in self.rows]
        stacked += [list(r) + [0] * n for r in other.rows]
        rows, pivots = rref_rows(fd, stacked)
        out = [r[n:] for r in rows if not any(r[:n])]
        return Subspace(self.algebra, out)

    def complement_coords(self) -> list:
        """Indices of standard basis vectors spanning a complement."""
        return [c for c in range(self.algebra.n) if c not in self.pivots]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.algebra == other.algebra
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        elems = ", ".join(repr(e) for e in self.basis_elements())
        return f"span({elems})" if self.rows else "span(0)"


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------

def is_subalgebra(L: LieAlgebra, V: Subspace) -> bool:
    for a in V.rows:
        for b in V.rows:
            if not V.contains_vec(L.bracket_vec(list(a), list(b))):
                return False
    return True


def is_ideal(L: LieAlgebra, V: Subspace) -> bool:
    for i in range(L.n):
        e = L.basis_element(i).coeffs_idx
        for b in V.rows:
            if not V.contains_vec(L.bracket_vec(e, list(b))):
                return False
    return True


def derived_subalgebra(L: LieAlgebra, V: Optional[Subspace] = None) -> Subspace:
    if V is None:
        V = Subspace.full(L)
    elif not is_subalgebra(L, V):
        raise NotSubalgebra("derived subalgebra requires a subalgebra")
    vecs = []
    rows = [list(r) for r in V.rows]
    for a, b in combinations(rows, 2):
        vecs.append(L.bracket_vec(a, b))
    return Subspace(L, vecs)


def centralizer(L: LieAlgebra, V: Subspace) -> Subspace:
    """{x in L : [x, v] = 0 for all v in V} via stacked ad-transpose kernels."""
    if V.dim == 0:
        return Subspace.full(L)
    rows = []
    # x is in the centralizer iff for every generator v of V the map
    # x -> [x, v] vanishes; stack those linear conditions.
    for v in V.rows:
        adv = ad_matrix(LieElement(L, list(v)))
        # [x, v] = -[v, x] = -adv . x
        for r in adv.data:
            rows.append(list(r))
    M = Matrix(L.field, rows)
    return Subspace(L, M.nullspace())


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, Subspace.full(L))


# ---------------------------------------------------------------------------
# subspace enumeration and ideals
# ---------------------------------------------------------------------------

def count_subspaces(q: int, n: int) -> int:
    total = 0
    for k in range(n + 1):
        num = 1
        den = 1
        for i in range(k):
            num *= q ** (n - i) - 1
            den *= q ** (k - i) - 1
        total += num // den
    return total


def enumerate_subspaces(fd: FieldDesc, n: int, dim: Optional[int] = None):
    """Yield every subspace of F^n as an RREF row list, canonical order:
    by dimension, then lexicographically by echelon form."""
    dims = [dim] if dim is not None else range(n + 1)
    for k in dims:
        if k == 0:
            yield []
            continue
        for pivots in combinations(range(n), k):
            free_pos = []
            for r, pc in enumerate(pivots):
                for c in range(pc + 1, n):
                    if c not in pivots:
                        free_pos.append((r, c))
            for values in product(fd.elements(), repeat=len(free_pos)):
                rows = [[0] * n for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), val in zip(free_pos, values):
                    rows[r][c] = val
                yield rows


SUBSPACE_ENUM_BOUND = 10 ** 6


def ideals_enumerate(L: LieAlgebra) -> list:
    """All ideals, ordered by dimension then lexicographic echelon form."""
    if count_subspaces(L.field.q, L.n) > SUBSPACE_ENUM_BOUND:
        raise TooLarge("too many subspaces to enumerate")
    out = []
    for rows in enumerate_subspaces(L.field, L.n):
        V = Subspace(L, rows)
        if is_ideal(L, V):
            out.append(V)
    return out


# ---------------------------------------------------------------------------
# derived algebras from subspaces / quotients
# ---------------------------------------------------------------------------

def subalgebra_as_algebra(L: LieAlgebra, V: Subspace, labels: Optional[Sequence[str]] = None):
    """Realize a subalgebra as a LieAlgebra in its own right.

    Returns (H, embed) where embed maps H-coordinate vectors to L-coordinate
    vectors (rows of V's RREF basis).
    """
    if not is_subalgebra(L, V):
        raise NotSubalgebra("not closed under the bracket")
    fd = L.field
    k = V.dim
    if labels is None:
        labels = [f"g{i+1}" for i in range(k)]
    table = {}
    for i in range(k):
        for j in range(i + 1, k):
            br = L.bracket_vec(list(V.rows[i]), list(V.rows[j]))
            coords = V.coords_of(br)
            if coords is None:
                raise NotSubalgebra("bracket leaves the subspace")
            table[(i, j)] = coords
    H = LieAlgebra(fd, labels, table, check=False)

    def embed(hvec: list) -> list:
        out = vzero(L.n)
        for c, row in zip(hvec, V.rows):
            if c:
                out = vadd(fd, out, vscale(fd, c, list(row)))
        return out

    return H, embed


def quotient_algebra(L: LieAlgebra, I: Subspace):
    """Quotient L/I on the standard-basis complement of I.

    Returns (Q, project) with project mapping L-coordinates to Q-coordinates.
    """
    from .errors import NotIdeal

    if not is_ideal(L, I):
        raise NotIdeal("quotient requires an ideal")
    fd = L.field
    comp = I.complement_coords()
    labels = [L.basis[c] for c in comp]

    def project(v: list) -> list:
        v = list(v)
        for row, c in zip(I.rows, I.pivots):
            if v[c]:
                f = v[c]
                v = [fd.sub(v[k], fd.mul(f, row[k])) for k in range(len(v))]
        return [v[c] for c in comp]

    table = {}
    for a in range(len(comp)):
        for b in range(a + 1, len(comp)):
            br = L.bracket_vec(
                L.basis_element(comp[a]).coeffs_idx, L.basis_element(comp[b]).coeffs_idx
            )
            table[(a, b)] = project(br)
    Q = LieAlgebra(fd, labels, table, check=False)
    return Q, project


# ---------------------------------------------------------------------------
# JSON algebra files
# ---------------------------------------------------------------------------

def _subfield_embedding(small: FieldDesc, big: FieldDesc):
    """Embed GF(p^k) into GF(p^km') by sending the small field's generator to
    the lexicographically-least root of its modulus in the big field."""
    root = None
    for cand in big.elements():
        acc = 0
        power = 1  # big-field index of cand^i
        for coeff in small.modulus:
            if coeff:
                acc = big.add(acc, big.mul(big.embed_int(coeff), power))
            power = big.mul(power, cand)
        if acc == 0:
            root = cand
            break
    if root is None:  # pragma: no cover - guaranteed when degrees divide
        raise DegreeMismatch("no embedding root found")

    def embed(small_idx: int) -> int:
        coeffs = small.coeffs_of(small_idx)
        acc = 0
        power = 1
        for c in coeffs:
            if c:
                acc = big.add(acc, big.mul(big.embed_int(c), power))
            power = big.mul(power, root)
        return acc

    return embed


def lie_from_table(spec: dict, field_degree: Optional[int] = None) -> LieAlgebra:
    """Build an algebra from the JSON schema (see README for the format).

    `field_degree` overrides the file's "field_degree" (same p, default
    modulus), supporting rerun-in-an-extension workflows.
    """
    p = int(spec["p"])
    file_m = int(spec.get("field_degree", 1))
    m = int(field_degree) if field_degree is not None else file_m
    modulus = spec.get("modulus")
    parse_fd = None  # field whose encoding the file's coefficients use
    if field_degree is not None and field_degree != file_m:
        modulus = None  # the override always uses the deterministic default
        if file_m > 1:
            if m % file_m:
                raise DegreeMismatch(
                    f"GF({p}^{file_m}) does not embed into GF({p}^{m})"
                )
            parse_fd = ff_make(p, file_m, spec.get("modulus"))
    fd = ff_make(p, m, modulus)
    if parse_fd is not None:
        embed = _subfield_embedding(parse_fd, fd)
        parse = lambda text: embed(parse_fd.parse(text).idx)
    else:
        parse = lambda text: fd.parse(text).idx
    basis = list(spec["basis"])
    if len(set(basis)) != len(basis):
        raise DuplicateLabel("duplicate basis label in algebra file")
    idx = {lbl: i for i, lbl in enumerate(basis)}
    table = {}
    for key, terms in spec.get("brackets", {}).items():
        try:
            a, b = key.split("|")
        except ValueError as exc:
            raise BadCoefficient(f"bad bracket key {key!r}") from exc
        if a not in idx or b not in idx:
            raise BadCoefficient(f"unknown label in bracket key {key!r}")
        i, j = idx[a], idx[b]
        if i == j:
            raise BadCoefficient(f"bracket of {a!r} with itself must be zero")
        vec = vzero(len(basis))
        for lbl, cstr in terms.items():
            if lbl not in idx:
                raise BadCoefficient(f"unknown label {lbl!r} in bracket value")
            vec[idx[lbl]] = parse(str(cstr))
        if i > j:
            i, j = j, i
            vec = [fd.neg(x) for x in vec]
        table[(i, j)] = vec
    return LieAlgebra(fd, basis, table)


def pmap_images_from_spec(L: LieAlgebra, spec: dict) -> Optional[list]:
    """Extract the optional "pmap" key as a list of LieElements (basis order)."""
    pm = spec.get("pmap")
    if pm is None:
        return None
    images = []
    for lbl in L.basis:
        terms = pm.get(lbl, {})
        images.append(L.element({k: str(v) for k, v in terms.items()}))
    return images
