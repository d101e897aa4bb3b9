"""p-mappings and restricted structure.

Covers the Jacobson correction terms s_i(a, b), verification and semilinear
extension of p-mappings, restrictability, p-closures, minimal p-envelopes of
centerless algebras, element classification (toral / semisimple /
p-nilpotent) and Jordan-Chevalley decomposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .errors import AlgebraMismatch, NonTrivialCenter, TooLarge
from .gfp import Matrix, echelon_insert, mat_solve, vadd, vscale, vzero
from .liealg import (
    LieAlgebra,
    LieElement,
    Subspace,
    ad_matrix,
    bracket,
    center,
    subalgebra_as_algebra,
)


# ---------------------------------------------------------------------------
# Jacobson terms
# ---------------------------------------------------------------------------

def jacobson_si(a: LieElement, b: LieElement) -> List[LieElement]:
    """s_1..s_{p-1} from (ad(a (x) X + b (x) 1))^{p-1} (a (x) 1).

    Elements of L (x) F[X] are lists of coefficient vectors, position k
    holding the X^k coefficient; each ad application raises the X-degree by
    at most one, so length p suffices.
    """
    if a.algebra != b.algebra:
        raise AlgebraMismatch("Jacobson terms need elements of one algebra")
    L = a.algebra
    fd = L.field
    p = fd.p
    # w starts as a (x) 1
    w = [list(a.coeffs_idx)] + [vzero(L.n) for _ in range(p - 1)]
    av, bv = a.coeffs_idx, b.coeffs_idx
    for _ in range(p - 1):
        nxt = [vzero(L.n) for _ in range(p)]
        for k in range(p):
            wk = w[k]
            if not any(wk):
                continue
            if k + 1 < p:
                nxt[k + 1] = vadd(fd, nxt[k + 1], L.bracket_vec(av, wk))
            nxt[k] = vadd(fd, nxt[k], L.bracket_vec(bv, wk))
        w = nxt
    out = []
    for i in range(1, p):
        inv_i = fd.inv(fd.embed_int(i))
        out.append(LieElement(L, vscale(fd, inv_i, w[i - 1])))
    return out


# ---------------------------------------------------------------------------
# p-mappings
# ---------------------------------------------------------------------------

class PMapping:
    """p-mapping given by its basis images e_i^[p].

    Jacobson terms for all basis pairs are cached eagerly at construction,
    after which the value is immutable.
    """

    def __init__(self, algebra: LieAlgebra, images: List[LieElement]):
        self.algebra = algebra
        self.images = [algebra.element(x) for x in images]
        if len(self.images) != algebra.n:
            raise AlgebraMismatch("one p-image per basis element required")
        self._si_cache = {}
        for i in range(algebra.n):
            for j in range(algebra.n):
                if i != j:
                    self._si_cache[(i, j)] = jacobson_si(
                        algebra.basis_element(i), algebra.basis_element(j)
                    )

    def image_of_basis(self, i: int) -> LieElement:
        return self.images[i]


def pmap_extend(P: PMapping, x: LieElement) -> LieElement:
    """x^[p] for arbitrary x, via the semilinear + Jacobson extension rule.

    Terms alpha_i e_i are folded left to right with
    (a+b)^[p] = a^[p] + b^[p] + sum s_i(a,b) and (alpha a)^[p] = alpha^p a^[p].
    """
    L = P.algebra
    fd = L.field
    terms = [
        (i, c) for i, c in enumerate(x.coeffs_idx) if c
    ]
    if not terms:
        return L.zero()
    acc = None       # running partial sum of x
    acc_p = None     # its p-image
    for i, c in terms:
        t = L.basis_element(i).scale(fd.from_index(c))
        # (alpha e_i)^[p] = alpha^p e_i^[p]
        t_p = P.images[i].scale(fd.from_index(fd.pow(c, fd.p)))
        if acc is None:
            acc, acc_p = t, t_p
        else:
            s = jacobson_si(acc, t)
            acc_p = acc_p + t_p
            for si in s:
                acc_p = acc_p + si
            acc = acc + t
    return acc_p


@dataclass
class PMapReport:
    """Outcome of verify_pmap; violations are reported in-band."""

    ok: bool
    axiom1_failures: list = field(default_factory=list)  # basis labels
    axiom3_failures: list = field(default_factory=list)  # (label_a, label_b)

    def first_violation(self) -> Optional[tuple]:
        if self.axiom1_failures:
            return ("Axiom1Violation", self.axiom1_failures[0])
        if self.axiom3_failures:
            return ("Axiom3Violation",) + tuple(self.axiom3_failures[0])
        return None


def verify_pmap(P: PMapping, samples: int = 50, seed: int = 0) -> PMapReport:
    """Check axiom (1) on all basis elements and axiom (3) on all basis
    pairs plus `samples` random pairs (axiom (2) holds structurally)."""
    L = P.algebra
    fd = L.field
    rep = PMapReport(ok=True)
    for i in range(L.n):
        lhs = ad_matrix(P.images[i])
        rhs = ad_matrix(L.basis_element(i)).mat_pow(fd.p)
        if lhs != rhs:
            rep.axiom1_failures.append(L.basis[i])
    rng = random.Random(seed)
    pairs = [
        (L.basis_element(i), L.basis_element(j))
        for i in range(L.n)
        for j in range(L.n)
        if i != j
    ]
    for _ in range(samples):
        a = LieElement(L, [rng.randrange(fd.q) for _ in range(L.n)])
        b = LieElement(L, [rng.randrange(fd.q) for _ in range(L.n)])
        pairs.append((a, b))
    for a, b in pairs:
        lhs = pmap_extend(P, a + b)
        rhs = pmap_extend(P, a) + pmap_extend(P, b)
        for si in jacobson_si(a, b):
            rhs = rhs + si
        if lhs != rhs:
            rep.axiom3_failures.append((repr(a), repr(b)))
    rep.ok = not rep.axiom1_failures and not rep.axiom3_failures
    return rep


def is_restrictable(L: LieAlgebra) -> Tuple[bool, Optional[List[LieElement]]]:
    """(ad e_i)^p in ad(L) for every basis element, with witness images.

    Basis sufficiency follows from the Jacobson expansion of (ad(x+y))^p.
    """
    fd = L.field
    n = L.n
    ad_basis = [ad_matrix(L.basis_element(j)) for j in range(n)]
    # columns of the solve matrix = flattened ad e_j
    A = Matrix(fd, [
        [ad_basis[j].data[r][c] for j in range(n)]
        for r in range(n)
        for c in range(n)
    ])
    images = []
    for i in range(n):
        target = ad_basis[i].mat_pow(fd.p)
        b = [target.data[r][c] for r in range(n) for c in range(n)]
        sol = mat_solve(A, b)
        if sol is None:
            return False, None
        images.append(LieElement(L, sol.particular))
    return True, images


def p_closure(P: PMapping, S: Subspace) -> Subspace:
    """Smallest p-subalgebra containing S: alternate bracket- and
    p-image-closure of the spanning set until the span stabilizes."""
    L = P.algebra
    fd = L.field
    basis = [list(r) for r in S.rows]
    pivots = list(S.pivots)
    changed = True
    while changed:
        changed = False
        snapshot = [list(r) for r in basis]
        for a in snapshot:
            for b in snapshot:
                if echelon_insert(fd, basis, pivots, L.bracket_vec(a, b)):
                    changed = True
            img = pmap_extend(P, LieElement(L, a))
            if echelon_insert(fd, basis, pivots, img.coeffs_idx):
                changed = True
    return Subspace(L, basis, pivots)


def pmap_on_subalgebra(P: PMapping, V: Subspace, labels=None):
    """Restrict a p-mapping to a p-subalgebra V.

    Returns (H, embed, P_H): the subalgebra as an algebra, the coordinate
    embedding, and the restricted p-mapping.
    """
    from .errors import NotPSubalgebra

    L = P.algebra
    H, embed = subalgebra_as_algebra(L, V, labels)
    images = []
    for r in V.rows:
        img = pmap_extend(P, LieElement(L, list(r)))
        coords = V.coords_of(img.coeffs_idx)
        if coords is None:
            raise NotPSubalgebra("subspace not closed under the p-mapping")
        images.append(LieElement(H, coords))
    return H, embed, PMapping(H, images)


# ---------------------------------------------------------------------------
# minimal p-envelope (centerless case)
# ---------------------------------------------------------------------------

@dataclass
class PEnvelope:
    """Restricted envelope G of L with the embedding i: L -> G."""

    algebra: LieAlgebra          # the original L
    ambient: LieAlgebra          # G
    pmap: PMapping               # p-mapping on G
    embedding: Matrix            # n x N: row i = image of e_i in G's basis
    adjoined_labels: tuple

    def embed_element(self, x: LieElement) -> LieElement:
        fd = self.ambient.field
        out = vzero(self.ambient.n)
        for c, row in zip(x.coeffs_idx, self.embedding.data):
            if c:
                out = vadd(fd, out, vscale(fd, c, list(row)))
        return LieElement(self.ambient, out)

    def image_subspace(self) -> Subspace:
        return Subspace(self.ambient, [list(r) for r in self.embedding.data])


def _mat_commutator(A: Matrix, B: Matrix) -> Matrix:
    return A * B - B * A


def minimal_p_envelope(L: LieAlgebra) -> PEnvelope:
    """Ad-closure construction: embed L as ad(L) in gl(L), close under
    matrix p-th powers, take the matrix p-power p-map.

    Only implemented for centerless L (ad faithful); minimality then follows
    from C(G) being contained in the embedded image.
    """
    if center(L).dim != 0:
        raise NonTrivialCenter(
            "minimal p-envelope is implemented only for centerless algebras; "
            "supply an explicit pmap or a fixture envelope"
        )
    fd = L.field
    n = L.n
    p = fd.p
    mats = [ad_matrix(L.basis_element(i)) for i in range(n)]
    flat = lambda M: [M.data[r][c] for r in range(n) for c in range(n)]
    basis_rows: list = []
    pivots: list = []
    gens: list = []  # matrices, in discovery order, that are independent
    for M in mats:
        if echelon_insert(fd, basis_rows, pivots, flat(M)):
            gens.append(M)
    if len(gens) != n:
        raise NonTrivialCenter("adjoint representation is not faithful")
    changed = True
    while changed:
        changed = False
        snapshot = list(gens)
        for A in snapshot:
            for B in snapshot:
                C = _mat_commutator(A, B)
                if echelon_insert(fd, basis_rows, pivots, flat(C)):
                    gens.append(C)
                    changed = True
            Pw = A.mat_pow(p)
            if echelon_insert(fd, basis_rows, pivots, flat(Pw)):
                gens.append(Pw)
                changed = True
    N = len(gens)
    if N > 16:
        raise TooLarge("p-closure exceeds the dimension cap")
    # coordinates in the generator basis: columns = flattened gens
    A_coord = Matrix(fd, [
        [flat(g)[k] for g in gens] for k in range(n * n)
    ])

    def coords(M: Matrix) -> list:
        sol = mat_solve(A_coord, flat(M))
        if sol is None:  # pragma: no cover - closure guarantees membership
            raise TooLarge("matrix outside the computed closure")
        return sol.particular

    labels = list(L.basis) + [f"t{k+1}" for k in range(N - n)]
    table = {}
    for i in range(N):
        for j in range(i + 1, N):
            table[(i, j)] = coords(_mat_commutator(gens[i], gens[j]))
    G = LieAlgebra(fd, labels, table, check=False)
    images = [LieElement(G, coords(g.mat_pow(p))) for g in gens]
    pmap = PMapping(G, images)
    embed_rows = [[1 if j == i else 0 for j in range(N)] for i in range(n)]
    return PEnvelope(L, G, pmap, Matrix(fd, embed_rows), tuple(labels[n:]))


# ---------------------------------------------------------------------------
# element classes and Jordan-Chevalley
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ElementClass:
    kind: str                      # "toral" | "semisimple" | "p-nilpotent" | "mixed"
    order: Optional[int] = None    # for p-nilpotent: least k with x^[p]^k = 0

    def __str__(self):
        if self.kind == "p-nilpotent":
            return f"p-nilpotent(order {self.order})"
        return self.kind


def _p_power_iterates(P: PMapping, x: LieElement, count: int) -> List[LieElement]:
    out = [x]
    cur = x
    for _ in range(count):
        cur = pmap_extend(P, cur)
        out.append(cur)
    return out


def element_class(P: PMapping, x: LieElement) -> ElementClass:
    L = P.algebra
    fd = L.field
    bound = L.n * fd.m + 1
    iters = _p_power_iterates(P, x, bound)
    if iters[1] == x:
        return ElementClass("toral")
    for k, y in enumerate(iters):
        if y.is_zero():
            return ElementClass("p-nilpotent", order=k)
    # semisimple iff x lies in the span of its p-power iterates x^[p]^i, i >= 1
    span = Subspace.from_vectors(L, iters[1:])
    if span.contains(x):
        return ElementClass("semisimple")
    return ElementClass("mixed")


@dataclass
class JCDecomposition:
    x_s: LieElement
    x_n: LieElement


def jordan_chevalley(P: PMapping, x: LieElement) -> JCDecomposition:
    """Unique decomposition x = x_s + x_n with x_s semisimple, x_n
    p-nilpotent and [x_s, x_n] = 0 (finite fields are perfect).

    Finds the least k with x^[p]^k semisimple, then solves the k-fold
    semilinear system y^[p]^k = x^[p]^k on the abelian span of p-power
    iterates.
    """
    L = P.algebra
    fd = L.field
    bound = L.n * fd.m + 1
    iters = _p_power_iterates(P, x, bound)
    k = None
    for kk, y in enumerate(iters):
        cls = element_class(P, y)
        if cls.kind in ("toral", "semisimple") or y.is_zero():
            k = kk
            break
    if k is None:  # pragma: no cover - dependence forces a semisimple iterate
        raise TooLarge("no semisimple p-power iterate found")
    if k == 0:
        return JCDecomposition(x, L.zero())
    target = iters[k]
    # V = span of the iterates from x^[p]^k on; abelian and p-closed
    V = Subspace.from_vectors(L, iters[k:])
    d = V.dim
    if d == 0:
        return JCDecomposition(L.zero(), x)
    # matrix of [p] on V in its RREF basis ([p] is p-semilinear on V)
    B_cols = []
    for r in V.rows:
        img = pmap_extend(P, LieElement(L, list(r)))
        B_cols.append(V.coords_of(img.coeffs_idx))
    B = Matrix(fd, [[B_cols[j][i] for j in range(d)] for i in range(d)])
    # y^[p]^k = C . phi^k(y) with C = B . phi(B) . phi^2(B) ...
    C = B
    cur = B
    for j in range(1, k):
        cur = Matrix(fd, [[fd.frob(v) for v in row] for row in cur.data])
        C = C * cur
    c = V.coords_of(target.coeffs_idx)
    lin = mat_solve(C, c)
    if lin is None:  # pragma: no cover - existence is a theorem
        raise TooLarge("semilinear system unexpectedly inconsistent")

    def unfrob_k(v):
        out = list(v)
        for _ in range(k):
            out = [fd.frob_inv(t) for t in out]
        return out

    for beta in lin.enumerate():
        alpha = unfrob_k(beta)
        yvec = vzero(L.n)
        for cc, row in zip(alpha, V.rows):
            if cc:
                yvec = vadd(fd, yvec, vscale(fd, cc, list(row)))
        x_s = LieElement(L, yvec)
        x_n = x - x_s
        if not bracket(x_s, x_n).is_zero():
            continue
        # the zero element is simultaneously toral and p-nilpotent; accept it
        # on either side
        if not x_n.is_zero() and element_class(P, x_n).kind != "p-nilpotent":
            continue
        if not x_s.is_zero() and element_class(P, x_s).kind not in ("toral", "semisimple"):
            continue
        return JCDecomposition(x_s, x_n)
    raise TooLarge("no valid Jordan-Chevalley candidate found")  # pragma: no cover
