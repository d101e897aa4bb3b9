"""Representations and modules of restricted Lie algebras.

Homomorphism and character verification, induced modules via transversal-first
PBW straightening, irreducibility testing (exhaustive spinning with a
deterministic Norton-style kernel test beyond the exhaustive bound),
isomorphism testing through intertwiner systems, eigenvalue functions, the
subspaces V^lambda and L^lambda, envelope restriction, and a brute-force
composition-factor oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import (
    AlgebraMismatch,
    CharacterMismatch,
    DerivedNotNilpotent,
    NotHomomorphism,
    NotIdeal,
    NotPSubalgebra,
    NotScalar,
    ShapeMismatch,
    TooLarge,
)
from .gfp import Matrix, echelon_insert, mat_solve, rref_rows, vadd, vscale, vzero
from .liealg import (
    LieAlgebra,
    LieElement,
    Subspace,
    bracket,
    derived_subalgebra,
    is_ideal,
    is_subalgebra,
)
from .pstruct import PEnvelope, PMapping, pmap_extend, pmap_on_subalgebra
from .uenv import Character, EnvAlgebra, EnvElement, pbw_mul, uls_make

EXHAUSTIVE_SPIN_BOUND = 10 ** 6
INTERTWINER_ENUM_BOUND = 10 ** 5
INDUCE_DIM_BOUND = 2 ** 14
ORACLE_DIM_BOUND = 512


class Representation:
    """One action matrix per basis element; the bracket relations are
    verified at construction."""

    def __init__(self, algebra: LieAlgebra, mats: Sequence[Matrix],
                 character: Optional[Character] = None, check: bool = True,
                 meta: Optional[dict] = None):
        self.algebra = algebra
        self.mats = list(mats)
        if len(self.mats) != algebra.n:
            raise ShapeMismatch("one matrix per basis element required")
        self.dim = self.mats[0].rows if self.mats else 0
        fd = algebra.field
        for M in self.mats:
            if M.field != fd or M.rows != M.cols or M.rows != self.dim:
                raise ShapeMismatch("square matrices of equal size required")
        self.character = character
        self.meta = meta or {}
        if check:
            self._verify()

    def _verify(self):
        L = self.algebra
        for i in range(L.n):
            for j in range(i + 1, L.n):
                lhs = self.mats[i] * self.mats[j] - self.mats[j] * self.mats[i]
                br = L.bracket_basis(i, j)
                rhs = Matrix.zeros(L.field, self.dim, self.dim)
                for k, c in enumerate(br):
                    if c:
                        rhs = rhs + self.mats[k].scale(L.field.from_index(c))
                if lhs != rhs:
                    raise NotHomomorphism(L.basis[i], L.basis[j])

    def rho(self, x: LieElement) -> Matrix:
        fd = self.algebra.field
        out = Matrix.zeros(fd, self.dim, self.dim)
        for i, c in enumerate(x.coeffs_idx):
            if c:
                out = out + self.mats[i].scale(fd.from_index(c))
        return out

    def act(self, i: int, v: list) -> list:
        return self.mats[i].apply(v)

    def __repr__(self):
        return f"Representation(dim={self.dim}, algebra={self.algebra.basis})"


def rep_from_matrices(L: LieAlgebra, mats: Sequence[Matrix],
                      character: Optional[Character] = None) -> Representation:
    return Representation(L, mats, character=character, check=True)


def rep_from_json(L: LieAlgebra, data: dict) -> Representation:
    """Module JSON schema: {"dim": d, "action": {label: [[coeff-string,..],..]}};
    labels omitted from "action" act as zero."""
    from .errors import BadCoefficient

    d = int(data["dim"])
    fd = L.field
    action = data.get("action", {})
    for lbl in action:
        if lbl not in L.basis:
            raise BadCoefficient(f"unknown basis label {lbl!r} in module file")
    mats = []
    for lbl in L.basis:
        grid = action.get(lbl)
        if grid is None:
            mats.append(Matrix.zeros(fd, d, d))
        else:
            mats.append(Matrix(fd, [[fd.parse(str(x)).idx for x in row] for row in grid]))
    return rep_from_matrices(L, mats)


# ---------------------------------------------------------------------------
# characters of representations
# ---------------------------------------------------------------------------

def character_of(rep: Representation, P: PMapping, samples: int = 20,
                 seed: int = 0) -> Character:
    """Extract S with rho(x)^p - rho(x^[p]) = S(x)^p id, checking scalarity
    on the basis and p-semilinear consistency on random elements."""
    import random

    L = rep.algebra
    fd = L.field
    p = fd.p
    values = []
    for i in range(L.n):
        D = rep.mats[i].mat_pow(p) - rep.rho(P.images[i])
        s = D.data[0][0]
        scalar = Matrix.identity(fd, rep.dim).scale(fd.from_index(s))
        if D != scalar:
            raise NotScalar(L.basis[i])
        values.append(fd.frob_inv(s))
    S = Character(L, values)
    rng = random.Random(seed)
    for _ in range(samples):
        x = LieElement(L, [rng.randrange(fd.q) for _ in range(L.n)])
        D = rep.rho(x).mat_pow(p) - rep.rho(pmap_extend(P, x))
        expect = Matrix.identity(fd, rep.dim).scale(S.of(x) ** p)
        if D != expect:
            raise NotScalar(repr(x))
    return S


# ---------------------------------------------------------------------------
# spinning and invariant subspaces
# ---------------------------------------------------------------------------

def spin(rep: Representation, vectors: Sequence[list]) -> Subspace:
    """Smallest invariant subspace containing the given vectors."""
    fd = rep.algebra.field
    basis: list = []
    pivots: list = []
    work = []
    for v in vectors:
        if echelon_insert(fd, basis, pivots, list(v)):
            work.append(list(v))
    gens = [M for M in rep.mats if not M.is_zero()]
    while work:
        v = work.pop()
        for M in gens:
            w = M.apply(v)
            if any(w) and echelon_insert(fd, basis, pivots, w):
                work.append(w)
    # Subspace over the module's coordinate space; reuse the algebra's field
    return _module_subspace(rep, basis, pivots)


class _ModuleSpace:
    """Stand-in 'algebra' so Subspace machinery works on module coords."""

    def __init__(self, fd, n):
        self.field = fd
        self.n = n

    def __eq__(self, other):
        return isinstance(other, _ModuleSpace) and other.field == self.field and other.n == self.n

    def __hash__(self):
        return hash((self.field, self.n))


def _module_subspace(rep: Representation, rows, pivots=None) -> Subspace:
    space = _ModuleSpace(rep.algebra.field, rep.dim)
    return Subspace(space, rows, pivots)


def module_subspace(rep: Representation, vectors: Sequence[list]) -> Subspace:
    rows, pivots = rref_rows(rep.algebra.field, [list(v) for v in vectors])
    return _module_subspace(rep, rows, pivots)


def is_invariant(rep: Representation, W: Subspace) -> bool:
    for r in W.rows:
        for M in rep.mats:
            if not W.contains_vec(M.apply(list(r))):
                return False
    return True


def _lines(fd, d):
    """One representative per 1-dim subspace of F^d (first nonzero = 1)."""
    from itertools import product

    for lead in range(d):
        for tail in product(fd.elements(), repeat=d - lead - 1):
            v = [0] * d
            v[lead] = 1
            for k, c in enumerate(tail):
                v[lead + 1 + k] = c
            yield v


def _charpoly_roots(fd, M: Matrix) -> list:
    coeffs = M.charpoly()
    roots = []
    for lam in fd.elements():
        acc = 0
        for c in reversed(coeffs):
            acc = fd.add(fd.mul(acc, lam), c)
        if acc == 0:
            roots.append(lam)
    return roots


def _transpose_rep_mats(rep: Representation) -> list:
    # dual action uses -rho(x)^T; for invariant-subspace detection the sign
    # is irrelevant, transposes generate the same lattice
    return [M.transpose() for M in rep.mats]


def _spin_mats(fd, mats, v) -> Tuple[list, list]:
    basis: list = []
    pivots: list = []
    work = []
    if echelon_insert(fd, basis, pivots, list(v)):
        work.append(list(v))
    gens = [M for M in mats if not M.is_zero()]
    while work:
        u = work.pop()
        for M in gens:
            w = M.apply(u)
            if any(w) and echelon_insert(fd, basis, pivots, w):
                work.append(w)
    return basis, pivots


def find_proper_submodule(rep: Representation) -> Optional[Subspace]:
    """A proper nonzero invariant subspace, or None when irreducible.

    Exhaustive line spinning when field-size^dim <= 10^6; beyond that a
    deterministic Norton-style test: for singular elements theta of the
    acting algebra, spin every kernel line of theta and of theta-transpose —
    all full on both sides certifies irreducibility.
    """
    fd = rep.algebra.field
    d = rep.dim
    if d <= 1:
        return None
    gens = [M for M in rep.mats if not M.is_zero()]
    if not gens:
        return _module_subspace(rep, [[1 if i == 0 else 0 for i in range(d)]])
    if fd.q ** d <= EXHAUSTIVE_SPIN_BOUND:
        for v in _lines(fd, d):
            basis, pivots = _spin_mats(fd, gens, v)
            if len(basis) < d:
                return _module_subspace(rep, basis, pivots)
        return None
    return _norton_submodule(rep, gens)


def _candidate_elements(fd, gens) -> list:
    out = list(gens)
    for i in range(len(gens)):
        for j in range(len(gens)):
            if i != j:
                out.append(gens[i] * gens[j])
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            out.append(gens[i] + gens[j])
            out.append(gens[i] * gens[j] + gens[j] * gens[i])
    # a few longer deterministic words
    if len(gens) >= 2:
        w = gens[0]
        for g in gens[1:]:
            w = w * g + g
            out.append(w)
    return [M for M in out if not M.is_zero()]


def _norton_submodule(rep: Representation, gens) -> Optional[Subspace]:
    fd = rep.algebra.field
    d = rep.dim
    tmats = _transpose_rep_mats(rep)
    kernel_line_cap = 10 ** 4
    for A in _candidate_elements(fd, gens):
        for lam in _charpoly_roots(fd, A):
            theta = A - Matrix.identity(fd, d).scale(fd.from_index(lam))
            if theta.is_zero():
                continue
            K = theta.nullspace()
            if not K:
                continue
            nk = len(K)
            if (fd.q ** nk - 1) // (fd.q - 1) > kernel_line_cap:
                continue
            # primal side: spin every kernel line
            full = True
            for coeffs in _lines(fd, nk):
                v = vzero(d)
                for c, row in zip(coeffs, K):
                    if c:
                        v = vadd(fd, v, vscale(fd, c, list(row)))
                basis, pivots = _spin_mats(fd, gens, v)
                if len(basis) < d:
                    return _module_subspace(rep, basis, pivots)
            # dual side: spin kernel lines of theta transpose
            Kt = theta.transpose().nullspace()
            nt = len(Kt)
            if nt and (fd.q ** nt - 1) // (fd.q - 1) <= kernel_line_cap:
                dual_full = True
                for coeffs in _lines(fd, nt):
                    w = vzero(d)
                    for c, row in zip(coeffs, Kt):
                        if c:
                            w = vadd(fd, w, vscale(fd, c, list(row)))
                    dbasis, _ = _spin_mats(fd, tmats, w)
                    if len(dbasis) < d:
                        # annihilator of a proper dual submodule is a proper
                        # nonzero invariant subspace of the original module
                        ann = Matrix(fd, [list(r) for r in dbasis]).nullspace()
                        rows, piv = rref_rows(fd, ann)
                        return _module_subspace(rep, rows, piv)
                if dual_full and full:
                    return None  # Norton's criterion: irreducible
    raise TooLarge(
        "cannot decide irreducibility: no suitable singular element found "
        "within the deterministic candidate set"
    )


def is_irreducible(rep: Representation) -> Tuple[bool, Optional[Subspace]]:
    if rep.dim == 0:
        return False, None
    W = find_proper_submodule(rep)
    if W is None:
        return True, None
    return False, W


# ---------------------------------------------------------------------------
# sub / quotient representations
# ---------------------------------------------------------------------------

def sub_representation(rep: Representation, W: Subspace) -> Representation:
    fd = rep.algebra.field
    k = W.dim
    mats = []
    for M in rep.mats:
        cols = []
        for r in W.rows:
            img = M.apply(list(r))
            coords = W.coords_of(img)
            if coords is None:
                raise ShapeMismatch("subspace is not invariant")
            cols.append(coords)
        mats.append(Matrix(fd, [[cols[j][i] for j in range(k)] for i in range(k)]))
    return Representation(rep.algebra, mats, check=False)


def quotient_representation(rep: Representation, W: Subspace) -> Representation:
    fd = rep.algebra.field
    comp = W.complement_coords()

    def project(v):
        v = list(v)
        for row, c in zip(W.rows, W.pivots):
            if v[c]:
                f = v[c]
                v = [fd.sub(v[k], fd.mul(f, row[k])) for k in range(len(v))]
        return [v[c] for c in comp]

    mats = []
    for M in rep.mats:
        cols = []
        for c in comp:
            u = vzero(rep.dim)
            u[c] = 1
            cols.append(project(M.apply(u)))
        k = len(comp)
        mats.append(Matrix(fd, [[cols[j][i] for j in range(k)] for i in range(k)]))
    return Representation(rep.algebra, mats, check=False)


def composition_factors(rep: Representation) -> List[Representation]:
    """All composition factors (with multiplicity), by repeated splitting."""
    if rep.dim == 0:
        return []
    W = find_proper_submodule(rep)
    if W is None:
        return [rep]
    return composition_factors(sub_representation(rep, W)) + composition_factors(
        quotient_representation(rep, W)
    )


# ---------------------------------------------------------------------------
# isomorphism testing
# ---------------------------------------------------------------------------

def module_iso(rep1: Representation, rep2: Representation,
               irreducible: Optional[bool] = None) -> bool:
    """Intertwiner test: exists invertible T with T rho1(x) = rho2(x) T.

    When both representations are irreducible (told or tested), Schur's
    lemma makes any nonzero intertwiner invertible.
    """
    if rep1.algebra != rep2.algebra:
        raise AlgebraMismatch("representations of different algebras")
    if rep1.dim != rep2.dim:
        return False
    fd = rep1.algebra.field
    d = rep1.dim
    if d == 0:
        return True
    rows = []
    for M1, M2 in zip(rep1.mats, rep2.mats):
        if M1.is_zero() and M2.is_zero():
            continue
        for r in range(d):
            for c in range(d):
                row = [0] * (d * d)
                # (T M1 - M2 T)[r][c] = sum_k T[r][k] M1[k][c] - M2[r][k] T[k][c]
                for k in range(d):
                    row[r * d + k] = fd.add(row[r * d + k], M1.data[k][c])
                for k in range(d):
                    row[k * d + c] = fd.sub(row[k * d + c], M2.data[r][k])
                rows.append(row)
    if not rows:
        return True  # both zero actions of equal dimension
    null = Matrix(fd, rows).nullspace()
    if not null:
        return False
    if irreducible is None:
        irreducible = is_irreducible(rep1)[0] and is_irreducible(rep2)[0]
    if irreducible:
        return True
    count = fd.q ** len(null)
    if count > INTERTWINER_ENUM_BOUND:
        raise TooLarge("intertwiner space too large to search for an invertible element")
    from itertools import product

    for coeffs in product(fd.elements(), repeat=len(null)):
        if not any(coeffs):
            continue
        T = vzero(d * d)
        for c, row in zip(coeffs, null):
            if c:
                T = vadd(fd, T, vscale(fd, c, list(row)))
        M = Matrix(fd, [T[i * d:(i + 1) * d] for i in range(d)])
        if M.rank() == d:
            return True
    return False


# ---------------------------------------------------------------------------
# induced modules
# ---------------------------------------------------------------------------

@dataclass
class InducedSpec:
    """Induction data: p-subalgebra H (as a subspace of L), an H-module M
    over the restricted structure of H, and an optional ordered transversal
    completing H's basis to a basis of L."""

    H: Subspace
    M: Representation
    transversal: Optional[List[LieElement]] = None


def algebra_in_basis(L: LieAlgebra, rows: List[list], labels: List[str]):
    """Re-coordinatize L in the basis given by `rows` (index vectors).

    Returns (L2, to_new, to_old): the same algebra in new coordinates and the
    two coordinate maps.
    """
    fd = L.field
    n = L.n
    if len(rows) != n:
        raise ShapeMismatch("need a full basis")
    B = Matrix(fd, [[rows[j][i] for j in range(n)] for i in range(n)])  # cols = rows

    def to_old(v):
        return B.apply(list(v))

    def to_new(v):
        sol = mat_solve(B, list(v))
        if sol is None:
            raise ShapeMismatch("vectors do not form a basis")
        return sol.particular

    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            br = L.bracket_vec(list(rows[i]), list(rows[j]))
            table[(i, j)] = to_new(br)
    L2 = LieAlgebra(fd, labels, table, check=False)
    return L2, to_new, to_old


def induce(L: LieAlgebra, P: PMapping, S: Character, spec: InducedSpec) -> Representation:
    """Ind_H^L(M, S) = u(L,S) tensor_{u(H,S|H)} M, on the PBW transversal
    basis {e^a (x) m_j}; dim = p^{dim L - dim H} * dim M."""
    fd = L.field
    p = fd.p
    H = spec.H
    k = H.dim
    m = L.n - k
    # restricted structure on H, and the character match
    H_alg, embed_H, P_H = pmap_on_subalgebra(P, H)
    if spec.M.algebra != H_alg:
        raise AlgebraMismatch(
            "the H-module must be built over the restricted structure of H "
            "(pmap_on_subalgebra basis order)"
        )
    S_H = S.restrict(H_alg, embed_H)
    try:
        S_M = character_of(spec.M, P_H)
    except NotScalar as exc:
        raise CharacterMismatch(f"H-module has no well-defined character: {exc}") from exc
    if S_M != S_H:
        raise CharacterMismatch("character of M differs from S restricted to H")
    dimM = spec.M.dim
    total = (p ** m) * dimM
    if total > INDUCE_DIM_BOUND:
        raise TooLarge(f"induced dimension {total} exceeds bound {INDUCE_DIM_BOUND}")
    # transversal
    if spec.transversal is None:
        trans_rows = []
        for c in H.complement_coords():
            v = vzero(L.n)
            v[c] = 1
            trans_rows.append(v)
    else:
        trans_rows = [L.element(t).coeffs_idx for t in spec.transversal]
    if len(trans_rows) != m:
        raise ShapeMismatch(f"transversal must have {m} elements")
    new_rows = trans_rows + [list(r) for r in H.rows]
    labels = [f"q{i+1}" for i in range(m)] + [f"g{i+1}" for i in range(k)]
    L2, to_new, to_old = algebra_in_basis(L, new_rows, labels)
    # p-structure and character in the new coordinates
    P2 = PMapping(L2, [
        LieElement(L2, to_new(pmap_extend(P, LieElement(L, r)).coeffs_idx))
        for r in new_rows
    ])
    S2 = Character(L2, [S.of(LieElement(L, r)).idx for r in new_rows])
    U = uls_make(L2, P2, S2)

    # module basis: (a, j) with a an exponent vector on the transversal part
    def tindex(a: tuple, j: int) -> int:
        idx = 0
        for t in reversed(a):
            idx = idx * p + t
        return idx * dimM + j

    tmonos = []
    for idx in range(p ** m):
        a = []
        t = idx
        for _ in range(m):
            a.append(t % p)
            t //= p
        tmonos.append(tuple(a))

    def act_H_monomial(hexps: tuple, vec: list) -> list:
        # h_1^{c_1}..h_k^{c_k} acting on an M-vector, rightmost factor first
        out = list(vec)
        for i in range(k - 1, -1, -1):
            for _ in range(hexps[i]):
                out = spec.M.mats[i].apply(out)
        return out

    mats = []
    for g in range(L.n):
        cols = [vzero(total) for _ in range(total)]
        gnew = LieElement(L2, to_new(L.basis_element(g).coeffs_idx))
        ig = U.embed(gnew)
        for a in tmonos:
            full_expo = tuple(a) + (0,) * k
            prod = pbw_mul(U, ig, EnvElement(U, {full_expo: 1}))
            for j in range(dimM):
                col = vzero(total)
                for mono, c in prod.terms.items():
                    t_part, h_part = mono[:m], mono[m:]
                    mv = vzero(dimM)
                    mv[j] = 1
                    mv = act_H_monomial(h_part, mv)
                    base = tindex(t_part, 0)
                    for jj, cc in enumerate(mv):
                        if cc:
                            col[base + jj] = fd.add(col[base + jj], fd.mul(c, cc))
                cols[tindex(a, j)] = col
        mats.append(Matrix(fd, [[cols[cidx][r] for cidx in range(total)] for r in range(total)]))
    meta = {
        "induced": True,
        "H": H,
        "H_alg": H_alg,
        "M": spec.M,
        "transversal_rows": trans_rows,
        "tindex": tindex,
        "m": m,
        "dimM": dimM,
    }
    return Representation(L, mats, character=S, check=True, meta=meta)


def one_tensor_M(rep: Representation) -> Subspace:
    """The subspace 1 (x) M of an induced module."""
    meta = rep.meta
    if not meta.get("induced"):
        raise ShapeMismatch("not an induced module")
    m, dimM, tindex = meta["m"], meta["dimM"], meta["tindex"]
    rows = []
    for j in range(dimM):
        v = vzero(rep.dim)
        v[tindex((0,) * m, j)] = 1
        rows.append(v)
    return _module_subspace(rep, rows)


# ---------------------------------------------------------------------------
# eigenvalue functions, V^lambda, L^lambda
# ---------------------------------------------------------------------------

@dataclass
class EigenvalueFunction:
    """Linear form lambda on an ideal I with nonzero simultaneous
    eigenspace; values are w.r.t. I's RREF basis."""

    ideal: Subspace
    values: list  # index-encoded, one per RREF basis row of I

    def of_vec(self, v: list):
        """lambda applied to a vector of L lying in I (index result)."""
        fd = self.ideal.algebra.field
        coords = self.ideal.coords_of(list(v))
        if coords is None:
            raise ShapeMismatch("vector outside the ideal")
        acc = 0
        for c, lam in zip(coords, self.values):
            if c and lam:
                acc = fd.add(acc, fd.mul(c, lam))
        return acc

    def is_zero(self) -> bool:
        return not any(self.values)

    def __eq__(self, other):
        return (
            isinstance(other, EigenvalueFunction)
            and other.ideal == self.ideal
            and other.values == self.values
        )


def eigenvalue_functions(rep: Representation, I: Subspace) -> List[EigenvalueFunction]:
    """All lambda with V^lambda != 0, by iterated eigenspace refinement
    over I's basis, eigenvalues scanned exhaustively over the field."""
    L = rep.algebra
    fd = L.field
    if not is_ideal(L, I):
        raise NotIdeal("eigenvalue functions need an ideal")
    # I^(1) must act nilpotently
    I1 = derived_subalgebra(L, I)
    for r in I1.rows:
        M = rep.rho(LieElement(L, list(r)))
        if not M.mat_pow(rep.dim).is_zero():
            raise DerivedNotNilpotent("derived subalgebra of I acts non-nilpotently")
    d = rep.dim
    if I.dim == 0:
        return [EigenvalueFunction(I, [])] if d > 0 else []
    full = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    states = [(full, [])]  # (subspace rows, lambda values so far)
    for r in I.rows:
        M = rep.rho(LieElement(L, list(r)))
        nxt = []
        for rows, vals in states:
            for lam in fd.elements():
                shifted = M - Matrix.identity(fd, d).scale(fd.from_index(lam))
                ker = shifted.nullspace()
                if not ker:
                    continue
                # intersect current subspace with the eigenspace
                inter = _intersect_rows(fd, rows, ker, d)
                if inter:
                    nxt.append((inter, vals + [lam]))
        states = nxt
        if not states:
            return []
    out = []
    for rows, vals in states:
        lamf = EigenvalueFunction(I, vals)
        # lambda must vanish on I^(1)
        if all(lamf.of_vec(list(r)) == 0 for r in I1.rows):
            out.append(lamf)
    return out


def _intersect_rows(fd, rows_a, rows_b, n):
    stacked = [list(r) + list(r) for r in rows_a]
    stacked += [list(r) + [0] * n for r in rows_b]
    rows, _ = rref_rows(fd, stacked)
    out = [r[n:] for r in rows if not any(r[:n])]
    out, _ = rref_rows(fd, out)
    return out


def v_lambda(rep: Representation, lam: EigenvalueFunction) -> Subspace:
    """Simultaneous eigenspace {v : y.v = lambda(y) v for all y in I}."""
    L = rep.algebra
    fd = L.field
    d = rep.dim
    rows = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for r, val in zip(lam.ideal.rows, lam.values):
        M = rep.rho(LieElement(L, list(r)))
        shifted = M - Matrix.identity(fd, d).scale(fd.from_index(val))
        rows = _intersect_rows(fd, rows, shifted.nullspace(), d)
        if not rows:
            break
    return _module_subspace(rep, rows)


def l_lambda(L: LieAlgebra, lam: EigenvalueFunction,
             P: Optional[PMapping] = None) -> Subspace:
    """L^lambda = {x in L : lambda([x,y]) = 0 for all y in I}; verified to
    be a subalgebra (and p-closed when P is given)."""
    fd = L.field
    I = lam.ideal
    rows = []
    for yr in I.rows:
        row = []
        for i in range(L.n):
            br = L.bracket_vec(L.basis_element(i).coeffs_idx, list(yr))
            row.append(lam.of_vec(br))
        rows.append(row)
    V = Subspace(L, Matrix(fd, rows).nullspace()) if rows else Subspace.full(L)
    if not is_subalgebra(L, V):
        raise NotPSubalgebra("L^lambda is not closed under the bracket")
    if P is not None:
        for r in V.rows:
            img = pmap_extend(P, LieElement(L, list(r)))
            if not V.contains_vec(img.coeffs_idx):
                raise NotPSubalgebra("L^lambda is not closed under the p-mapping")
    return V


# ---------------------------------------------------------------------------
# envelope correspondence
# ---------------------------------------------------------------------------

def envelope_correspondence(env: PEnvelope, rep_env: Representation,
                            check_irreducible: bool = True) -> Representation:
    """Restrict a representation of the envelope G back to L along the
    embedding; L-submodules coincide with G-submodules, so irreducibility
    is preserved (verified when within spinning bounds)."""
    if rep_env.algebra != env.ambient:
        raise AlgebraMismatch("representation is not over the envelope")
    L = env.algebra
    mats = []
    for i in range(L.n):
        x = env.embed_element(L.basis_element(i))
        mats.append(rep_env.rho(x))
    rep = Representation(L, mats, check=True, meta={"from_envelope": True})
    if check_irreducible:
        try:
            ok_env = is_irreducible(rep_env)[0]
            ok_L = is_irreducible(rep)[0]
            if ok_env and not ok_L:
                raise ShapeMismatch("restriction lost irreducibility")  # pragma: no cover
        except TooLarge:
            pass
    return rep


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def regular_representation(U: EnvAlgebra) -> Representation:
    """Left multiplication by iota(e_i) on the PBW basis of u(L,S)."""
    L = U.L
    fd = U.field
    D = U.dim
    mats = []
    for i in range(L.n):
        data = [[0] * D for _ in range(D)]
        for idx in range(D):
            mono = U.index_to_mono(idx)
            for m2, c in U._mul_gen_mono(i, mono).items():
                data[U.mono_to_index(m2)][idx] = c
        mats.append(Matrix(fd, data))
    return Representation(L, mats, check=False)


def oracle_irreducibles(L: LieAlgebra, P: PMapping, S: Character) -> List[Representation]:
    """Every irreducible S-representation, as composition factors of the
    regular u(L,S)-module, deduplicated up to isomorphism."""
    fd = L.field
    if fd.m != 1 or fd.p not in (2, 3):
        raise TooLarge("oracle restricted to GF(2) and GF(3)")
    if fd.p ** L.n > ORACLE_DIM_BOUND:
        raise TooLarge(f"regular module dimension {fd.p ** L.n} exceeds oracle bound")
    U = uls_make(L, P, S)
    reg = regular_representation(U)
    factors = composition_factors(reg)
    out: List[Representation] = []
    for f in factors:
        if not any(module_iso(f, g, irreducible=True) for g in out):
            out.append(f)
    return out
