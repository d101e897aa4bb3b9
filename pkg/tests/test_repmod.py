"""Representations: verification, characters, spinning, irreducibility,
isomorphism, induction, eigenvalue functions and the brute-force oracle."""

import pytest

from modlie.errors import CharacterMismatch, NotHomomorphism, NotScalar, TooLarge
from modlie.gfp import FieldElement, Matrix, ff_make
from modlie.liealg import LieAlgebra, LieElement, Subspace
from modlie.pstruct import PMapping, pmap_on_subalgebra
from modlie.uenv import Character, uls_make
from modlie.repmod import (
    EigenvalueFunction,
    InducedSpec,
    character_of,
    composition_factors,
    eigenvalue_functions,
    envelope_correspondence,
    find_proper_submodule,
    induce,
    is_invariant,
    is_irreducible,
    l_lambda,
    module_iso,
    module_subspace,
    one_tensor_M,
    oracle_irreducibles,
    quotient_representation,
    regular_representation,
    rep_from_matrices,
    spin,
    sub_representation,
    v_lambda,
)
from modlie.classify import make_dim2, make_dim4, make_dim5, make_sl2


def dim2_nat_rep(fd):
    """The unique irreducible of dim2 with S(x) = 1 over GF(p), dim p."""
    L, P = make_dim2(fd)
    p = fd.p
    # h = diag(0, 1, ..., p-1); x = cyclic shift with x^p = 1
    H = [[0] * p for _ in range(p)]
    X = [[0] * p for _ in range(p)]
    for i in range(p):
        H[i][i] = fd.embed_int(i)
        X[(i + 1) % p][i] = 1
    return L, P, rep_from_matrices(L, [Matrix(fd, H), Matrix(fd, X)])


# -- construction / verification -------------------------------------------------

def test_not_homomorphism_reports_pair():
    fd = ff_make(3)
    L, P = make_sl2(fd)
    I = Matrix.identity(fd, 2)
    with pytest.raises(NotHomomorphism) as exc:
        rep_from_matrices(L, [I, I, I])
    assert exc.value.pair == ("e", "f")


def test_character_extraction_dim2():
    fd = ff_make(3)
    L, P, rep = dim2_nat_rep(fd)
    S = character_of(rep, P)
    assert S == Character(L, {"x": 1})


def test_character_not_scalar():
    fd = ff_make(3, 2)
    L, P = make_dim2(fd)
    # diag(0, theta): theta^3 - theta != 0, so h^p - h^[p] is not scalar
    theta = fd.parse("0,1")
    mats = [Matrix(fd, [[0, 0], [0, theta.idx]]), Matrix.zeros(fd, 2, 2)]
    rep = rep_from_matrices(L, mats)
    with pytest.raises(NotScalar):
        character_of(rep, P)


# -- spinning and invariance --------------------------------------------------------

def test_spin_full_and_partial():
    fd = ff_make(3)
    L, P, rep = dim2_nat_rep(fd)
    full = spin(rep, [[1, 0, 0]])
    assert full.dim == 3
    # reducible rep: diag sum; spinning one summand stays inside it
    mats = [Matrix(fd, [[0, 0], [0, 1]]), Matrix.zeros(fd, 2, 2)]
    red = rep_from_matrices(L, mats)
    W = spin(red, [[1, 0]])
    assert W.dim == 1
    assert is_invariant(red, W)
    assert not is_invariant(red, module_subspace(red, [[1, 1]]))


# -- irreducibility ------------------------------------------------------------------

def test_is_irreducible_exhaustive():
    fd = ff_make(3)
    L, P, rep = dim2_nat_rep(fd)
    flag, witness = is_irreducible(rep)
    assert flag and witness is None
    mats = [Matrix(fd, [[0, 0], [0, 1]]), Matrix.zeros(fd, 2, 2)]
    flag, witness = is_irreducible(rep_from_matrices(L, mats))
    assert not flag and witness.dim == 1


def test_norton_fallback_agrees(monkeypatch):
    import modlie.repmod as rm
    fd = ff_make(3)
    L, P, rep = dim2_nat_rep(fd)
    mats = [Matrix(fd, [[0, 0], [0, 1]]), Matrix.zeros(fd, 2, 2)]
    red = rep_from_matrices(L, mats)
    monkeypatch.setattr(rm, "EXHAUSTIVE_SPIN_BOUND", 1)
    assert is_irreducible(rep)[0]
    flag, witness = is_irreducible(red)
    assert not flag and witness is not None and is_invariant(red, witness)


def test_composition_factors_regular_module():
    fd = ff_make(2)
    L, P = make_dim2(fd)
    U = uls_make(L, P, Character.zero(L))
    reg = regular_representation(U)
    assert reg.dim == 4
    factors = composition_factors(reg)
    assert sorted(f.dim for f in factors) == [1, 1, 1, 1]


# -- isomorphism ---------------------------------------------------------------------

def test_module_iso_schur_and_negative():
    fd = ff_make(3)
    L, P, rep = dim2_nat_rep(fd)
    # conjugate by a permutation: isomorphic
    perm = Matrix(fd, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    inv = perm.transpose()
    conj = rep_from_matrices(L, [perm * M * inv for M in rep.mats])
    assert module_iso(rep, conj, irreducible=True)
    # different 1-dim reps are not isomorphic
    a = rep_from_matrices(L, [Matrix(fd, [[1]]), Matrix(fd, [[0]])])
    b = rep_from_matrices(L, [Matrix(fd, [[2]]), Matrix(fd, [[0]])])
    assert not module_iso(a, b)
    assert module_iso(a, a)
    # dimensions differ: trivially non-isomorphic
    assert not module_iso(a, rep)


# -- induction -----------------------------------------------------------------------

def test_induce_dimension_and_character():
    fd = ff_make(3)
    L, P = make_dim2(fd)
    S = Character(L, {"x": 1})
    H = Subspace.from_vectors(L, [L.basis_element(1)])  # Fx
    H_alg, _, P_H = pmap_on_subalgebra(P, H)
    M = rep_from_matrices(H_alg, [Matrix(fd, [[1]])])
    V = induce(L, P, S, InducedSpec(H, M))
    assert V.dim == fd.p ** (L.n - H.dim) * M.dim  # [PAPER: dim = p^(n-m) dim M]
    assert character_of(V, P) == S
    assert is_irreducible(V)[0]


def test_induce_character_mismatch():
    fd = ff_make(3)
    L, P = make_dim2(fd)
    S = Character(L, {"x": 1})
    H = Subspace.from_vectors(L, [L.basis_element(1)])
    H_alg, _, _ = pmap_on_subalgebra(P, H)
    M = rep_from_matrices(H_alg, [Matrix(fd, [[2]])])  # char 2 != S(x) = 1
    with pytest.raises(CharacterMismatch):
        induce(L, P, S, InducedSpec(H, M))


def test_submodule_correspondence_p2():
    # [PAPER Thm: submodules of Ind(M) correspond to submodules of M
    #  when H contains an ideal acting suitably — checked on the dim2 shape]
    fd = ff_make(2)
    L, P = make_dim2(fd)
    S = Character.zero(L)
    H = Subspace.from_vectors(L, [L.basis_element(1)])
    H_alg, _, _ = pmap_on_subalgebra(P, H)
    M = rep_from_matrices(H_alg, [Matrix(fd, [[0]])])
    V = induce(L, P, S, InducedSpec(H, M))
    assert V.dim == 2
    W = find_proper_submodule(V)
    assert W is not None  # x acts nilpotently, so Ind is reducible here
    sub = sub_representation(V, W)
    quo = quotient_representation(V, W)
    assert sub.dim + quo.dim == V.dim


def test_one_tensor_M():
    fd = ff_make(3)
    L, P = make_dim2(fd)
    S = Character(L, {"x": 1})
    H = Subspace.from_vectors(L, [L.basis_element(1)])
    H_alg, _, _ = pmap_on_subalgebra(P, H)
    M = rep_from_matrices(H_alg, [Matrix(fd, [[1]])])
    V = induce(L, P, S, InducedSpec(H, M))
    T = one_tensor_M(V)
    assert T.dim == M.dim


# -- eigenvalue functions ---------------------------------------------------------

def test_eigenvalue_functions_dim2():
    fd = ff_make(3)
    L, P, rep = dim2_nat_rep(fd)
    I = Subspace.from_vectors(L, [L.basis_element(1)])  # Fx is an ideal
    lams = eigenvalue_functions(rep, I)
    assert len(lams) == 1
    lam = lams[0]
    assert lam.of_vec(L.basis_element(1).coeffs_idx) == 1  # lambda(x) = S(x) = 1
    Vl = v_lambda(rep, lam)
    assert Vl.dim == 1
    Ll = l_lambda(L, lam, P)
    assert Ll == Subspace.from_vectors(L, [L.basis_element(1)])  # L^lambda = Fx


def test_l_lambda_dim5_formula():
    # [PAPER: for lambda != 0 on I = Fu + Fv,
    #  L^lambda = F(lambda(v)^2 e + lambda(u)lambda(v) h - lambda(u)^2 f) + Fu + Fv]
    fd = ff_make(3)
    L, P = make_dim5(fd)
    e, f, h, u, v = (L.basis_element(i) for i in range(5))
    I = Subspace.from_vectors(L, [u, v])
    for lu in fd.elements():
        for lv in fd.elements():
            if lu == 0 and lv == 0:
                continue
            lam = EigenvalueFunction(I, [lu, lv])
            Ll = l_lambda(L, lam)
            le, lv_ = FieldElement(fd, lu), FieldElement(fd, lv)
            special = (e.scale((lv_ * lv_).idx) + h.scale((le * lv_).idx)
                       - f.scale((le * le).idx))
            expected = Subspace.from_vectors(L, [special, u, v])
            assert Ll == expected


# -- envelope correspondence ---------------------------------------------------------

def test_envelope_correspondence_restriction():
    from modlie.pstruct import minimal_p_envelope
    from modlie.classify import make_dim3alpha
    fd = ff_make(3, 2)
    theta = fd.parse("0,1")
    L = make_dim3alpha(fd, theta)
    env = minimal_p_envelope(L)
    G = env.ambient
    grep = rep_from_matrices(G, [Matrix(fd, [[0]]), Matrix(fd, [[0]]),
                                 Matrix(fd, [[0]]), Matrix(fd, [[1]])])
    lrep = envelope_correspondence(env, grep, check_irreducible=False)
    assert lrep.algebra.n == 3 and lrep.dim == 1


# -- oracle ---------------------------------------------------------------------------

def test_oracle_dim2_counts():
    fd = ff_make(2)
    L, P = make_dim2(fd)
    reps = oracle_irreducibles(L, P, Character.zero(L))
    assert sorted(r.dim for r in reps) == [1, 1]
    reps = oracle_irreducibles(L, P, Character(L, {"x": 1}))
    assert [r.dim for r in reps] == [2]


def test_oracle_agrees_with_induction_p3():
    fd = ff_make(3)
    L, P = make_dim2(fd)
    S = Character(L, {"x": 1})
    reps = oracle_irreducibles(L, P, S)
    assert [r.dim for r in reps] == [3]
    H = Subspace.from_vectors(L, [L.basis_element(1)])
    H_alg, _, _ = pmap_on_subalgebra(P, H)
    M = rep_from_matrices(H_alg, [Matrix(fd, [[1]])])
    V = induce(L, P, S, InducedSpec(H, M))
    assert module_iso(reps[0], V, irreducible=True) is not None


def test_oracle_too_large_guard():
    fd = ff_make(5)
    L, P = make_dim2(fd)
    with pytest.raises(TooLarge):
        oracle_irreducibles(L, P, Character.zero(L))
