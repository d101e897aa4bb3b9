"""Structure-constant algebras, Jacobi verification, subspace machinery."""

import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from modlie.errors import BadCoefficient, DuplicateLabel, JacobiViolation, NotIdeal
from modlie.gfp import ff_make
from modlie.liealg import (
    LieAlgebra,
    LieElement,
    Subspace,
    ad_matrix,
    bracket,
    center,
    centralizer,
    count_subspaces,
    derived_subalgebra,
    enumerate_subspaces,
    ideals_enumerate,
    is_ideal,
    is_subalgebra,
    lie_from_table,
    pmap_images_from_spec,
    quotient_algebra,
    subalgebra_as_algebra,
)

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "modlie" / "fixtures"


def load(name):
    return json.loads((FIXTURES / name).read_text())


def sl2(fd):
    two = fd.embed_int(2)
    return LieAlgebra(fd, ["e", "f", "h"], {
        (0, 1): [0, 0, 1],
        (0, 2): [fd.neg(two), 0, 0],
        (1, 2): [0, two, 0],
    })


def dim4(fd):
    return LieAlgebra(fd, ["t", "x", "y", "z"], {
        (0, 1): [0, 1, 0, 0],
        (0, 2): [0, 0, fd.neg(1), 0],
        (1, 2): [0, 0, 0, 1],
    })


# -- construction and verification --------------------------------------------

def test_jacobi_violation_reports_triple():
    # [PAPER-adjacent TRIVIAL: [a,b]=c, [a,c]=a, [b,c]=b fails Jacobi over GF(5)]
    fd = ff_make(5)
    with pytest.raises(JacobiViolation) as exc:
        LieAlgebra(fd, ["a", "b", "c"], {
            (0, 1): [0, 0, 1],
            (0, 2): [1, 0, 0],
            (1, 2): [0, 1, 0],
        })
    assert exc.value.triple == ("a", "b", "c")


def test_duplicate_label():
    fd = ff_make(2)
    with pytest.raises(DuplicateLabel):
        lie_from_table({"p": 2, "basis": ["a", "a"], "brackets": {}})


def test_antisymmetry_and_bilinearity_sl2():
    fd = ff_make(7)
    L = sl2(fd)
    e, f, h = (L.basis_element(i) for i in range(3))
    assert bracket(e, f) == h
    assert bracket(f, e) == -h
    assert bracket(e, e).is_zero()
    x = e.scale(3) + h.scale(2)
    y = f - e.scale(5)
    lhs = bracket(x, y)
    rhs = (bracket(e, f).scale(3) - bracket(e, e).scale(fd.mul(3, 5))
           + bracket(h, f).scale(2) - bracket(h, e).scale(fd.mul(2, 5)))
    assert lhs == rhs


def test_ad_matrix_is_bracket():
    fd = ff_make(3)
    L = sl2(fd)
    for i in range(3):
        A = ad_matrix(L.basis_element(i))
        for j in range(3):
            col = [A.data[r][j] for r in range(3)]
            assert col == bracket(L.basis_element(i), L.basis_element(j)).coeffs_idx


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3 ** 3 - 1), st.integers(0, 3 ** 3 - 1), st.integers(0, 3 ** 3 - 1))
def test_jacobi_property_random_elements(a, b, c):
    fd = ff_make(3)
    L = sl2(fd)
    def mk(seed):
        return L.element([seed % 3, (seed // 3) % 3, (seed // 9) % 3])
    x, y, z = mk(a), mk(b), mk(c)
    total = (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x))
             + bracket(z, bracket(x, y)))
    assert total.is_zero()


# -- JSON schema ---------------------------------------------------------------

def test_fixture_roundtrip_all():
    for name in ["sl2.json", "dim2.json", "dim4.json", "dim3alpha.json",
                 "dim5.json", "fsl2.json", "fsl2_env.json"]:
        spec = load(name)
        L = lie_from_table(spec)
        assert L.n == len(spec["basis"])
        images = pmap_images_from_spec(L, spec)
        assert (images is None) == ("pmap" not in spec)


def test_bad_bracket_key():
    with pytest.raises(BadCoefficient):
        lie_from_table({"p": 2, "basis": ["a", "b"], "brackets": {"a": {"b": "1"}}})
    with pytest.raises(BadCoefficient):
        lie_from_table({"p": 2, "basis": ["a", "b"], "brackets": {"a|q": {"b": "1"}}})


def test_field_degree_override_resets_modulus():
    spec = load("dim3alpha.json")
    L = lie_from_table(spec, field_degree=4)
    assert L.field.m == 4 and L.field.p == 3


def test_bracket_key_order_antisymmetry():
    # "b|a" entries are negated into the canonical i<j slot
    specA = {"p": 5, "basis": ["a", "b"], "brackets": {"a|b": {"b": "2"}}}
    specB = {"p": 5, "basis": ["a", "b"], "brackets": {"b|a": {"b": "3"}}}
    assert lie_from_table(specA).table == lie_from_table(specB).table


# -- subspaces ------------------------------------------------------------------

def test_subspace_canonical_equality():
    fd = ff_make(3)
    L = sl2(fd)
    e, f, h = (L.basis_element(i) for i in range(3))
    V1 = Subspace.from_vectors(L, [e + f, h])
    V2 = Subspace.from_vectors(L, [(e + f).scale(2), h + (e + f)])
    assert V1 == V2 and hash(V1) == hash(V2)
    assert V1.dim == 2
    assert V1.contains(e + f) and not V1.contains(e)


def test_subspace_sum_intersect_dimension_formula():
    fd = ff_make(2)
    L = dim4(fd)
    t, x, y, z = (L.basis_element(i) for i in range(4))
    A = Subspace.from_vectors(L, [t, x])
    B = Subspace.from_vectors(L, [x, y])
    assert A.sum(B).dim == 3
    assert A.intersect(B).dim == 1
    assert A.sum(B).dim + A.intersect(B).dim == A.dim + B.dim


def test_coords_of_and_complement():
    fd = ff_make(3)
    L = sl2(fd)
    V = Subspace.from_vectors(L, [L.basis_element(0) + L.basis_element(2)])
    co = V.coords_of((L.basis_element(0) + L.basis_element(2)).scale(2).coeffs_idx)
    assert co == [2]
    assert V.coords_of(L.basis_element(1).coeffs_idx) is None
    assert len(V.complement_coords()) == 2


def test_count_and_enumerate_subspaces():
    fd = ff_make(2)
    # Gaussian binomials for q=2, n=3: 1 + 7 + 7 + 1 = 16
    assert count_subspaces(2, 3) == 16
    spaces = list(enumerate_subspaces(fd, 3))
    assert len(spaces) == 16
    assert len({tuple(map(tuple, s)) for s in spaces}) == 16
    # fixed dimension
    assert len(list(enumerate_subspaces(fd, 3, dim=1))) == 7


# -- structural maps --------------------------------------------------------------

def test_derived_center_sl2():
    fd = ff_make(5)
    L = sl2(fd)
    assert derived_subalgebra(L).dim == 3
    assert center(L).dim == 0


def test_dim4_ideals_exactly_six():
    # [PAPER: the ideals of the t/x/y/z algebra are 0, Fz, Fz+Fx, Fz+Fy,
    #  Fz+Fx+Fy, L]
    fd = ff_make(3)
    L = dim4(fd)
    t, x, y, z = (L.basis_element(i) for i in range(4))
    ideals = ideals_enumerate(L)
    expected = [
        Subspace.zero(L),
        Subspace.from_vectors(L, [z]),
        Subspace.from_vectors(L, [z, x]),
        Subspace.from_vectors(L, [z, y]),
        Subspace.from_vectors(L, [z, x, y]),
        Subspace.full(L),
    ]
    assert len(ideals) == 6
    assert set(map(hash, ideals)) == set(map(hash, expected))
    assert center(L) == Subspace.from_vectors(L, [z])


def test_centralizer_vs_center():
    fd = ff_make(3)
    L = dim4(fd)
    assert centralizer(L, Subspace.full(L)) == center(L)


def test_subalgebra_as_algebra_and_quotient():
    fd = ff_make(3)
    L = dim4(fd)
    x, y, z = (L.basis_element(i) for i in (1, 2, 3))
    I = Subspace.from_vectors(L, [x, y, z])
    assert is_ideal(L, I) and is_subalgebra(L, I)
    H, embed = subalgebra_as_algebra(L, I)
    assert H.n == 3
    # Heisenberg: one nonzero bracket
    nonzero = {k: v for k, v in H.table.items() if any(v)}
    assert len(nonzero) == 1
    Q, project = quotient_algebra(L, I)
    assert Q.n == 1
    with pytest.raises(NotIdeal):
        quotient_algebra(L, Subspace.from_vectors(L, [L.basis_element(0)]))
