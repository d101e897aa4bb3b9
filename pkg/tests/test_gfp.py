"""Field arithmetic, linear algebra, Artin-Schreier and semilinear solving."""

import pytest
from hypothesis import given, settings, strategies as st

from modlie.errors import (
    DegreeMismatch,
    DivisionByZero,
    NotPrime,
    ReducibleModulus,
)
from modlie.gfp import (
    FieldElement,
    Matrix,
    artin_schreier_roots,
    artin_schreier_solvable,
    ff_make,
    frobenius,
    mat_solve,
    rref_rows,
    solve_semilinear,
    SemilinearMap,
)

FIELDS = [ff_make(2), ff_make(3), ff_make(5), ff_make(2, 2), ff_make(3, 2), ff_make(2, 3)]


def elements(fd):
    return [FieldElement(fd, i) for i in fd.elements()]


# -- construction ------------------------------------------------------------

def test_not_prime_rejected():
    with pytest.raises(NotPrime):
        ff_make(4)
    with pytest.raises(NotPrime):
        ff_make(17)  # outside the supported small-prime range


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        ff_make(2, 2, modulus=[1, 0, 1])  # X^2+1 = (X+1)^2 over GF(2)


def test_default_modulus_gf9_is_lex_first():
    # [DERIVED oracle: the lex-first monic irreducible quadratic over GF(3)
    #  is X^2 + 1, coefficients low-to-high (1, 0, 1)]
    fd = ff_make(3, 2)
    assert fd.modulus == (1, 0, 1)


def test_field_cache_identity():
    assert ff_make(3, 2) is ff_make(3, 2)


# -- ring axioms (property tests) --------------------------------------------

@pytest.mark.parametrize("fd", FIELDS, ids=lambda f: f"GF({f.p}^{f.m})")
def test_field_axioms_exhaustive(fd):
    els = fd.elements()
    for a in els:
        assert fd.add(a, 0) == a
        assert fd.mul(a, fd.one().idx if hasattr(fd, "one") else 1) in els
        assert fd.add(a, fd.neg(a)) == 0
        if a != 0:
            assert fd.mul(a, fd.inv(a)) == 1
    if fd.q <= 9:
        for a in els:
            for b in els:
                assert fd.add(a, b) == fd.add(b, a)
                assert fd.mul(a, b) == fd.mul(b, a)
                for c in els:
                    assert fd.mul(a, fd.add(b, c)) == fd.add(fd.mul(a, b), fd.mul(a, c))


def test_division_by_zero():
    fd = ff_make(3)
    with pytest.raises(DivisionByZero):
        fd.inv(0)


def test_parse_fmt_roundtrip():
    fd = ff_make(3, 2)
    for i in fd.elements():
        assert fd.parse(fd.fmt(i)).idx == i
    assert fd.parse("2").idx == 2          # prime-subfield shorthand
    assert fd.parse("1,2").idx == 1 + 2 * 3
    with pytest.raises(DegreeMismatch):
        fd.parse("1,2,0")
    with pytest.raises(DegreeMismatch):
        fd.parse("x")


def test_element_operators():
    fd = ff_make(3, 2)
    theta = fd.parse("0,1")
    # modulus X^2 + 1: theta^2 = -1 = 2
    assert (theta * theta).idx == 2
    assert (theta + theta - theta).idx == theta.idx
    assert (theta / theta).idx == 1
    assert (theta ** fd.q).idx == theta.idx  # x^q = x


# -- Frobenius ---------------------------------------------------------------

@pytest.mark.parametrize("fd", FIELDS, ids=lambda f: f"GF({f.p}^{f.m})")
def test_frobenius_is_pth_power_and_invertible(fd):
    for a in fd.elements():
        assert fd.frob(a) == fd.pow(a, fd.p)
        assert fd.frob_inv(fd.frob(a)) == a
    # additive and multiplicative
    for a in list(fd.elements())[: min(fd.q, 8)]:
        for b in list(fd.elements())[: min(fd.q, 8)]:
            assert fd.frob(fd.add(a, b)) == fd.add(fd.frob(a), fd.frob(b))
            assert fd.frob(fd.mul(a, b)) == fd.mul(fd.frob(a), fd.frob(b))


def test_frobenius_wrapper():
    fd = ff_make(3, 2)
    a = FieldElement(fd, 5)
    assert frobenius(a).idx == fd.frob(5)
    assert frobenius(frobenius(a), inverse=True).idx == 5


# -- Artin-Schreier ----------------------------------------------------------

@pytest.mark.parametrize("fd", FIELDS, ids=lambda f: f"GF({f.p}^{f.m})")
def test_artin_schreier_root_structure(fd):
    for c in fd.elements():
        roots = artin_schreier_roots(FieldElement(fd, c))
        # 0 or exactly p roots, differing by the prime subfield
        assert len(roots) in (0, fd.p)
        for r in roots:
            assert fd.sub(fd.pow(r.idx, fd.p), r.idx) == c
        assert artin_schreier_solvable(FieldElement(fd, c)) == bool(roots)


def test_artin_schreier_trace_criterion_gf9():
    fd = ff_make(3, 2)
    # solvable iff trace over the prime field vanishes
    for c in fd.elements():
        ce = FieldElement(fd, c)
        solvable = bool(artin_schreier_roots(ce))
        assert solvable == (fd.trace(c) == 0)


# -- matrices ----------------------------------------------------------------

def test_rref_and_rank():
    fd = ff_make(3)
    M = Matrix(fd, [[1, 2, 0], [2, 1, 1], [0, 0, 0]])
    assert M.rank() == 2
    # (2,1,0) = 2*(1,2,0) over GF(3): dependent rows collapse
    rows, pivots = rref_rows(fd, [[1, 2, 0], [2, 1, 0]])
    assert pivots == [0]
    rows, pivots = rref_rows(fd, [[1, 2, 0], [0, 1, 0]])
    assert pivots == [0, 1]


def test_matrix_algebra_gf4():
    fd = ff_make(2, 2)
    A = Matrix(fd, [[2, 1], [1, 0]])  # 2 is the generator "0,1"
    I = Matrix.identity(fd, 2)
    assert (A * I).data == A.data
    assert (A + A).is_zero()  # char 2
    assert A.mat_pow(fd.q - 1).data  # no blowup
    # A * A^{-1} via solving A X = I columnwise
    for col in range(2):
        b = [I.data[r][col] for r in range(2)]
        sol = mat_solve(A, b)
        assert sol is not None and sol.count() == 1


def test_nullspace_times_matrix_is_zero():
    fd = ff_make(5)
    A = Matrix(fd, [[1, 2, 3], [2, 4, 1], [3, 6, 4]])
    for v in A.nullspace():
        assert all(c == 0 for c in A.apply(v))
    assert A.rank() + len(A.nullspace()) == 3


def test_charpoly_cayley_hamilton():
    fd = ff_make(3, 2)
    A = Matrix(fd, [[3, 1, 0], [0, 2, 5], [1, 0, 7]])
    cp = A.charpoly()  # low-to-high coefficients
    acc = Matrix.zeros(fd, 3, 3)
    power = Matrix.identity(fd, 3)
    for coeff in cp:  # coefficients are element indices: wrap before scaling
        acc = acc + power.scale(FieldElement(fd, coeff))
        power = power * A
    assert acc.is_zero()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3 ** 4 - 1), st.integers(0, 3 ** 4 - 1))
def test_transpose_product_identity(a_seed, b_seed):
    fd = ff_make(3)
    def mk(seed):
        vals = []
        for _ in range(4):
            vals.append(seed % 3)
            seed //= 3
        return Matrix(fd, [vals[:2], vals[2:]])
    A, B = mk(a_seed), mk(b_seed)
    assert (A * B).transpose().data == (B.transpose() * A.transpose()).data


# -- semilinear solving --------------------------------------------------------

def test_solve_semilinear_exhaustive_gf9():
    fd = ff_make(3, 2)
    B = Matrix(fd, [[4, 1], [2, 3]])
    f = SemilinearMap(B)
    for c0 in range(0, fd.q, 3):
        for c1 in range(0, fd.q, 4):
            c = [c0, c1]
            sols = solve_semilinear(f, c)
            brute = []
            for v0 in fd.elements():
                for v1 in fd.elements():
                    v = [v0, v1]
                    img = B.apply([fd.frob(x) for x in v])
                    if img == c:
                        brute.append(v)
            got = sols.solutions if sols is not None and sols.solutions is not None else []
            assert sorted(got) == sorted(brute)
