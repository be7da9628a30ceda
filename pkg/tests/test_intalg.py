import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import determinantal_divisor_snf, leibniz_det, symbolic_char_poly
from dgscert import intalg
from dgscert.intalg import IntPoly
from dgscert.spectral import walk

int_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
)


def test_det_examples(g8):
    assert intalg.det(intalg.identity(3)) == 1
    assert intalg.det(g8.adjacency) == 1
    assert intalg.det(walk(g8)) == -48


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        intalg.det([[1, 2, 3], [4, 5, 6]])


@given(int_matrices)
def test_det_matches_leibniz(M):
    assert intalg.det(M) == leibniz_det(M)


def test_snf_examples(g8):
    assert intalg.smith_normal_form([[2, 0], [0, 4]]).invariant_factors == (2, 4)
    # frozen from the determinantal-divisor oracle in conftest
    assert intalg.smith_normal_form(walk(g8)).invariant_factors == (1, 1, 1, 1, 2, 2, 2, 6)


def test_snf_of_eight_vertex_example_matches_minor_oracle(g8):
    assert list(intalg.smith_normal_form(walk(g8))) == determinantal_divisor_snf(walk(g8))


def test_snf_errors():
    with pytest.raises(ValueError):
        intalg.smith_normal_form([[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        intalg.smith_normal_form([[1, 2]])


@settings(max_examples=60)
@given(int_matrices)
def test_snf_invariants(M):
    d = intalg.det(M)
    if d == 0:
        return
    s = intalg.smith_normal_form(M).invariant_factors
    assert math.prod(s) == abs(d)
    assert all(s[i + 1] % s[i] == 0 for i in range(len(s) - 1))
    if len(M) <= 4:
        assert list(s) == determinantal_divisor_snf(M)


def test_char_poly_examples():
    assert intalg.char_poly([[0, 0], [0, 0]]) == IntPoly((0, 0, 1))
    assert intalg.char_poly([[0, 1], [1, 0]]) == IntPoly((-1, 0, 1))
    P3 = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert intalg.char_poly(P3) == IntPoly((0, -2, 0, 1)) == symbolic_char_poly(P3)


@given(int_matrices, st.lists(st.integers(-20, 20), min_size=5, max_size=5))
def test_char_poly_evaluation(M, points):
    cp = intalg.char_poly(M)
    n = len(M)
    assert cp.degree == n and cp.lead == 1
    for x0 in points:
        assert cp(x0) == intalg.det([[x0 * (i == j) - M[i][j] for j in range(n)] for i in range(n)])


def test_resultant_examples():
    assert intalg.resultant(IntPoly((-1, 1)), IntPoly((1, 1))) == 2
    # Sylvester determinant of [[1,0,-1],[1,0,0],[0,1,0]]
    assert intalg.resultant(IntPoly((-1, 0, 1)), IntPoly((0, 1))) == -1
    f = IntPoly((3, -1, 4, 1))
    assert intalg.resultant(f, f) == 0
    with pytest.raises(ValueError):
        intalg.resultant(IntPoly(), f)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_resultant_root_product(roots, gcoeffs):
    # Res(f, g) = prod g(r) over the roots r of a monic f
    f = IntPoly((1,))
    for r in roots:
        f = f * IntPoly((-r, 1))
    g = IntPoly(tuple(gcoeffs) + (1,))
    assert intalg.resultant(f, g) == math.prod(g(r) for r in roots)
    sign = (-1) ** (f.degree * g.degree)
    assert intalg.resultant(g, f) == sign * intalg.resultant(f, g)


def test_poly_matrix_det_examples():
    one = IntPoly((1,))
    assert intalg.poly_matrix_det([[one]]) == one
    # [[1, lam+1], [1, 1]] given by columns
    assert intalg.poly_matrix_det([[one, one], [IntPoly((1, 1)), one]]) == IntPoly((0, -1))


def test_poly_matrix_det_dimension_mismatch():
    with pytest.raises(ValueError):
        intalg.poly_matrix_det([[IntPoly((1,))], [IntPoly((1,))]])


def test_poly_matrix_det_against_symbolic_expansion():
    rng = random.Random(7)
    for _ in range(20):
        m = rng.randint(1, 4)
        cols = [[IntPoly(tuple(rng.randint(-3, 3) for _ in range(j + 1))) for _ in range(m)] for j in range(m)]
        rows = [[cols[j][i] for j in range(m)] for i in range(m)]
        h = intalg.poly_matrix_det(cols)
        assert h == leibniz_det(rows, IntPoly(), IntPoly((1,)))
        bound = m * (m - 1) // 2
        for lam in range(-bound - 1, bound + 2):
            assert h(lam) == intalg.det([[c(lam) for c in row] for row in rows])


def test_p_adic_valuation():
    assert intalg.p_adic_valuation(48, 2) == 4
    assert intalg.p_adic_valuation(48, 3) == 1
    assert intalg.p_adic_valuation(7, 2) == 0
    assert intalg.p_adic_valuation(-48, 2) == 4
    with pytest.raises(ValueError):
        intalg.p_adic_valuation(0, 2)


@pytest.mark.parametrize("m, expected", [(6, True), (0, False), (12, False), (1, True), (-1, True), (-30, True), (49, False)])
def test_is_squarefree_int(m, expected):
    assert intalg.is_squarefree_int(m) is expected


def test_is_squarefree_inconclusive_beyond_cutoff():
    big = (2**89 - 1) * (2**107 - 1)  # product of two large Mersenne primes
    assert intalg.is_squarefree_int(big, cutoff=10**3) is None
    with pytest.raises(intalg.InconclusiveError):
        intalg.factorize(big, cutoff=10**3)
    # a square above the cutoff is still detected
    assert intalg.is_squarefree_int((10**9 + 7) ** 2, cutoff=10**3) is False
    assert intalg.is_squarefree_int(10**9 + 7, cutoff=10**3) is True


@given(st.integers(1, 10**6))
def test_squarefree_matches_factorisation(m):
    assert intalg.is_squarefree_int(m) == all(e == 1 for e in intalg.factorize(m).values())
    assert math.prod(p**e for p, e in intalg.factorize(m).items()) == m


def test_rational_inverse_and_level():
    assert intalg.rational_inverse(intalg.identity(3)) == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert intalg.rational_inverse([[2, 0], [0, 3]]) == [[Fraction(1, 2), 0], [0, Fraction(1, 3)]]
    with pytest.raises(ZeroDivisionError):
        intalg.rational_inverse([[1, 1], [1, 1]])
    assert intalg.level([[1, 2], [3, 4]]) == 1
    assert intalg.level([[Fraction(1, 2), Fraction(1, 3)]]) == 6


@settings(max_examples=60)
@given(int_matrices)
def test_level_of_inverse_divides_last_invariant_factor(M):
    if intalg.det(M) == 0:
        return
    inv = intalg.rational_inverse(M)
    d = intalg.smith_normal_form(M).last
    assert all((d * x).denominator == 1 for row in inv for x in row)
    assert d % intalg.level(inv) == 0
    assert intalg.rational_mat_mul(M, inv) == [[Fraction(int(i == j)) for j in range(len(M))] for i in range(len(M))]


def test_snf_scales_to_walk_matrices(g4):
    s = intalg.smith_normal_form(walk(g4)).invariant_factors
    assert s == (1,) * 16 + (2,) * 12 + (6,) * 4


@given(st.lists(st.integers(-50, 50), max_size=9), st.integers(0, 4))
def test_consecutive_interpolation_recovers_polynomial(coeffs, extra):
    f = IntPoly(tuple(coeffs))
    n_points = max(f.degree, 0) + 1 + extra
    assert intalg.interpolate_consecutive([f(x) for x in range(n_points)]) == f
    xs = list(range(-2, n_points - 2))
    assert intalg.interpolate(xs, [f(x) for x in xs]) == f


def test_consecutive_interpolation_rejects_non_integral():
    with pytest.raises(ArithmeticError):
        intalg.interpolate_consecutive([0, 0, 1])  # x(x-1)/2
    assert intalg.interpolate_consecutive([0, 1, 0]) == IntPoly((0, 2, -1))
