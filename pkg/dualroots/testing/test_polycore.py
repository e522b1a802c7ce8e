from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dualroots.dualroots_lab.exceptions import (
    DualRootsConfigException,
    InexactDivisionException,
    ZeroPolynomialException,
)
from dualroots.dualroots_lab.polycore import (
    BiPoly,
    SturmSequence,
    UniPoly,
    dyadic_grid,
    parse_grid,
    parse_rational,
    ring_ops,
    squarefree_part,
    sturm_count,
    to_rational,
    yun_decomposition,
)

small_fractions = st.fractions(min_value=-8, max_value=8, max_denominator=8)
small_polys = st.lists(small_fractions, min_size=0, max_size=5).map(lambda cs: UniPoly(cs, "z"))
small_bipolys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), small_fractions, max_size=6
).map(BiPoly)


# region Rationals


@pytest.mark.parametrize(
    "text, value",
    [
        ("3/4", Fraction(3, 4)),
        ("-7", Fraction(-7)),
        ("0.125", Fraction(1, 8)),
        ("1e-20", Fraction(1, 10**20)),
        (" 5/10 ", Fraction(1, 2)),
    ],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1/0", "1/2/3"])
def test_parse_rational_rejects(text):
    with pytest.raises(DualRootsConfigException):
        parse_rational(text)


def test_to_rational_rejects_floats():
    with pytest.raises(DualRootsConfigException):
        to_rational(0.5)
    with pytest.raises(DualRootsConfigException):
        to_rational(True)
    assert to_rational("1/3") == Fraction(1, 3)


# endregion

# region Univariate


def test_unipoly_normalizes_and_prints():
    p = UniPoly([1, 0, Fraction(-1, 2), 0, 0])
    assert p.degree == 2
    assert p.to_text() == "1 + -1/2*z^2"
    assert UniPoly.zero().degree == -1
    assert UniPoly.zero().to_text() == "0"


def test_unipoly_arithmetic():
    p = UniPoly.from_roots([1, 2])
    assert p.coeffs == (2, -3, 1)
    assert (p + 1).coeffs == (3, -3, 1)
    assert (p * p).degree == 4
    assert (p - p).is_zero
    assert p ** 0 == UniPoly.constant(1)
    q, r = divmod(p, UniPoly.from_roots([1]))
    assert q == UniPoly.from_roots([2])
    assert r.is_zero


def test_exact_division():
    p = UniPoly.from_roots([1, 2])
    with pytest.raises(InexactDivisionException):
        p.exact_div(UniPoly.from_roots([3]))
    with pytest.raises(ZeroDivisionError):
        divmod(p, UniPoly.zero())


def test_gcd_is_monic():
    a = UniPoly.from_roots([1, 2, 3], leading=5)
    b = UniPoly.from_roots([2, 3, 7], leading=-3)
    assert a.gcd(b) == UniPoly.from_roots([2, 3])


def test_derivative_and_evaluation():
    p = UniPoly([1, 2, 3])
    assert p.derivative() == UniPoly([2, 6])
    assert p.derivative(3).is_zero
    assert p(Fraction(1, 2)) == Fraction(11, 4)


@pytest.mark.parametrize("value", [Fraction(-3, 7), Fraction(0), Fraction(2), Fraction(5, 3)])
def test_sign_at_matches_evaluation(value):
    p = UniPoly.from_roots([Fraction(5, 3), -1], leading=Fraction(-2, 9))
    v = p(value)
    assert p.sign_at(value) == (v > 0) - (v < 0)


def test_compose_shift_and_reflect():
    p = UniPoly([0, 0, 1])
    assert p.compose_shift(1) == UniPoly([1, 2, 1])
    assert UniPoly([1, 2, 3]).reflect() == UniPoly([1, -2, 3])


@pytest.mark.parametrize(
    "op, expected",
    [
        ("add", UniPoly([0, 3, 1])),
        ("sub", UniPoly([-2, -1, 1])),
        ("mul", UniPoly([-1, -1, 3, 2])),
        ("scale", UniPoly([Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2)])),
    ],
)
def test_ring_ops(op, expected):
    a = UniPoly([-1, 1, 1])
    b = UniPoly([1, 2]) if op != "scale" else Fraction(1, 2)
    assert ring_ops(a, b, op) == expected


def test_ring_ops_on_bipolys():
    x, z = BiPoly.variable("x"), BiPoly.variable("z")
    assert ring_ops(x, z, "mul") == x * z
    assert ring_ops(x, z) == x + z
    with pytest.raises(ValueError):
        ring_ops(x, z, "div")


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_division_identity(a, b):
    if b.is_zero:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


# endregion

# region Bivariate


def test_bipoly_specialize():
    x, z = BiPoly.variable("x"), BiPoly.variable("z")
    p = x * x * z + z - 1
    assert p.specialize("x", 2) == UniPoly([-1, 5], "z")
    assert p.specialize("z", 0) == UniPoly([-1], "x")
    assert p.evaluate(2, 3) == 14
    assert p.degree_x == 2 and p.degree_z == 1


def test_bipoly_differentiate_and_coefficients():
    x, z = BiPoly.variable("x"), BiPoly.variable("z")
    p = (x * z * z).scale(3) + x
    assert p.differentiate("z") == (x * z).scale(6)
    assert p.differentiate("x", 2).is_zero
    assert p.coefficient("x", 1) == UniPoly([1, 0, 3], "z")


def test_bipoly_shift_reflect_divide():
    x, z = BiPoly.variable("x"), BiPoly.variable("z")
    p = x * z
    assert p.shift("z", 1) == x * z + x
    assert (x * x * x + z).reflect("x") == z - x * x * x
    q = (z + 1) * (x + z)
    assert q.divide_by(UniPoly([1, 1], "z")) == x + z
    with pytest.raises(InexactDivisionException):
        q.divide_by(UniPoly([2, 1], "z"))


def test_bipoly_text():
    x, z = BiPoly.variable("x"), BiPoly.variable("z")
    assert (x * x * z + 1).to_text() == "(1) + (1*z)*x^2"
    assert BiPoly.zero().to_text() == "0"


@settings(max_examples=40, deadline=None)
@given(small_bipolys, small_bipolys, small_fractions)
def test_differentiation_is_linear_and_commutes(a, b, v):
    assert (a + b).differentiate("x") == a.differentiate("x") + b.differentiate("x")
    assert a.differentiate("x").differentiate("z") == a.differentiate("z").differentiate("x")
    assert a.differentiate("x").specialize("z", v) == a.specialize("z", v).derivative()


# endregion

# region Sturm and square-free parts


@pytest.mark.parametrize(
    "roots, lo, hi, expected",
    [
        ([1, 2, 3], None, None, 3),
        ([1, 2, 3], 1, 3, 2),
        ([1, 2, 3], 0, 1, 1),
        ([1, 1, 2], None, None, 2),
        ([Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)], 0, 1, 1),
    ],
)
def test_sturm_count(roots, lo, hi, expected):
    assert sturm_count(UniPoly.from_roots(roots), lo, hi) == expected


def test_sturm_count_nonreal():
    assert sturm_count(UniPoly([1, 0, 1])) == 0
    assert sturm_count(UniPoly([-2, 0, 0, 1])) == 1


def test_sturm_zero_polynomial():
    with pytest.raises(ZeroPolynomialException):
        SturmSequence(UniPoly.zero())
    with pytest.raises(ZeroPolynomialException):
        sturm_count(UniPoly.zero())


@pytest.mark.parametrize(
    "coeffs",
    [
        [-1, 0, 1],
        [6, -5, -2, 1],
        [1, 0, -3, 0, 1],
        [Fraction(1, 2), 3, -7, 0, 2, 1],
        [1, 1, 1, 1],
    ],
)
def test_sturm_count_matches_sympy(coeffs):
    p = UniPoly(coeffs)
    assert sturm_count(p) == len(set(sympy.real_roots(p.to_sympy())))


@pytest.mark.parametrize(
    "roots, lo, hi",
    [
        ([1, 2, 3], 1, 3),
        ([1, 1, 2], 1, 2),
        ([Fraction(-1, 2), 0, 0, Fraction(5, 3)], Fraction(-1, 2), 0),
        ([-4, 1, 7], 0, 10),
    ],
)
def test_sturm_count_is_half_open(roots, lo, hi):
    p = UniPoly.from_roots(roots)
    # sympy counts on the closed interval
    closed = p.to_sympy().count_roots(sympy.Rational(lo), sympy.Rational(hi))
    assert sturm_count(p, lo, hi) == closed - (1 if p.sign_at(lo) == 0 else 0)


def test_sympy_conversion_keeps_variable():
    p = UniPoly([Fraction(1, 3), 0, -2], "x")
    sym = p.to_sympy()
    assert sym.domain == sympy.QQ
    assert str(sym.gen) == "x"
    assert UniPoly.from_sympy(sym) == p
    assert UniPoly.from_sympy(UniPoly.zero("x").to_sympy()).is_zero


def test_sturm_chain_is_squarefree():
    p = UniPoly.from_roots([2, 2, 2, -1])
    seq = SturmSequence(p)
    assert seq.chain[0].monic() == UniPoly.from_roots([2, -1])
    assert seq.gcd == UniPoly.from_roots([2, 2])
    assert seq.count() == 2


def test_yun_decomposition():
    p = UniPoly.from_roots([1, 1, 2, 3, 3, 3], leading=4)
    factors = yun_decomposition(p)
    assert factors == [
        (UniPoly.from_roots([2]), 1),
        (UniPoly.from_roots([1]), 2),
        (UniPoly.from_roots([3]), 3),
    ]
    part, profile = squarefree_part(p)
    assert part.monic() == UniPoly.from_roots([1, 2, 3])
    assert profile == [(1, 1), (1, 2), (1, 3)]


def test_yun_matches_sympy():
    p = UniPoly.from_roots([0, 0, -1, Fraction(1, 2), Fraction(1, 2)]) * UniPoly([1, 0, 1])
    expected = {
        (tuple(reversed(f.monic().all_coeffs())), k) for f, k in sympy.sqf_list(p.to_sympy())[1]
    }
    got = {(tuple(sympy.Rational(c.numerator, c.denominator) for c in f.coeffs), k) for f, k in yun_decomposition(p)}
    assert got == expected


# endregion

# region Grids


def test_dyadic_grid():
    assert dyadic_grid(-1, 0, 9) == [Fraction(-8 + j, 8) for j in range(8)]
    assert dyadic_grid(-1, 1, 3, True, True) == [-1, 0, 1]
    with pytest.raises(DualRootsConfigException):
        dyadic_grid(1, 0, 3)


def test_parse_grid():
    assert parse_grid("dyadic:[-1,0):9")[0] == -1
    assert len(parse_grid("dyadic:[-1,0):9")) == 8
    assert parse_grid("dyadic:(0,1]:3") == [Fraction(1, 2), Fraction(1)]
    assert parse_grid("1/2, 1, 3") == [Fraction(1, 2), 1, 3]
    with pytest.raises(DualRootsConfigException):
        parse_grid("")
    with pytest.raises(DualRootsConfigException):
        parse_grid("dyadic:[0,1]")


# endregion
