from fractions import Fraction

import pytest

from dualroots.dualroots_lab.exceptions import (
    DualRootsDomainException,
    ZeroPolynomialException,
)
from dualroots.dualroots_lab.families import FamilyId, FamilyKind, laguerre
from dualroots.dualroots_lab.polycore import UniPoly
from dualroots.dualroots_lab.rootlab import (
    RootEnclosure,
    compare_roots,
    first_nonreal,
    gamma_roots,
    in_support,
    isolate,
    modulus,
    negated,
    nonreal_scan,
    positive_roots,
    refine,
    sign_at_root,
    zero_multiplicity,
)

TOL = Fraction(1, 10**30)
OUTSIDE_GRID = [Fraction(5, 4), Fraction(3, 2), 2, 3]


def test_isolate_laguerre_two():
    iso = isolate(laguerre(2).specialize("z", 0))
    assert iso.real_count == 2
    assert iso.nonreal_deficit == 0
    lo_root, hi_root = iso.refine_all(TOL)
    # 2 - sqrt(2) and 2 + sqrt(2)
    for enc, side in ((lo_root, -1), (hi_root, 1)):
        assert enc.width <= TOL
        assert enc.poly.sign_at(enc.lo) * enc.poly.sign_at(enc.hi) < 0
        assert (enc.mid - 2) * side > 0


def test_isolate_multiple_roots():
    p = UniPoly.from_roots([1, 1, -2, Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)])
    iso = isolate(p)
    assert iso.real_count == 3
    assert iso.multiplicities == [1, 3, 2]
    assert iso.real_multiplicity_count == 6
    assert iso.is_real_rooted
    assert not iso.is_simple


def test_isolate_nonreal():
    iso = isolate(UniPoly([1, 0, 0, 0, 1]) * UniPoly([-1, 1]))
    assert iso.real_count == 1
    assert iso.nonreal_deficit == 4
    assert not iso.is_real_rooted


def test_isolate_exact_hits():
    iso = isolate(UniPoly.from_roots([0, Fraction(1, 2), Fraction(-3, 2)]))
    values = [enc.refined(TOL).value for enc in iso]
    assert values == [Fraction(-3, 2), 0, Fraction(1, 2)]


@pytest.mark.parametrize(
    "p",
    [
        laguerre(6).specialize("z", 0),
        UniPoly([1, 0, -3, 0, 1]) * UniPoly([-1, 0, 2]),
        UniPoly.from_roots([Fraction(1, 3), 5, -2]) * UniPoly([1, 1, 1]),
    ],
)
def test_isolation_agrees_with_sympy_intervals(p):
    iso = isolate(p)
    expected = p.to_sympy().intervals()
    assert iso.real_count == len(expected)
    for enc, ((a, b), k) in zip(iso, expected):
        assert enc.multiplicity == k
        assert enc.poly.sign_at(enc.hi) == 0 or enc.poly.sign_at(enc.lo) * enc.poly.sign_at(enc.hi) < 0
        assert enc.lo <= Fraction(int(b.p), int(b.q))
        assert Fraction(int(a.p), int(a.q)) <= enc.hi


def test_refined_root_stays_half_open():
    enc = isolate(UniPoly([-3, 0, 1]))[1].refined(Fraction(1, 10**12))
    assert enc.width <= Fraction(1, 10**12)
    assert enc.lo ** 2 < 3 < enc.hi ** 2


def test_refined_across_zero():
    enc = RootEnclosure(Fraction(-1), Fraction(3), 1, UniPoly([-2, 0, 1])).refined(Fraction(1, 10**9))
    assert enc.width <= Fraction(1, 10**9)
    assert 0 < enc.lo
    assert enc.lo ** 2 < 2 < enc.hi ** 2


def test_isolate_zero_polynomial():
    with pytest.raises(ZeroPolynomialException):
        isolate(UniPoly.zero())
    assert isolate(UniPoly.constant(3)).real_count == 0


def test_refine_index_range():
    iso = isolate(UniPoly.from_roots([1, 2]))
    with pytest.raises(IndexError):
        refine(iso, 2, TOL)
    enc = refine(iso, 1, Fraction(1, 1000))
    assert enc.contains(2)
    assert iso[1] == enc


def test_enclosure_bisect_keeps_root():
    p = UniPoly([-2, 0, 1])
    enc = RootEnclosure(Fraction(1), Fraction(2), 1, p)
    for _ in range(20):
        enc = enc.bisect()
        assert enc.lo ** 2 < 2 <= enc.hi ** 2
    assert enc.to_dict()["exact"] is False


def test_compare_roots():
    a = isolate(UniPoly([-2, 0, 1]))[1]
    b = isolate(UniPoly([-3, 0, 1]))[1]
    rel, _, _ = compare_roots(a, b)
    assert rel == "<"
    rel, _, _ = compare_roots(b, a)
    assert rel == ">"
    c = isolate(UniPoly([-2, 0, 1]) * UniPoly([-5, 1]))[1]
    rel, _, _ = compare_roots(a, c)
    assert rel == "="


def test_compare_roots_width_floor():
    a = isolate(UniPoly([-2, 0, 1]))[1]
    b = isolate(UniPoly([-2, 0, 1]) * UniPoly([1, 1]))[2]
    # equal roots of different polynomials are detected through the gcd
    rel, _, _ = compare_roots(a, b, Fraction(1, 2**10))
    assert rel == "="


def test_sign_at_root():
    enc = isolate(UniPoly([-2, 0, 1]))[1]
    s, _ = sign_at_root(UniPoly([-1, 1]), enc)
    assert s == 1
    s, _ = sign_at_root(UniPoly([-2, 1]), enc)
    assert s == -1
    s, _ = sign_at_root(UniPoly([-2, 0, 1]) * UniPoly([7, 1]), enc)
    assert s == 0


def test_negated_and_modulus():
    enc = isolate(UniPoly([-2, 0, 1]))[0]
    neg = negated(enc)
    assert neg.lo >= 0
    assert neg.poly.sign_at(neg.hi) * neg.poly.sign_at(neg.lo) < 0
    assert modulus(enc).lo >= 0


def test_positive_roots_and_zero_multiplicity():
    p = UniPoly.from_roots([0, 0, -1, 1, 2])
    iso = isolate(p)
    assert len(positive_roots(iso)) == 2
    assert zero_multiplicity(p) == 2
    with pytest.raises(ZeroPolynomialException):
        zero_multiplicity(UniPoly.zero())


@pytest.mark.parametrize("n", range(2, 13))
def test_gamma_roots_at_minus_one(n):
    roots = gamma_roots(n, -1)
    assert roots.exact_values() == [Fraction(-1, 2) - (i - 1) for i in range(1, n // 2 + 1)]


@pytest.mark.parametrize("x, expected", [(Fraction(-1, 2), 1), (Fraction(-1, 4), 7), (Fraction(1, 8), 31)])
def test_gamma_roots_n_two(x, expected):
    roots = gamma_roots(2, x)
    assert len(roots) == 1
    assert roots[0].value == expected


def test_gamma_roots_orderings():
    by_value = gamma_roots(6, Fraction(-1, 2), ordering="value")
    mids = [enc.mid for enc in by_value.values]
    assert mids == sorted(mids, reverse=True)
    by_modulus = gamma_roots(6, Fraction(-1, 2))
    moduli = [abs(enc.mid) for enc in by_modulus.values]
    assert moduli == sorted(moduli)
    assert by_modulus.to_dict()["ordering"] == "modulus"


def test_gamma_roots_domain():
    with pytest.raises(DualRootsDomainException):
        gamma_roots(4, 0)
    with pytest.raises(DualRootsDomainException):
        gamma_roots(1, Fraction(1, 2))


def test_nonreal_scan_inside_support():
    report = nonreal_scan(FamilyId(FamilyKind.laguerre, 5), [0, Fraction(1, 2), 3])
    assert [row["nonreal_deficit"] for row in report["rows"]] == [0, 0, 0]
    assert report.witnesses == []


def test_nonreal_scan_gegenbauer_at_one():
    _, rows = first_nonreal(FamilyKind.gegenbauer, 6, [1])
    assert all(row["nonreal_deficit"] == 0 for row in rows)
    assert len(rows) == 6


def test_nonreal_scan_charlier_rejected():
    with pytest.raises(DualRootsDomainException):
        nonreal_scan(FamilyId(FamilyKind.charlier, 2), [1])


def test_scan_reports_zero_polynomial():
    # G_1(0, z) vanishes identically, G_2(0, z) = -z does not
    _, rows = first_nonreal(FamilyKind.gegenbauer, 2, [0])
    assert [row["zero_polynomial"] for row in rows] == [True, False]


@pytest.mark.parametrize(
    "kind, x0, expected",
    [
        (FamilyKind.laguerre, 0, True),
        (FamilyKind.laguerre, Fraction(-1, 2), False),
        (FamilyKind.gegenbauer, 1, True),
        (FamilyKind.gegenbauer_modified, Fraction(-5, 4), False),
        ("gegenbauer-tilde", Fraction(1, 2), True),
    ],
)
def test_in_support(kind, x0, expected):
    assert in_support(kind, x0) is expected
    with pytest.raises(DualRootsDomainException):
        in_support(FamilyKind.charlier, 1)


def test_first_nonreal_outside_support():
    first, rows = first_nonreal(FamilyKind.gegenbauer, 6, OUTSIDE_GRID, workers=1)
    assert (first["n"], first["x"]) == (4, "5/4")
    assert first["in_support"] is False
    assert len(rows) == 24


@pytest.mark.scale
def test_first_nonreal_outside_support_to_twenty_four():
    first, rows = first_nonreal(FamilyKind.gegenbauer, 24, OUTSIDE_GRID)
    assert (first["n"], first["x"]) == (4, "5/4")
    assert len(rows) == 96
