from fractions import Fraction

import pytest

from dualroots.dualroots_lab.config import DualRootsConfig
from dualroots.dualroots_lab.exceptions import DualRootsDomainException
from dualroots.dualroots_lab.families import (
    FamilyId,
    FamilyKind,
    charlier,
    check_degree,
    constant_root_ledger,
    dz_family,
    family_poly,
    gegenbauer,
    gegenbauer_modified,
    gegenbauer_ode_residue,
    gegenbauer_tilde,
    laguerre,
    laguerre_ode_residue,
    modified_factor_rule,
    modified_identity_residue,
    modified_rule_residue,
    reduced_gegenbauer,
    szego_derivative_residue,
    szego_recurrence_residue,
    szego_shift_residue,
    tilde_derivative_shift_residue,
    tilde_identity_residue,
)
from dualroots.dualroots_lab.polycore import BiPoly, UniPoly

X = BiPoly.variable("x")
Z = BiPoly.variable("z")
HALF = Fraction(1, 2)


def test_laguerre_low_degrees():
    assert laguerre(0) == BiPoly.constant(1)
    assert laguerre(1) == Z + 1 - X
    expected = (X * X).scale(HALF) - (Z + 2) * X + ((Z + 1) * (Z + 2)).scale(HALF)
    assert laguerre(2) == expected


def test_gegenbauer_low_degrees():
    assert gegenbauer(1) == (X * Z).scale(2)
    assert gegenbauer(2) == Z * ((Z + 1) * X * X).scale(2) - Z


def test_gegenbauer_tilde_two():
    decomposition = gegenbauer_tilde(2)
    assert decomposition.constant_roots == (0,)
    assert decomposition.reduced == ((Z + 1) * X * X).scale(2) - 1
    assert decomposition.leading_x_coeff(-1) == 2


def test_gegenbauer_tilde_rejects_zero():
    with pytest.raises(DualRootsDomainException):
        gegenbauer_tilde(0)
    assert reduced_gegenbauer(0) == BiPoly.constant(1)


def test_gegenbauer_modified_low_degrees():
    assert gegenbauer_modified(1) == (Z + HALF) * X
    expected = (Z + Fraction(3, 2)) * (((Z + 1) * X * X).scale(HALF) - Fraction(1, 4))
    assert gegenbauer_modified(2) == expected


def test_modified_factor_rule():
    rule = modified_factor_rule(2)
    assert rule.extra_constant_roots == (Fraction(-3, 2),)
    assert rule.scale == Fraction(1, 4)
    assert rule.apply(gegenbauer_tilde(2)) == gegenbauer_modified(2)


@pytest.mark.parametrize(
    "n, x0, expected",
    [
        (0, 1, UniPoly([1])),
        (1, 1, UniPoly([1, -1])),
        (1, 2, UniPoly([1, Fraction(-1, 2)])),
    ],
)
def test_charlier(n, x0, expected):
    assert charlier(n, x0) == expected


def test_charlier_domain():
    with pytest.raises(DualRootsDomainException):
        charlier(2, 0)
    with pytest.raises(DualRootsDomainException):
        charlier(2, -1)
    with pytest.raises(DualRootsDomainException):
        family_poly(FamilyId("charlier", 2))


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize(
    "residue",
    [
        laguerre_ode_residue,
        gegenbauer_ode_residue,
        szego_derivative_residue,
        szego_recurrence_residue,
        szego_shift_residue,
        tilde_derivative_shift_residue,
        tilde_identity_residue,
        modified_identity_residue,
        modified_rule_residue,
    ],
)
def test_identities_vanish(residue, n):
    assert residue(n).is_zero


@pytest.mark.parametrize("n", range(0, 8))
def test_gegenbauer_parity(n):
    for poly in (gegenbauer(n), gegenbauer_modified(n)):
        assert poly.reflect("x") == poly.scale((-1) ** n)


@pytest.mark.parametrize("n", range(1, 8))
def test_constant_roots_are_roots(n):
    for kind in (FamilyKind.gegenbauer, FamilyKind.gegenbauer_modified):
        poly = family_poly(FamilyId(kind, n))
        for mu in constant_root_ledger(kind, n).p_roots:
            assert poly.specialize("z", mu).is_zero
        for mu in constant_root_ledger(kind, n, "dx").q_roots:
            assert poly.differentiate("x").specialize("z", mu).is_zero


def test_ledger_shared_roots():
    ledger = constant_root_ledger("gegenbauer-modified", 2, "dx")
    assert ledger.shared == (Fraction(-3, 2),)
    assert ledger.only_q == (Fraction(-1),)
    assert ledger.to_dict()["shared"] == ["-3/2"]


def test_dz_family_vanishes_past_degree():
    f = FamilyId(FamilyKind.laguerre, 3)
    assert dz_family(f, 4).is_zero
    assert dz_family(f, 3) == BiPoly.constant(Fraction(1))
    with pytest.raises(DualRootsDomainException):
        dz_family(f, -1)


def test_family_kind_parse():
    assert FamilyKind.parse("Gegenbauer_Modified") == FamilyKind.gegenbauer_modified
    with pytest.raises(DualRootsDomainException):
        FamilyKind.parse("hermite")
    assert str(FamilyId("laguerre", 3)) == "laguerre[3]"
    with pytest.raises(DualRootsDomainException):
        FamilyId("laguerre", -1)


def test_check_degree():
    class SmallConfig(DualRootsConfig):
        max_degree = 4

    class LargeConfig(SmallConfig):
        allow_large_degree = True

    assert check_degree(4, SmallConfig()) == 4
    with pytest.raises(DualRootsDomainException):
        check_degree(5, SmallConfig())
    assert check_degree(5, LargeConfig()) == 5
