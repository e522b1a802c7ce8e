from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualroots.dualroots_lab.exceptions import (
    DualRootsConfigException,
    DualRootsDomainException,
)
from dualroots.dualroots_lab.families import FamilyId, FamilyKind
from dualroots.dualroots_lab.polycore import UniPoly
from dualroots.dualroots_lab.reports import Verdict, to_json
from dualroots.dualroots_lab.veritas import (
    charlier_orthogonality,
    check_interlacing,
    negative_grid,
    paper_tasks,
    run_suite,
    run_theorem,
    support_grid,
    verify_classical_x_interlacing,
    verify_derivative_family,
    verify_dual_interlacing,
    verify_family_identities,
    verify_gamma_chain,
    verify_gamma_initial,
    verify_gegenbauer_z,
    verify_root_monotonicity,
    verify_z_realrootedness,
    laguerre_inequality_check,
)

HALF = Fraction(1, 2)


# region Interlacing


def test_strict_interlacing():
    report = check_interlacing(UniPoly.from_roots([1, 3]), UniPoly.from_roots([2]), "strict")
    assert report.verdict == Verdict.strict_interlace
    assert report.leading == "p"


def test_equal_degree_interlacing_led_by_q():
    report = check_interlacing(UniPoly.from_roots([1, 3]), UniPoly.from_roots([2, 4]), "strict")
    assert report.verdict == Verdict.strict_interlace
    assert report.leading == "q"


def test_shared_root_is_weak():
    p, q = UniPoly.from_roots([0, 2]), UniPoly.from_roots([0])
    assert check_interlacing(p, q, "weak").verdict == Verdict.weak_interlace
    strict = check_interlacing(p, q, "strict")
    assert strict.verdict == Verdict.failed
    assert strict.shared_roots[0]["ledger"] is False


def test_allowed_equality_in_strict_mode():
    p, q = UniPoly.from_roots([0, 2]), UniPoly.from_roots([0])
    report = check_interlacing(p, q, "strict", allowed_equalities=[Fraction(0)])
    assert report.verdict == Verdict.weak_interlace
    assert report.shared_roots[0]["ledger"] is True


def test_interlacing_violation():
    report = check_interlacing(UniPoly.from_roots([1, 2]), UniPoly.from_roots([3]), "weak")
    assert report.verdict == Verdict.failed
    assert report.witnesses


def test_interlacing_preconditions():
    with pytest.raises(DualRootsDomainException):
        check_interlacing(UniPoly.from_roots([1, 2, 3]), UniPoly.from_roots([1]))
    with pytest.raises(DualRootsDomainException, match="q"):
        check_interlacing(UniPoly.from_roots([1, 2]), UniPoly([1, 0, 1]))


@pytest.mark.parametrize(
    "family, n, z0",
    [
        ("laguerre", 4, 0),
        ("laguerre", 5, Fraction(-1, 2)),
        ("gegenbauer", 5, HALF),
        ("gegenbauer", 4, 0),
        ("gegenbauer-modified", 5, 0),
    ],
)
def test_classical_x_interlacing(family, n, z0):
    suite = verify_classical_x_interlacing(FamilyId(family, n), z0)
    assert suite.outcome == Verdict.passed
    assert len(suite.checks) == 2


def test_classical_x_interlacing_domain():
    with pytest.raises(DualRootsDomainException):
        verify_classical_x_interlacing(FamilyId("laguerre", 3), -1)
    with pytest.raises(DualRootsDomainException):
        verify_classical_x_interlacing(FamilyId("gegenbauer", 3), Fraction(-1, 2))


def test_dual_interlacing_degenerate_at_zero():
    suite = verify_dual_interlacing(3, 0)
    assert suite.verdict == Verdict.degenerate_at_zero


def test_dual_interlacing_small_case():
    suite = verify_dual_interlacing(2, HALF)
    assert suite.outcome == Verdict.passed
    dx_modified = [
        c for c in suite.checks if c["inputs"]["family"] == "gegenbauer-modified" and c["inputs"]["pair"] == "dx"
    ][0]
    assert dx_modified["shared_roots"][0]["ledger"] is True
    assert dx_modified["verdict"] == "WeakInterlace"


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("x0", [Fraction(-1), Fraction(-1, 2), Fraction(3, 4), Fraction(1)])
def test_dual_interlacing(n, x0):
    assert verify_dual_interlacing(n, x0).outcome == Verdict.passed


# endregion

# region Monotonicity and derivative families


def test_laguerre_roots_increase():
    suite = verify_root_monotonicity(FamilyId("laguerre", 3), "z", [0, HALF, 1, 2])
    assert suite.outcome == Verdict.passed
    assert {c["verdict"] for c in suite.checks} == {"Increasing"}


def test_modified_positive_roots_decrease():
    suite = verify_root_monotonicity(FamilyId("gegenbauer-modified", 4), "z", [0, HALF, 1], "positive")
    assert suite.outcome == Verdict.passed
    assert {c["verdict"] for c in suite.checks} == {"Decreasing"}


def test_laguerre_derivative_root_moves():
    # d/dz L_2 = 3/2 + z - x, the root is z + 3/2
    suite = verify_root_monotonicity(FamilyId("laguerre", 2), "z", [0, 1], k=1)
    assert suite.theorem_id == "thm-laguerreD"
    assert suite.checks[0]["verdict"] == "Increasing"


def test_gamma_monotonicity():
    grid = negative_grid(5)
    suite = verify_root_monotonicity(FamilyId("gegenbauer", 4), "x", grid, "gamma")
    assert suite.outcome == Verdict.passed
    assert {c["verdict"] for c in suite.checks} == {"Increasing"}


def test_wrong_expected_direction_fails():
    suite = verify_root_monotonicity(
        FamilyId("laguerre", 2), "z", [0, 1], expected=Verdict.decreasing
    )
    assert suite.outcome == Verdict.failed


def test_monotonicity_grid_validation():
    with pytest.raises(DualRootsDomainException):
        verify_root_monotonicity(FamilyId("laguerre", 2), "z", [1, 0])
    with pytest.raises(DualRootsDomainException):
        verify_root_monotonicity(FamilyId("laguerre", 2), "z", [-1, 0])


@pytest.mark.parametrize("n, z0", [(1, 0), (3, 0), (4, 0), (4, 1)])
def test_laguerre_derivative_family(n, z0):
    suite = verify_derivative_family(FamilyId("laguerre", n), z0)
    assert suite.outcome == Verdict.passed


@pytest.mark.parametrize("n, z0", [(2, 0), (3, HALF), (4, 0), (5, 1)])
def test_modified_derivative_family(n, z0):
    suite = verify_derivative_family(FamilyId("gegenbauer-modified", n), z0)
    assert suite.outcome == Verdict.passed
    profile = [c for c in suite.checks if "positive_count" in c]
    assert profile[0]["positive_count"] == n // 2
    assert profile[-1]["zero_multiplicity"] == n


def test_derivative_family_rejects_other_families():
    with pytest.raises(DualRootsDomainException):
        verify_derivative_family(FamilyId("gegenbauer", 3), 1)


# endregion

# region Realrootedness in z


def test_laguerre_z_realrootedness():
    report = verify_z_realrootedness("laguerre", 6, [0, HALF, 2, 5])
    assert report.outcome == Verdict.passed
    with pytest.raises(DualRootsDomainException):
        verify_z_realrootedness("laguerre", 6, [-1])


def test_modified_z_realrootedness():
    report = verify_z_realrootedness("gegenbauer-modified", 5, support_grid(9))
    assert report.outcome == Verdict.passed
    assert all(row["simple"] for row in report["rows"])


def test_gegenbauer_z():
    suite = verify_gegenbauer_z(6, negative_grid(9))
    assert suite.outcome == Verdict.passed


def test_gegenbauer_z_domain():
    with pytest.raises(DualRootsDomainException):
        verify_z_realrootedness("gegenbauer", 4, [0])
    with pytest.raises(DualRootsDomainException):
        verify_z_realrootedness("gegenbauer", 4, [Fraction(5, 4)])


# endregion

# region Inequalities, sums and identities


def test_laguerre_inequality():
    report = laguerre_inequality_check(UniPoly([-1, 0, 1]), [0, 1, 5])
    assert report.outcome == Verdict.passed
    assert [v["value"] for v in report["values"]] == ["-2", "-4", "-52"]


@settings(max_examples=40, deadline=None)
@given(
    st.sets(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=2, max_size=5),
    st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=8), min_size=1, max_size=4),
)
def test_laguerre_inequality_on_distinct_linear_factors(roots, grid):
    report = laguerre_inequality_check(UniPoly.from_roots(sorted(roots)), grid)
    assert report.outcome == Verdict.passed
    assert all(Fraction(v["value"]) < 0 for v in report["values"])


def test_laguerre_inequality_multiple_root():
    report = laguerre_inequality_check(UniPoly.from_roots([1, 1]), [1, 3])
    assert report.outcome == Verdict.passed
    assert report.witnesses[0]["message"].startswith("multiple-root")


def test_laguerre_inequality_needs_real_roots():
    with pytest.raises(DualRootsDomainException):
        laguerre_inequality_check(UniPoly([1, 0, 1]), [0])


def test_charlier_orthonormal_case():
    report = charlier_orthogonality(1, 1, 1, Fraction(1, 10**20))
    assert report.outcome == Verdict.passed
    assert report.target == "1"
    assert abs(mpmath.mpf(report.partial_sum) - 1) < mpmath.mpf("1e-20")


@pytest.mark.parametrize("n, m", [(0, 3), (2, 2), (4, 1), (6, 6)])
@pytest.mark.parametrize("x0", [1, 2, Fraction(5, 2)])
def test_charlier_orthogonality(n, m, x0):
    report = charlier_orthogonality(n, m, x0)
    assert report.outcome == Verdict.passed
    assert report.truncation_N is not None


def test_charlier_orthogonality_domain():
    with pytest.raises(DualRootsDomainException):
        charlier_orthogonality(1, 1, 0)
    with pytest.raises(DualRootsConfigException):
        charlier_orthogonality(1, 1, 1, 0)


def test_family_identities():
    report = verify_family_identities(5)
    assert report.outcome == Verdict.passed
    assert report["identities_checked"] > 0


@pytest.mark.parametrize("n", range(1, 9))
def test_gamma_initial(n):
    assert verify_gamma_initial(n).outcome == Verdict.passed


@pytest.mark.parametrize("n", [3, 4, 5])
def test_gamma_chain(n):
    suite = verify_gamma_chain(n, negative_grid(5))
    assert suite.outcome == Verdict.passed
    previous = [c for c in suite.checks if c["inputs"]["x"] == "-1" and c["inputs"]["pair"] == "previous"]
    assert previous[0]["verdict"] == "WeakInterlace"
    inside = [c for c in suite.checks if c["inputs"]["x"] != "-1"]
    assert {c["verdict"] for c in inside} == {"StrictInterlace"}


# endregion

# region Dispatch


def test_run_theorem_examples():
    assert run_theorem("thm-laguerreD", n=4, z=0).outcome == Verdict.passed
    report = run_theorem("thm-charlier-orth", n=1, m=1, x0=1, tol="1e-20")
    assert report.outcome == Verdict.passed
    grid = [Fraction(-8 + j, 8) for j in range(8)]
    assert run_theorem("thm-gegenbauerz", n=6, grid=grid).outcome == Verdict.passed


def test_run_theorem_errors():
    with pytest.raises(DualRootsConfigException):
        run_theorem("thm-unknown", n=2)
    with pytest.raises(DualRootsConfigException):
        run_theorem("thm-monoroots")
    with pytest.raises(DualRootsDomainException):
        run_theorem("thm-laguerreD", n=3, z=-1)


def test_degenerate_dual_interlacing_through_dispatch():
    suite = run_theorem("thm-dualinterlG", n=3, x0=0)
    assert suite["checks"][0]["verdict"] == "DegenerateAtZero"
    assert suite.outcome == Verdict.passed


def test_reports_serialize():
    text = to_json(run_theorem("def-gtilde", n=4))
    assert '"schema": 1' in text
    assert '"theorem_id": "def-gtilde"' in text


def test_paper_tasks_are_deterministic():
    tasks = paper_tasks(3)
    assert tasks == paper_tasks(3)
    assert tasks[0][0] == "def-family"
    assert {t for t, _ in tasks} >= {"thm-laguerreD", "thm-charlier-orth", "lem-ode-roots"}


def test_derivative_family_raise_on_fail_passes_quietly():
    # a passing profile never raises
    suite = verify_derivative_family(FamilyId(FamilyKind.laguerre, 2), 0, raise_on_fail=True)
    assert suite.outcome == Verdict.passed


# endregion

# region Suite


@pytest.fixture(scope="module")
def serial_suite():
    return run_suite("paper", workers=1, n_max=4)


@pytest.mark.parametrize("workers", [1, 3])
def test_suite_output_does_not_depend_on_workers(serial_suite, workers):
    suite = run_suite("paper", workers=workers, n_max=4)
    assert suite.outcome == Verdict.passed
    assert suite["counts"]["Fail"] == 0
    assert suite["counts"]["Inconclusive"] == 0
    assert to_json(suite) == to_json(serial_suite)


def test_unknown_suite():
    with pytest.raises(DualRootsConfigException):
        run_suite("nightly", n_max=2)


# endregion

# region Acceptance bounds


@pytest.mark.scale
def test_family_identities_to_eight():
    assert verify_family_identities(8).outcome == Verdict.passed


@pytest.mark.scale
@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize(
    "kind, grid",
    [
        ("laguerre", [0, HALF, 2, 5]),
        ("gegenbauer", support_grid(9)),
        ("gegenbauer-modified", support_grid(9)),
    ],
)
def test_z_realrootedness_to_twelve(kind, grid, n):
    assert verify_z_realrootedness(kind, n, grid).outcome == Verdict.passed


@pytest.mark.scale
@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("x0", [Fraction(-1), Fraction(-1, 2), Fraction(3, 4), Fraction(1)])
def test_dual_interlacing_to_ten(n, x0):
    assert verify_dual_interlacing(n, x0).outcome == Verdict.passed


@pytest.mark.scale
@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize(
    "family, z0",
    [
        ("laguerre", 0),
        ("laguerre", 1),
        ("gegenbauer-modified", 0),
        ("gegenbauer-modified", HALF),
        ("gegenbauer-modified", 1),
    ],
)
def test_derivative_families_to_eight(family, z0, n):
    assert verify_derivative_family(FamilyId(family, n), z0).outcome == Verdict.passed


# endregion
