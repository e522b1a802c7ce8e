"""Certified real root isolation on exact rational polynomials.

Isolating intervals and refinement come from sympy over QQ. Every enclosure is a
half open rational interval (lo, hi] holding exactly one distinct real root of a
square-free polynomial, or a degenerate [v, v] for a rational root v.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cmp_to_key
from typing import List, Optional, Sequence, Tuple

import mpmath

from dualroots.dualroots_lab.config import DualRootsConfig, get_config
from dualroots.dualroots_lab.exceptions import (
    DualRootsDomainException,
    TheoremViolationException,
    ZeroPolynomialException,
)
from dualroots.dualroots_lab.families import (
    FamilyId,
    FamilyKind,
    check_degree,
    family_poly,
    reduced_gegenbauer,
)
from dualroots.dualroots_lab.log import log
from dualroots.dualroots_lab.polycore import (
    RationalLike,
    UniPoly,
    from_sympy_rational,
    squarefree_part,
    sturm_count,
    to_rational,
    to_sympy_rational,
    yun_decomposition,
)
from dualroots.dualroots_lab.reports import Report, fmt_rational
from dualroots.dualroots_lab.workers import parallel_map


def to_decimal(value: Fraction, digits: int) -> str:
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(
            mpmath.mpf(value.numerator) / value.denominator, digits, strip_zeros=False
        )


@dataclass(frozen=True)
class RootEnclosure:
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1
    poly: UniPoly = field(default=None, compare=False, repr=False)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def value(self) -> Optional[Fraction]:
        """The root itself when known exactly"""
        return self.lo if self.exact else None

    def contains(self, value: RationalLike) -> bool:
        value = to_rational(value)
        if self.exact:
            return value == self.lo
        return self.lo < value <= self.hi

    def bisect(self) -> "RootEnclosure":
        """One bisection step, keeping the single root inside"""
        if self.exact:
            return self
        s = self.poly
        hi_sign = s.sign_at(self.hi)
        if hi_sign == 0:
            return replace(self, lo=self.hi)
        mid = self.mid
        mid_sign = s.sign_at(mid)
        if mid_sign == 0:
            return replace(self, lo=mid, hi=mid)
        if mid_sign == hi_sign:
            # no sign change on (mid, hi]
            return replace(self, hi=mid)
        return replace(self, lo=mid)

    def refined(self, tol: RationalLike) -> "RootEnclosure":
        """Narrows to width <= tol with sympy's refine_root, keeping (lo, hi]"""
        tol = to_rational(tol)
        assert tol > 0, ValueError("tol must be positive")
        if self.exact or self.width <= tol:
            return self
        if self.poly.sign_at(self.hi) == 0:
            return replace(self, lo=self.hi)
        enc = self
        # refine_root rejects intervals with 0 inside
        while enc.lo < 0 < enc.hi:
            enc = enc.bisect()
        if enc.exact or enc.width <= tol:
            return enc
        s, t = enc.poly.to_sympy().refine_root(
            to_sympy_rational(enc.lo), to_sympy_rational(enc.hi), eps=to_sympy_rational(tol), check_sqf=True
        )
        lo, hi = from_sympy_rational(s), from_sympy_rational(t)
        for end in (lo, hi):
            if self.poly.sign_at(end) == 0:
                return replace(self, lo=end, hi=end)
        enc = replace(self, lo=lo, hi=hi)
        while enc.width > tol:
            enc = enc.bisect()
        return enc

    def to_float_mp(self) -> mpmath.mpf:
        m = self.mid
        return mpmath.mpf(m.numerator) / m.denominator

    def to_dict(self, digits: int = None) -> dict:
        digits = digits or get_config().decimal_digits
        return {
            "lo": fmt_rational(self.lo),
            "hi": fmt_rational(self.hi),
            "mid": to_decimal(self.mid, digits),
            "width": to_decimal(self.width, 6),
            "exact": self.exact,
            "multiplicity": self.multiplicity,
        }


class RootIsolation:
    """Disjoint ascending enclosures of the distinct real roots of a polynomial"""

    def __init__(self, poly: UniPoly, config: DualRootsConfig = None) -> None:
        if poly.is_zero:
            raise ZeroPolynomialException("Cannot isolate the roots of the zero polynomial")
        self.__poly = poly
        self.__squarefree, self.__profile = squarefree_part(poly)
        self.__factors = yun_decomposition(poly)
        self.__enclosures: List[RootEnclosure] = self.__isolate()
        log.debug(
            f"Isolated {len(self.__enclosures)} real roots of a degree {poly.degree} polynomial"
        )

    # region Properties

    @property
    def poly(self) -> UniPoly:
        return self.__poly

    @property
    def squarefree(self) -> UniPoly:
        return self.__squarefree

    @property
    def profile(self) -> List[Tuple[int, int]]:
        return list(self.__profile)

    @property
    def degree(self) -> int:
        return self.__poly.degree

    @property
    def intervals(self) -> List[RootEnclosure]:
        return list(self.__enclosures)

    @property
    def real_count(self) -> int:
        """Distinct real roots"""
        return len(self.__enclosures)

    @property
    def multiplicities(self) -> List[int]:
        return [e.multiplicity for e in self.__enclosures]

    @property
    def real_multiplicity_count(self) -> int:
        return sum(self.multiplicities)

    @property
    def nonreal_deficit(self) -> int:
        return self.degree - self.real_multiplicity_count

    @property
    def is_real_rooted(self) -> bool:
        return self.nonreal_deficit == 0

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    # endregion

    def __len__(self) -> int:
        return len(self.__enclosures)

    def __getitem__(self, index: int) -> RootEnclosure:
        return self.__enclosures[index]

    def __iter__(self):
        return iter(self.__enclosures)

    def __isolate(self) -> List[RootEnclosure]:
        s = self.__squarefree
        if s.degree < 1:
            return []
        sym = s.to_sympy()
        # linear factors over QQ give the rational roots, which are kept exact
        exact = [
            -from_sympy_rational(f.TC()) / from_sympy_rational(f.LC())
            for f, _ in sym.factor_list()[1]
            if f.degree() == 1
        ]
        found: List[Tuple[Fraction, Fraction]] = []
        for (a, b), _ in sym.intervals():
            lo, hi = from_sympy_rational(a), from_sympy_rational(b)
            hit = next((r for r in exact if lo <= r <= hi), None)
            found.append((hit, hit) if hit is not None else (lo, hi))

        found.sort()
        return [
            RootEnclosure(lo, hi, self.__multiplicity_of(lo, hi), s) for lo, hi in found
        ]

    def __multiplicity_of(self, lo: Fraction, hi: Fraction) -> int:
        for factor, k in self.__factors:
            if lo == hi:
                if factor.sign_at(hi) == 0:
                    return k
            elif sturm_count(factor, lo, hi) > 0:
                return k
        return 1

    def refine(self, index: int, tol: RationalLike) -> RootEnclosure:
        """Narrows the index-th enclosure to width <= tol and keeps it"""
        enc = self.__enclosures[index].refined(tol)
        self.__enclosures[index] = enc
        return enc

    def refine_all(self, tol: RationalLike) -> List[RootEnclosure]:
        return [self.refine(i, tol) for i in range(len(self))]

    def to_dict(self, digits: int = None) -> dict:
        return {
            "degree": self.degree,
            "real_count": self.real_count,
            "nonreal_deficit": self.nonreal_deficit,
            "simple": self.is_simple,
            "roots": [e.to_dict(digits) for e in self.__enclosures],
        }


def isolate(p: UniPoly, config: DualRootsConfig = None) -> RootIsolation:
    return RootIsolation(p, config)


def refine(iso: RootIsolation, index: int, tol: RationalLike) -> RootEnclosure:
    if not 0 <= index < len(iso):
        raise IndexError(f"Root index {index} out of range ({len(iso)} roots)")
    return iso.refine(index, tol)


# region Certified comparisons


def _equal_roots(a: RootEnclosure, b: RootEnclosure) -> bool:
    """True when the two enclosed roots are the same number"""
    if a.exact and b.exact:
        return a.lo == b.lo
    if a.exact or b.exact:
        point, other = (a, b) if a.exact else (b, a)
        return other.contains(point.lo) and other.poly.sign_at(point.lo) == 0
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo >= hi:
        return False
    g = a.poly.gcd(b.poly)
    if g.degree < 1:
        return False
    return sturm_count(g, lo, hi) > 0


def certainly_below(a: RootEnclosure, b: RootEnclosure) -> bool:
    """root(a) < root(b), decided from the enclosures alone"""
    if a.hi < b.lo:
        return True
    if a.hi == b.lo and not b.exact:
        return True
    return a.exact and b.exact and a.lo < b.lo


def compare_roots(
    a: RootEnclosure,
    b: RootEnclosure,
    floor: RationalLike = None,
    config: DualRootsConfig = None,
) -> Tuple[Optional[str], RootEnclosure, RootEnclosure]:
    """Certified order of two enclosed roots.

    Returns:
        ("<" | "=" | ">" | None, refined a, refined b); None when both
        enclosures reached the width floor without separating.
    """
    floor = to_rational(floor) if floor is not None else get_config(config).width_floor
    checked_equal = False
    while True:
        if certainly_below(a, b):
            return "<", a, b
        if certainly_below(b, a):
            return ">", a, b
        if not checked_equal:
            checked_equal = True
            if _equal_roots(a, b):
                return "=", a, b
        if a.width <= floor and b.width <= floor:
            return None, a, b
        if a.width >= b.width:
            a = a.bisect()
        else:
            b = b.bisect()


def sign_at_root(
    h: UniPoly,
    enc: RootEnclosure,
    floor: RationalLike = None,
    config: DualRootsConfig = None,
) -> Tuple[Optional[int], RootEnclosure]:
    """Certified sign of h at the enclosed root (None at the width floor)"""
    floor = to_rational(floor) if floor is not None else get_config(config).width_floor
    if h.is_zero:
        return 0, enc
    if enc.exact:
        return h.sign_at(enc.lo), enc
    g = enc.poly.gcd(h)
    if g.degree >= 1 and sturm_count(g, enc.lo, enc.hi) > 0:
        return 0, enc
    while sturm_count(h, enc.lo, enc.hi) > 0:
        if enc.width <= floor:
            return None, enc
        enc = enc.bisect()
        if enc.exact:
            return h.sign_at(enc.lo), enc
    return h.sign_at(enc.hi), enc


def negated(enc: RootEnclosure) -> RootEnclosure:
    """The enclosure of -root, as a root of p(-z)"""
    if enc.exact:
        return RootEnclosure(-enc.lo, -enc.lo, enc.multiplicity, enc.poly.reflect())
    while not enc.exact and enc.poly.sign_at(enc.lo) == 0:
        enc = enc.bisect()
    if enc.exact:
        return negated(enc)
    return RootEnclosure(-enc.hi, -enc.lo, enc.multiplicity, enc.poly.reflect())


def settle_sign(enc: RootEnclosure) -> RootEnclosure:
    """Refines until the enclosure does not straddle 0"""
    while not enc.exact and enc.lo < 0 < enc.hi:
        if enc.poly.sign_at(0) == 0:
            return replace(enc, lo=Fraction(0), hi=Fraction(0))
        enc = enc.bisect()
    return enc


def modulus(enc: RootEnclosure) -> RootEnclosure:
    """An enclosure of |root|"""
    enc = settle_sign(enc)
    return enc if enc.lo >= 0 else negated(enc)


def positive_roots(iso: RootIsolation) -> List[RootEnclosure]:
    """Enclosures of the strictly positive roots, ascending"""
    rslt = []
    for enc in iso:
        enc = settle_sign(enc)
        if enc.lo > 0 or (enc.lo == 0 and not enc.exact):
            rslt.append(enc)
    return rslt


def zero_multiplicity(p: UniPoly) -> int:
    if p.is_zero:
        raise ZeroPolynomialException("The zero polynomial vanishes to every order")
    rslt = 0
    for c in p.coeffs:
        if c != 0:
            break
        rslt += 1
    return rslt


# endregion

# region Gamma roots


class GammaRoots:
    """The nonconstant z-roots of G_n(x, .), enclosed and ordered"""

    def __init__(
        self,
        n: int,
        x: Fraction,
        values: List[RootEnclosure],
        ordering: str,
        modulus_ties: List[Tuple[int, int]] = None,
        isolation: RootIsolation = None,
    ) -> None:
        self.n = n
        self.x = x
        self.values = values
        self.ordering = ordering
        self.modulus_ties = modulus_ties or []
        self.isolation = isolation

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> RootEnclosure:
        return self.values[index]

    def exact_values(self) -> List[Optional[Fraction]]:
        return [v.value for v in self.values]

    def to_dict(self, digits: int = None) -> dict:
        return {
            "n": self.n,
            "x": fmt_rational(self.x),
            "ordering": self.ordering,
            "modulus_ties": [list(t) for t in self.modulus_ties],
            "gamma": [v.to_dict(digits) for v in self.values],
        }


def _order_by_modulus(
    values: List[RootEnclosure], floor: Fraction
) -> Tuple[List[RootEnclosure], List[Tuple[int, int]]]:
    """Sorts by certified modulus, a tie puts the negative root first"""
    tied = set()

    def compare(a: RootEnclosure, b: RootEnclosure) -> int:
        rel, _, _ = compare_roots(modulus(a), modulus(b), floor)
        if rel == "<":
            return -1
        if rel == ">":
            return 1
        if rel is None:
            log.warning("Unresolved modulus tie between gamma roots, ordered by sign")
        tied.add(frozenset((a, b)))
        return -1 if a.hi <= 0 else 1

    ordered = sorted(values, key=cmp_to_key(compare))
    ties = [
        (i + 1, i + 2)
        for i in range(len(ordered) - 1)
        if frozenset((ordered[i], ordered[i + 1])) in tied
    ]
    return ordered, ties


def gamma_roots(
    n: int,
    x: RationalLike,
    tol: RationalLike = None,
    ordering: str = "modulus",
    config: DualRootsConfig = None,
) -> GammaRoots:
    """Encloses the roots of G̃_n(x, .).

    Args:
        ordering (str): "modulus" for nondecreasing absolute value, "value" for
            decreasing value (the trajectory order).
    """
    config = get_config(config)
    x = to_rational(x)
    check_degree(n, config)
    assert ordering in ("modulus", "value"), ValueError(f"Unknown ordering {ordering!r}")
    if x == 0:
        raise DualRootsDomainException("The gamma roots are defined only for x != 0")
    if n < 2:
        raise DualRootsDomainException("The gamma roots need n >= 2")
    tol = to_rational(tol) if tol is not None else config.theorem_tol

    iso = isolate(reduced_gegenbauer(n).specialize("x", x), config)
    expected = n // 2
    if abs(x) <= 1 and iso.real_multiplicity_count < expected:
        raise TheoremViolationException(
            f"G̃_{n}(x={fmt_rational(x)}, z) has only {iso.real_multiplicity_count}"
            f" real roots, expected {expected}",
            theorem_id="thm-gegenbauerz",
            witness={"n": n, "x": fmt_rational(x), "poly": iso.poly.to_text()},
        )

    values = iso.refine_all(tol)
    ties: List[Tuple[int, int]] = []
    if ordering == "modulus":
        values, ties = _order_by_modulus(values, config.width_floor)
    else:
        values = list(reversed(values))
    return GammaRoots(n, x, values, ordering, ties, iso)


# endregion

# region Deficit scans


def _specialization(f: FamilyId, x0: Fraction, config: DualRootsConfig = None) -> UniPoly:
    return family_poly(f, config).specialize("x", x0)


def in_support(kind: FamilyKind, x0: RationalLike) -> bool:
    """Whether x0 lies on the orthogonality support, [0, inf) or [-1, 1]"""
    kind, x0 = FamilyKind.parse(kind), to_rational(x0)
    if kind == FamilyKind.charlier:
        raise DualRootsDomainException("Charlier polynomials have no x support")
    if kind == FamilyKind.laguerre:
        return x0 >= 0
    return -1 <= x0 <= 1


def deficit_row(task: Tuple[str, int, Fraction]) -> dict:
    kind, n, x0 = task
    p = _specialization(FamilyId(FamilyKind.parse(kind), n), x0)
    row = {
        "family": kind,
        "n": n,
        "x": fmt_rational(x0),
        "degree": p.degree,
        "in_support": in_support(kind, x0),
    }
    if p.is_zero:
        row.update(real_count=0, nonreal_deficit=0, simple=False, zero_polynomial=True)
        return row
    iso = isolate(p)
    row.update(
        real_count=iso.real_count,
        nonreal_deficit=iso.nonreal_deficit,
        simple=iso.is_simple,
        zero_polynomial=False,
    )
    return row


def nonreal_scan(
    f: FamilyId,
    x_grid: Sequence[RationalLike],
    workers: int = None,
    config: DualRootsConfig = None,
) -> Report:
    """Nonreal deficit of the z-specialization at each grid point"""
    if f.kind == FamilyKind.charlier:
        raise DualRootsDomainException("Deficit scans apply to the bivariate families")
    check_degree(f.n, config)
    tasks = [(f.kind.value, f.n, to_rational(x)) for x in x_grid]
    if not tasks:
        raise DualRootsDomainException("Empty x grid")
    rows = parallel_map(deficit_row, tasks, workers, config)
    report = Report(
        theorem_id="nonreal-scan",
        inputs={"family": f.kind.value, "n": f.n, "grid": [fmt_rational(t[2]) for t in tasks]},
    )
    report["rows"] = rows
    for row in rows:
        if row["nonreal_deficit"] > 0:
            report.add_witness(n=row["n"], x=row["x"], nonreal_deficit=row["nonreal_deficit"])
    return report


def first_nonreal(
    kind: FamilyKind,
    n_max: int,
    x_grid: Sequence[RationalLike],
    n_min: int = 1,
    workers: int = None,
    config: DualRootsConfig = None,
) -> Tuple[Optional[dict], List[dict]]:
    """Smallest (n, x) in scan order with a positive deficit, and all rows"""
    kind = FamilyKind.parse(kind)
    check_degree(n_max, config)
    tasks = [
        (kind.value, n, to_rational(x)) for n in range(n_min, n_max + 1) for x in x_grid
    ]
    rows = parallel_map(deficit_row, tasks, workers, config)
    first = next((r for r in rows if r["nonreal_deficit"] > 0), None)
    return first, rows


# endregion
