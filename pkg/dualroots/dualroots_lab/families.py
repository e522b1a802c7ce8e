import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Tuple, Union

from dualroots.dualroots_lab.config import DualRootsConfig, get_config
from dualroots.dualroots_lab.exceptions import DualRootsDomainException
from dualroots.dualroots_lab.log import log
from dualroots.dualroots_lab.polycore import BiPoly, RationalLike, UniPoly, to_rational


class FamilyKind(enum.Enum):
    laguerre = "laguerre"
    gegenbauer = "gegenbauer"
    gegenbauer_modified = "gegenbauer-modified"
    gegenbauer_tilde = "gegenbauer-tilde"
    charlier = "charlier"

    @classmethod
    def parse(cls, value: Union[str, "FamilyKind"]) -> "FamilyKind":
        if isinstance(value, FamilyKind):
            return value
        try:
            return cls(str(value).strip().lower().replace("_", "-"))
        except ValueError as ex:
            names = ", ".join(k.value for k in cls)
            raise DualRootsDomainException(
                f"Unknown family {value!r}, expected one of: {names}"
            ) from ex


@dataclass(frozen=True)
class FamilyId:
    kind: FamilyKind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", FamilyKind.parse(self.kind))
        if not isinstance(self.n, int) or self.n < 0:
            raise DualRootsDomainException(f"Degree index must be >= 0, got {self.n!r}")

    def __str__(self) -> str:
        return f"{self.kind.value}[{self.n}]"


@dataclass(frozen=True)
class TildeDecomposition:
    """G_n(x, z) = prod(z - mu_j) * reduced(x, z), mu_j = -j for j < ceil(n/2)"""

    n: int
    constant_roots: Tuple[Fraction, ...]
    reduced: BiPoly = field(repr=False)

    @property
    def divisor(self) -> UniPoly:
        return UniPoly.from_roots(self.constant_roots, "z")

    def leading_x_coeff(self, x: RationalLike) -> Fraction:
        """The coefficient of the top z power of the reduced polynomial, (2x)^n/n!"""
        return (2 * to_rational(x)) ** self.n / factorial(self.n)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "constant_roots": [_fmt(r) for r in self.constant_roots],
            "reduced": self.reduced.to_text(),
            "leading_x_coeff_rule": f"(2x)^{self.n}/{factorial(self.n)}",
        }


@dataclass(frozen=True)
class ModifiedFactorRule:
    """Ĝ_n = scale * prod(z - extra_constant_roots) * G̃_n"""

    n: int
    extra_constant_roots: Tuple[Fraction, ...]
    scale: Fraction

    @property
    def factor(self) -> UniPoly:
        return UniPoly.from_roots(self.extra_constant_roots, "z", self.scale)

    def apply(self, tilde: TildeDecomposition) -> BiPoly:
        assert tilde.n == self.n, ValueError("Degree mismatch between rule and decomposition")
        return tilde.reduced * self.factor


@dataclass(frozen=True)
class ConstantRootLedger:
    """Constant z-roots of a pair of family polynomials, as exact rationals"""

    p_roots: Tuple[Fraction, ...]
    q_roots: Tuple[Fraction, ...]

    @property
    def shared(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(set(self.p_roots) & set(self.q_roots)))

    @property
    def only_p(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(set(self.p_roots) - set(self.q_roots)))

    @property
    def only_q(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(set(self.q_roots) - set(self.p_roots)))

    def to_dict(self) -> dict:
        return {
            "shared": [_fmt(r) for r in self.shared],
            "only_p": [_fmt(r) for r in self.only_p],
            "only_q": [_fmt(r) for r in self.only_q],
        }


def _fmt(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _ceil_half(n: int) -> int:
    return n - n // 2


def _shifted_product(start: int, stop: int, offset: Fraction = Fraction(0)) -> UniPoly:
    """prod_{i=start}^{stop} (z + offset + i), empty product is 1"""
    rslt = UniPoly.constant(1, "z")
    for i in range(start, stop + 1):
        rslt = rslt * UniPoly((offset + i, 1), "z")
    return rslt


def check_degree(n: int, config: DualRootsConfig = None) -> int:
    config = get_config(config)
    if not isinstance(n, int) or n < 0:
        raise DualRootsDomainException(f"Degree index must be a non negative integer, got {n!r}")
    if n > config.max_degree:
        if not config.allow_large_degree:
            raise DualRootsDomainException(
                f"Degree {n} is above the supported maximum {config.max_degree}"
                " (enable allow_large_degree to override)"
            )
        log.warning(f"Degree {n} is above the supported maximum {config.max_degree}")
    return n


# region Cached constructors


@lru_cache(maxsize=None)
def _laguerre(n: int) -> BiPoly:
    coeffs: Dict[int, UniPoly] = {}
    for k in range(n + 1):
        scale = Fraction((-1) ** k, factorial(k) * factorial(n - k))
        coeffs[k] = _shifted_product(k + 1, n).scale(scale)
    log.debug(f"Constructed Laguerre polynomial of degree {n}")
    return BiPoly.from_coefficients("x", coeffs)


@lru_cache(maxsize=None)
def _gegenbauer(n: int) -> BiPoly:
    coeffs: Dict[int, UniPoly] = {}
    for k in range(n // 2 + 1):
        scale = Fraction((-1) ** k * 2 ** (n - 2 * k), factorial(k) * factorial(n - 2 * k))
        coeffs[n - 2 * k] = _shifted_product(0, n - k - 1).scale(scale)
    log.debug(f"Constructed Gegenbauer polynomial of degree {n}")
    return BiPoly.from_coefficients("x", coeffs)


@lru_cache(maxsize=None)
def _gegenbauer_modified(n: int) -> BiPoly:
    h = n // 2
    half = Fraction(1, 2)
    tail = _shifted_product(h, n - 1, half)
    coeffs: Dict[int, UniPoly] = {}
    for k in range(h + 1):
        scale = Fraction((-1) ** k, factorial(k) * factorial(n - 2 * k) * 4**k)
        coeffs[n - 2 * k] = (_shifted_product(n - h, n - k - 1) * tail).scale(scale)
    log.debug(f"Constructed modified Gegenbauer polynomial of degree {n}")
    return BiPoly.from_coefficients("x", coeffs)


@lru_cache(maxsize=None)
def _gegenbauer_tilde(n: int) -> TildeDecomposition:
    roots = tuple(Fraction(-j) for j in range(_ceil_half(n)))
    reduced = _gegenbauer(n).divide_by(UniPoly.from_roots(roots, "z"))
    return TildeDecomposition(n=n, constant_roots=roots, reduced=reduced)


# endregion

# region Public constructors


def laguerre(n: int, config: DualRootsConfig = None) -> BiPoly:
    """L_n(x, z), the generalized Laguerre polynomial with parameter z"""
    return _laguerre(check_degree(n, config))


def gegenbauer(n: int, config: DualRootsConfig = None) -> BiPoly:
    """G_n(x, z), the Gegenbauer polynomial with parameter z"""
    return _gegenbauer(check_degree(n, config))


def gegenbauer_modified(n: int, config: DualRootsConfig = None) -> BiPoly:
    """Ĝ_n(x, z), the equal-parameter Jacobi rescaling of G_n"""
    return _gegenbauer_modified(check_degree(n, config))


def gegenbauer_tilde(n: int, config: DualRootsConfig = None) -> TildeDecomposition:
    """G_n divided by its ceil(n/2) constant z-roots 0, -1, ..."""
    check_degree(n, config)
    if n < 1:
        raise DualRootsDomainException("The reduced Gegenbauer family starts at n = 1")
    return _gegenbauer_tilde(n)


def reduced_gegenbauer(n: int) -> BiPoly:
    """G̃_n as a bivariate polynomial, with G̃_0 = 1"""
    return _gegenbauer_tilde(n).reduced


def modified_factor_rule(n: int) -> ModifiedFactorRule:
    h = n // 2
    return ModifiedFactorRule(
        n=n,
        extra_constant_roots=tuple(Fraction(-1, 2) - i for i in range(h, n)),
        scale=Fraction(1, 2**n),
    )


def charlier(n: int, x0: RationalLike, config: DualRootsConfig = None) -> UniPoly:
    """C_n(z) = (-1)^n n!/x0^n * L_n(x0, z - n)"""
    x0 = to_rational(x0)
    if x0 <= 0:
        raise DualRootsDomainException(f"Charlier polynomials need x0 > 0, got {x0}")
    check_degree(n, config)
    shifted = _laguerre(n).specialize("x", x0).compose_shift(-n)
    return shifted.scale(Fraction((-1) ** n * factorial(n)) / x0**n)


def family_poly(f: FamilyId, config: DualRootsConfig = None) -> BiPoly:
    if f.kind == FamilyKind.laguerre:
        return laguerre(f.n, config)
    if f.kind == FamilyKind.gegenbauer:
        return gegenbauer(f.n, config)
    if f.kind == FamilyKind.gegenbauer_modified:
        return gegenbauer_modified(f.n, config)
    if f.kind == FamilyKind.gegenbauer_tilde:
        return gegenbauer_tilde(f.n, config).reduced
    raise DualRootsDomainException(
        "Charlier polynomials are univariate and need x0, use charlier(n, x0)"
    )


def dz_family(f: FamilyId, k: int, config: DualRootsConfig = None) -> BiPoly:
    """The k-th z derivative of the family polynomial (zero when k > n)"""
    if k < 0:
        raise DualRootsDomainException(f"Derivative order must be >= 0, got {k}")
    return family_poly(f, config).differentiate("z", k)


# endregion

# region Identity residues (exact zero when the identity holds)

X = BiPoly.variable("x")
Z = BiPoly.variable("z")


def laguerre_ode_residue(n: int) -> BiPoly:
    p = _laguerre(n)
    return (
        X * p.differentiate("x", 2)
        + (Z + 1 - X) * p.differentiate("x")
        + p.scale(n)
    )


def gegenbauer_ode_residue(n: int) -> BiPoly:
    p = _gegenbauer(n)
    return (
        (1 - X * X) * p.differentiate("x", 2)
        - (Z.scale(2) + 1) * X * p.differentiate("x")
        + (Z.scale(2) + n) * p.scale(n)
    )


def szego_derivative_residue(n: int) -> BiPoly:
    """(1-x^2) dG_n/dx + n x G_n - (n+2z-1) G_{n-1}, for n >= 1"""
    assert n >= 1, ValueError("n must be >= 1")
    g = _gegenbauer(n)
    return (
        (1 - X * X) * g.differentiate("x")
        + X * g.scale(n)
        - (Z.scale(2) + (n - 1)) * _gegenbauer(n - 1)
    )


def szego_recurrence_residue(n: int) -> BiPoly:
    """(n+1) G_{n+1} - 2(n+z) x G_n + (n+2z-1) G_{n-1}, for n >= 1"""
    assert n >= 1, ValueError("n must be >= 1")
    return (
        _gegenbauer(n + 1).scale(n + 1)
        - (Z + n).scale(2) * X * _gegenbauer(n)
        + (Z.scale(2) + (n - 1)) * _gegenbauer(n - 1)
    )


def szego_shift_residue(n: int) -> BiPoly:
    """dG_n/dx - 2z G_{n-1}(x, z+1), for n >= 1"""
    assert n >= 1, ValueError("n must be >= 1")
    return _gegenbauer(n).differentiate("x") - Z.scale(2) * _gegenbauer(n - 1).shift("z", 1)


def tilde_shift_factor(n: int) -> BiPoly:
    """z + n/2 for even n, 1 for odd n"""
    return Z + Fraction(n, 2) if n % 2 == 0 else BiPoly.constant(1)


def tilde_derivative_shift_residue(n: int) -> BiPoly:
    """dG̃_n/dx - 2 beta(z) G̃_{n-1}(x, z+1), for n >= 1"""
    assert n >= 1, ValueError("n must be >= 1")
    return reduced_gegenbauer(n).differentiate("x") - tilde_shift_factor(n).scale(
        2
    ) * reduced_gegenbauer(n - 1).shift("z", 1)


def tilde_identity_residue(n: int) -> BiPoly:
    decomposition = _gegenbauer_tilde(n)
    return decomposition.reduced * decomposition.divisor - _gegenbauer(n)


def modified_identity_residue(n: int) -> BiPoly:
    """Ĝ_n * 2^n prod(z + i/2) - prod(z + 1/2 + i) * G_n, i < n"""
    lhs_factor = UniPoly.constant(2**n, "z")
    rhs_factor = UniPoly.constant(1, "z")
    for i in range(n):
        lhs_factor = lhs_factor * UniPoly((Fraction(i, 2), 1), "z")
        rhs_factor = rhs_factor * UniPoly((Fraction(1, 2) + i, 1), "z")
    return _gegenbauer_modified(n) * lhs_factor - _gegenbauer(n) * rhs_factor


def modified_rule_residue(n: int) -> BiPoly:
    return modified_factor_rule(n).apply(_gegenbauer_tilde(n)) - _gegenbauer_modified(n)


# endregion

# region Constant root ledger


def constant_roots(kind: FamilyKind, n: int) -> Tuple[Fraction, ...]:
    """The z-roots shared by every x specialization of the family polynomial"""
    kind = FamilyKind.parse(kind)
    if kind == FamilyKind.gegenbauer:
        return tuple(Fraction(-j) for j in range(_ceil_half(n)))
    if kind == FamilyKind.gegenbauer_modified:
        return modified_factor_rule(n).extra_constant_roots
    return ()


def dx_constant_roots(kind: FamilyKind, n: int) -> Tuple[Fraction, ...]:
    """Constant z-roots of the x derivative of the family polynomial"""
    kind = FamilyKind.parse(kind)
    if n < 1:
        return ()
    if kind == FamilyKind.gegenbauer:
        # dG_n/dx = 2z G_{n-1}(x, z+1)
        return (Fraction(0),) + tuple(Fraction(-1 - j) for j in range(_ceil_half(n - 1)))
    if kind == FamilyKind.gegenbauer_modified:
        extra = (Fraction(-n, 2),) if n % 2 == 0 else ()
        return constant_roots(kind, n) + extra
    return ()


def constant_root_ledger(kind: FamilyKind, n: int, partner: str = "previous") -> ConstantRootLedger:
    """Ledger for P_n against P_{n-1} (partner="previous") or dP_n/dx (partner="dx")"""
    assert partner in ("previous", "dx"), ValueError(f"Unknown partner {partner!r}")
    q_roots = constant_roots(kind, n - 1) if partner == "previous" else dx_constant_roots(kind, n)
    return ConstantRootLedger(p_roots=constant_roots(kind, n), q_roots=q_roots)


# endregion
