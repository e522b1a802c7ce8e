"""Exact rational polynomials in one and two variables.

Coefficients are ``fractions.Fraction`` everywhere. ``UniPoly`` is dense (index
i holds the coefficient of the i-th power) and tagged with its variable,
``BiPoly`` is a sparse grid keyed by (x-power, z-power). Both are immutable:
every operation returns a new value.
"""
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import mpmath
import sympy

from dualroots.dualroots_lab.exceptions import (
    DualRootsConfigException,
    InexactDivisionException,
    ZeroPolynomialException,
)

Rational = Fraction
RationalLike = Union[int, Fraction, str]

VARIABLES = ("x", "z")


def parse_rational(text: str) -> Fraction:
    """Parses "p/q", integers and finite decimals (exponents allowed) exactly"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as ex:
        raise DualRootsConfigException(f"Invalid rational value: {text!r}") from ex


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DualRootsConfigException("Booleans are not rational values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DualRootsConfigException(
        f"Cannot convert {value!r} exactly to a rational (binary floats are rejected)"
    )


def to_sympy_rational(value: RationalLike) -> sympy.Rational:
    value = to_rational(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy_rational(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _other(var: str) -> str:
    assert var in VARIABLES, ValueError(f"Unknown variable tag {var!r}")
    return "z" if var == "x" else "x"


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class UniPoly:
    """A dense univariate polynomial with exact rational coefficients"""

    def __init__(self, coeffs: Iterable[RationalLike] = (), var: str = "z") -> None:
        assert var in VARIABLES, ValueError(f"Unknown variable tag {var!r}")
        values = [to_rational(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self.__coeffs: Tuple[Fraction, ...] = tuple(values)
        self.__var = var
        self.__int_coeffs: Tuple[int, ...] = None

    # region Construction

    @classmethod
    def zero(cls, var: str = "z") -> "UniPoly":
        return cls((), var)

    @classmethod
    def constant(cls, value: RationalLike, var: str = "z") -> "UniPoly":
        return cls((value,), var)

    @classmethod
    def monomial(cls, value: RationalLike, power: int, var: str = "z") -> "UniPoly":
        assert power >= 0, ValueError("power must be non negative")
        return cls([0] * power + [value], var)

    @classmethod
    def variable(cls, var: str = "z") -> "UniPoly":
        return cls((0, 1), var)

    @classmethod
    def from_roots(
        cls,
        roots: Iterable[RationalLike],
        var: str = "z",
        leading: RationalLike = 1,
    ) -> "UniPoly":
        """Returns leading * prod(var - r)"""
        rslt = cls.constant(leading, var)
        for r in roots:
            rslt = rslt * cls((-to_rational(r), 1), var)
        return rslt

    # endregion

    # region Properties

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self.__coeffs

    @property
    def var(self) -> str:
        return self.__var

    @property
    def degree(self) -> int:
        """The degree, -1 for the zero polynomial"""
        return len(self.__coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.__coeffs) == 0

    @property
    def is_constant(self) -> bool:
        return len(self.__coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.__coeffs[-1] if self.__coeffs else Fraction(0)

    @property
    def integer_coeffs(self) -> Tuple[int, ...]:
        """Integer coefficients of a positive multiple of the polynomial"""
        if self.__int_coeffs is None:
            if self.is_zero:
                self.__int_coeffs = ()
            else:
                den = lcm(*[c.denominator for c in self.__coeffs])
                ints = [int(c * den) for c in self.__coeffs]
                content = gcd(*ints)
                self.__int_coeffs = tuple(v // content for v in ints)
        return self.__int_coeffs

    # endregion

    # region Ring operations

    def __check_var(self, other: "UniPoly"):
        assert (
            other.var == self.var or other.is_constant or self.is_constant
        ), ValueError(
            f"Polynomials in different variables ({self.var}, {other.var})"
        )
        return self.var if not self.is_constant else other.var

    def __add__(self, other: Union["UniPoly", RationalLike]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(to_rational(other), self.var)
        var = self.__check_var(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (size - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (size - len(other.coeffs))
        return UniPoly([u + v for u, v in zip(a, b)], var)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other: Union["UniPoly", RationalLike]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(to_rational(other), self.var)
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other: Union["UniPoly", RationalLike]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self.scale(other)
        var = self.__check_var(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(var)
        rslt = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                rslt[i + j] += a * b
        return UniPoly(rslt, var)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "UniPoly":
        assert power >= 0, ValueError("power must be non negative")
        rslt = UniPoly.constant(1, self.var)
        for _ in range(power):
            rslt = rslt * self
        return rslt

    def scale(self, value: RationalLike) -> "UniPoly":
        value = to_rational(value)
        return UniPoly([c * value for c in self.coeffs], self.var)

    def __divmod__(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("Polynomial division by the zero polynomial")
        var = self.__check_var(other)
        quot, rem = self.to_sympy(var).div(other.to_sympy(var))
        return UniPoly.from_sympy(quot, var), UniPoly.from_sympy(rem, var)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        quot, rem = divmod(self, other)
        if not rem.is_zero:
            raise InexactDivisionException(
                f"Division of {self.to_text()} by {other.to_text()} is not exact"
            )
        return quot

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic greatest common divisor (zero if both are zero)"""
        var = self.__check_var(other)
        return UniPoly.from_sympy(self.to_sympy(var).gcd(other.to_sympy(var)), var).monic()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other, self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_constant and other.is_constant:
            return self.coeffs == other.coeffs
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.var if not self.is_constant else "", self.coeffs))

    # endregion

    # region Calculus and evaluation

    def derivative(self, k: int = 1) -> "UniPoly":
        assert k >= 0, ValueError("derivative order must be non negative")
        coeffs = list(self.coeffs)
        for _ in range(k):
            coeffs = [i * c for i, c in enumerate(coeffs)][1:]
        return UniPoly(coeffs, self.var)

    def __call__(self, value: RationalLike) -> Fraction:
        value = to_rational(value)
        rslt = Fraction(0)
        for c in reversed(self.coeffs):
            rslt = rslt * value + c
        return rslt

    def sign_at(self, value: RationalLike) -> int:
        """Exact sign at a rational point, by homogeneous integer evaluation"""
        if self.is_zero:
            return 0
        value = to_rational(value)
        num, den = value.numerator, value.denominator
        # den^n * p(num/den), evaluated in integers
        rslt = 0
        power = 1
        for c in reversed(self.integer_coeffs):
            rslt = rslt * num + c * power
            power *= den
        return (rslt > 0) - (rslt < 0)

    def evaluate_mp(self, value) -> mpmath.mpf:
        """Evaluates with mpmath at the current working precision"""
        rslt = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            rslt = rslt * value + mpmath.mpf(c.numerator) / c.denominator
        return rslt

    def compose_shift(self, shift: RationalLike) -> "UniPoly":
        """Returns p(var + shift), re-expanded exactly"""
        step = UniPoly((to_rational(shift), 1), self.var)
        rslt = UniPoly.zero(self.var)
        for c in reversed(self.coeffs):
            rslt = rslt * step + c
        return rslt

    def reflect(self) -> "UniPoly":
        """Returns p(-var)"""
        return UniPoly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.var)

    # endregion

    # region sympy

    def to_sympy(self, var: str = None) -> sympy.Poly:
        """The same polynomial as a sympy Poly over QQ"""
        coeffs = [to_sympy_rational(c) for c in reversed(self.coeffs)]
        return sympy.Poly(coeffs or [0], sympy.Symbol(var or self.var), domain=sympy.QQ)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly, var: str = None) -> "UniPoly":
        return cls([from_sympy_rational(c) for c in reversed(poly.all_coeffs())], var or str(poly.gen))

    # endregion

    def to_text(self) -> str:
        """Debug text form c0 + c1*z + c2*z^2 with exact fractions"""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            coeff = _format_coefficient(c)
            if i == 0:
                terms.append(coeff)
            elif i == 1:
                terms.append(f"{coeff}*{self.var}")
            else:
                terms.append(f"{coeff}*{self.var}^{i}")
        return " + ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"UniPoly({self.to_text()})"


class BiPoly:
    """A sparse bivariate polynomial in (x, z), keyed by (x-power, z-power)"""

    def __init__(self, terms: Mapping[Tuple[int, int], RationalLike] = None) -> None:
        clean: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in (terms or {}).items():
            assert i >= 0 and j >= 0, ValueError("powers must be non negative")
            c = to_rational(c)
            if c != 0:
                clean[(i, j)] = c
        self.__terms = clean
        self.__key = frozenset(clean.items())

    # region Construction

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def constant(cls, value: RationalLike) -> "BiPoly":
        return cls({(0, 0): value})

    @classmethod
    def variable(cls, var: str) -> "BiPoly":
        assert var in VARIABLES, ValueError(f"Unknown variable tag {var!r}")
        return cls({(1, 0): 1} if var == "x" else {(0, 1): 1})

    @classmethod
    def from_uni(cls, p: UniPoly) -> "BiPoly":
        if p.var == "x":
            return cls({(i, 0): c for i, c in enumerate(p.coeffs)})
        return cls({(0, j): c for j, c in enumerate(p.coeffs)})

    @classmethod
    def from_coefficients(cls, var: str, coefficients: Mapping[int, UniPoly]) -> "BiPoly":
        """Builds sum(coefficients[k] * var^k), coefficients in the other variable"""
        _other(var)
        terms: Dict[Tuple[int, int], Fraction] = {}
        for power, poly in coefficients.items():
            for j, c in enumerate(poly.coeffs):
                key = (power, j) if var == "x" else (j, power)
                terms[key] = terms.get(key, Fraction(0)) + c
        return cls(terms)

    # endregion

    # region Properties

    @property
    def terms(self) -> Mapping[Tuple[int, int], Fraction]:
        return MappingProxyType(self.__terms)

    @property
    def is_zero(self) -> bool:
        return len(self.__terms) == 0

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.__terms), default=-1)

    @property
    def degree_z(self) -> int:
        return max((j for _, j in self.__terms), default=-1)

    def degree(self, var: str) -> int:
        _other(var)
        return self.degree_x if var == "x" else self.degree_z

    # endregion

    # region Ring operations

    def __add__(self, other: Union["BiPoly", RationalLike]) -> "BiPoly":
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(to_rational(other))
        terms = dict(self.__terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return BiPoly(terms)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.__terms.items()})

    def __sub__(self, other: Union["BiPoly", RationalLike]) -> "BiPoly":
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(to_rational(other))
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other: Union["BiPoly", UniPoly, RationalLike]) -> "BiPoly":
        if isinstance(other, UniPoly):
            other = BiPoly.from_uni(other)
        if not isinstance(other, BiPoly):
            return self.scale(other)
        terms: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.__terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                terms[key] = terms.get(key, Fraction(0)) + a * b
        return BiPoly(terms)

    __rmul__ = __mul__

    def scale(self, value: RationalLike) -> "BiPoly":
        value = to_rational(value)
        return BiPoly({k: c * value for k, c in self.__terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.__key == other.__key

    def __hash__(self) -> int:
        return hash(self.__key)

    # endregion

    # region Calculus, specialization and substitution

    def differentiate(self, var: str, k: int = 1) -> "BiPoly":
        """The exact k-th formal partial derivative in var"""
        assert var in VARIABLES, ValueError(f"Unknown variable tag {var!r}")
        assert k >= 0, ValueError("derivative order must be non negative")
        terms: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in self.__terms.items():
            power = i if var == "x" else j
            if power < k:
                continue
            factor = 1
            for m in range(power - k + 1, power + 1):
                factor *= m
            key = (i - k, j) if var == "x" else (i, j - k)
            terms[key] = c * factor
        return BiPoly(terms)

    def coefficient(self, var: str, power: int) -> UniPoly:
        """The coefficient of var^power, a polynomial in the other variable"""
        other = _other(var)
        coeffs: Dict[int, Fraction] = {}
        for (i, j), c in self.__terms.items():
            p, q = (i, j) if var == "x" else (j, i)
            if p == power:
                coeffs[q] = c
        size = max(coeffs, default=-1) + 1
        return UniPoly([coeffs.get(q, 0) for q in range(size)], other)

    def coefficients(self, var: str) -> Dict[int, UniPoly]:
        return {
            p: self.coefficient(var, p)
            for p in sorted({k[0] if var == "x" else k[1] for k in self.__terms})
        }

    def specialize(self, var: str, value: RationalLike) -> UniPoly:
        """Substitutes var = value, returning a polynomial in the other variable"""
        other = _other(var)
        value = to_rational(value)
        coeffs: Dict[int, Fraction] = {}
        powers: Dict[int, Fraction] = {}
        for (i, j), c in self.__terms.items():
            p, q = (i, j) if var == "x" else (j, i)
            if p not in powers:
                powers[p] = value**p
            coeffs[q] = coeffs.get(q, Fraction(0)) + c * powers[p]
        size = max(coeffs, default=-1) + 1
        return UniPoly([coeffs.get(q, 0) for q in range(size)], other)

    def evaluate(self, x: RationalLike, z: RationalLike) -> Fraction:
        return self.specialize("x", x)(z)

    def shift(self, var: str, value: RationalLike) -> "BiPoly":
        """Returns the composition var -> var + value"""
        other = _other(var)
        rslt: Dict[int, UniPoly] = {}
        for power, poly in self.coefficients(other).items():
            rslt[power] = poly.compose_shift(value)
        return BiPoly.from_coefficients(other, rslt)

    def reflect(self, var: str) -> "BiPoly":
        """Returns the composition var -> -var"""
        _other(var)
        return BiPoly(
            {
                (i, j): c * (-1) ** (i if var == "x" else j)
                for (i, j), c in self.__terms.items()
            }
        )

    def divide_by(self, divisor: UniPoly) -> "BiPoly":
        """Exact division by a univariate polynomial (in either variable)"""
        var = divisor.var
        other = _other(var)
        rslt: Dict[int, UniPoly] = {}
        for power, poly in self.coefficients(other).items():
            quot, rem = divmod(UniPoly(poly.coeffs, var), divisor)
            if not rem.is_zero:
                raise InexactDivisionException(
                    f"Division by {divisor.to_text()} is not exact "
                    f"(coefficient of {other}^{power})"
                )
            rslt[power] = quot
        return BiPoly.from_coefficients(other, rslt)

    def parities(self, var: str) -> set:
        _other(var)
        return {(i if var == "x" else j) % 2 for i, j in self.__terms}

    # endregion

    def to_text(self) -> str:
        """Groups by powers of x, coefficients written as z polynomials"""
        if self.is_zero:
            return "0"
        parts = []
        for power, poly in sorted(self.coefficients("x").items()):
            coeff = f"({poly.to_text()})"
            if power == 0:
                parts.append(coeff)
            elif power == 1:
                parts.append(f"{coeff}*x")
            else:
                parts.append(f"{coeff}*x^{power}")
        return " + ".join(parts)

    def to_json(self) -> List[List]:
        return [
            [i, j, _format_coefficient(c)] for (i, j), c in sorted(self.__terms.items())
        ]

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"BiPoly({self.to_text()})"


def ring_ops(a, b, op: str = "add"):
    """Dispatches the total ring operations on uni/bivariate operands"""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"Unknown ring operation {op!r}")


def differentiate(p: BiPoly, variable: str, k: int = 1) -> BiPoly:
    return p.differentiate(variable, k)


def specialize(p: BiPoly, variable: str, value: RationalLike) -> UniPoly:
    return p.specialize(variable, value)


class SturmSequence:
    """The sympy Sturm chain over QQ of the square-free part of p.

    The chain is built on the square-free part so that counts stay correct at
    multiple roots sitting on interval endpoints.
    """

    def __init__(self, p: UniPoly) -> None:
        if p.is_zero:
            raise ZeroPolynomialException("The zero polynomial has no Sturm sequence")
        if p.is_constant:
            chain = [p]
        else:
            chain = [UniPoly.from_sympy(c, p.var) for c in p.to_sympy().sturm()]
        self.__chain: Tuple[UniPoly, ...] = tuple(chain)
        self.__gcd = p.gcd(p.derivative())

    @property
    def chain(self) -> Tuple[UniPoly, ...]:
        return self.__chain

    @property
    def gcd(self) -> UniPoly:
        return self.__gcd

    def variations(self, at: Optional[RationalLike], side: int = 1) -> int:
        """Sign variations at a rational point, or at side*infinity when at is None"""
        signs = []
        for c in self.__chain:
            if at is None:
                s = sign(c.leading)
                if side < 0 and c.degree % 2 == 1:
                    s = -s
            else:
                s = c.sign_at(at)
            if s != 0:
                signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo: Optional[RationalLike] = None, hi: Optional[RationalLike] = None) -> int:
        """Distinct real roots in (lo, hi]; None stands for -inf / +inf"""
        return self.variations(lo, -1) - self.variations(hi, 1)


@lru_cache(maxsize=4096)
def sturm_sequence(p: UniPoly) -> SturmSequence:
    return SturmSequence(p)


def sturm_count(
    p: UniPoly,
    lo: Optional[RationalLike] = None,
    hi: Optional[RationalLike] = None,
) -> int:
    """Exact number of distinct real roots of p in (lo, hi]"""
    if p.is_zero:
        raise ZeroPolynomialException("Cannot count the roots of the zero polynomial")
    return sturm_sequence(p).count(lo, hi)


def yun_decomposition(p: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Square-free factors (f_k, k) with p = c * prod(f_k^k), f_k monic, k ascending"""
    if p.is_zero:
        raise ZeroPolynomialException("The zero polynomial has no square-free decomposition")
    if p.is_constant:
        return []
    _, factors = p.to_sympy().sqf_list()
    return [
        (UniPoly.from_sympy(f, p.var).monic(), k) for f, k in sorted(factors, key=lambda fk: fk[1])
        if f.degree() > 0
    ]


def squarefree_part(p: UniPoly) -> Tuple[UniPoly, List[Tuple[int, int]]]:
    """Returns the monic square-free part of p and its (factor degree, multiplicity) profile"""
    if p.is_zero:
        raise ZeroPolynomialException("The zero polynomial has no square-free part")
    part = UniPoly.from_sympy(p.to_sympy().sqf_part(), p.var).monic() if not p.is_constant else p
    profile = [(f.degree, k) for f, k in yun_decomposition(p)]
    return part, profile


_GRID_PATTERN = re.compile(
    r"^dyadic:\s*([\[(])\s*([^,\s]+)\s*,\s*([^\])\s]+)\s*([\])])\s*:\s*(\d+)\s*$"
)


def dyadic_grid(
    lo: RationalLike,
    hi: RationalLike,
    points: int,
    closed_lo: bool = True,
    closed_hi: bool = False,
) -> List[Fraction]:
    """Points lo + j*step, step = (hi - lo)/2^ceil(log2(points - 1)), open ends dropped"""
    lo, hi = to_rational(lo), to_rational(hi)
    if points < 2 or lo >= hi:
        raise DualRootsConfigException(
            f"A dyadic grid needs lo < hi and at least 2 points, got [{lo}, {hi}]:{points}"
        )
    divisions = 1
    while divisions < points - 1:
        divisions *= 2
    step = (hi - lo) / divisions
    grid = [lo + j * step for j in range(divisions + 1)]
    if not closed_lo:
        grid = grid[1:]
    if not closed_hi:
        grid = grid[:-1]
    return grid


def parse_grid(text: str) -> List[Fraction]:
    """Parses "dyadic:[lo,hi):m" or a comma separated list of rationals"""
    text = text.strip()
    match = _GRID_PATTERN.match(text)
    if match:
        left, lo, hi, right, points = match.groups()
        return dyadic_grid(
            parse_rational(lo), parse_rational(hi), int(points), left == "[", right == "]"
        )
    if text.startswith("dyadic:"):
        raise DualRootsConfigException(f"Invalid dyadic grid {text!r}, expected dyadic:[lo,hi):m")
    values = [parse_rational(v) for v in text.split(",") if v.strip()]
    if not values:
        raise DualRootsConfigException("Empty grid")
    return values
