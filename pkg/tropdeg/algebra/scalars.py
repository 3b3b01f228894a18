"""
Exact Scalars for Min-Plus Arithmetic

Coefficients of tropical polynomials live in the rationals extended by +inf.
Genericity arguments additionally need "sufficiently small" perturbations;
instead of picking a numeric epsilon, values carry the coefficient of a formal
positive infinitesimal ``eta`` and compare lexicographically.

Features:
- ExtRat: rational or +inf, +inf absorbing under addition
- PerturbedScalar: (base, eps_coeff) ordered lexicographically
- Exact parsing and formatting ("p/q", "inf", "p/q+e*eta")
- Floats rejected at every entry point

Usage:
    from tropdeg.algebra.scalars import PerturbedScalar, parse_scalar

    a = PerturbedScalar.of("1/2")
    b = a + PerturbedScalar.eta(3)       # 1/2 + 3*eta
    assert a < b < PerturbedScalar.of(1)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

RationalLike = Union[int, Fraction, str]

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_SCALAR = re.compile(
    r"^\s*(?P<base>inf|[+-]?\d+(?:/\d+)?)\s*"
    r"(?:(?P<sign>[+-])\s*(?P<eps>\d+(?:/\d+)?)\s*\*\s*eta)?\s*$"
)


def to_fraction(value: RationalLike) -> Fraction:
    """Convert ints, Fractions and "p/q" strings to Fraction; reject floats."""

    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" exactly."""

    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, eq=False, slots=True)
class ExtRat:
    """A rational number or +inf (``value is None``)."""

    value: Optional[Fraction]

    def __post_init__(self) -> None:
        if self.value is not None and not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", to_fraction(self.value))

    @classmethod
    def of(cls, value: Union["ExtRat", RationalLike]) -> "ExtRat":
        if isinstance(value, ExtRat):
            return value
        if isinstance(value, str) and value.strip() == "inf":
            return INF_RAT
        return cls(to_fraction(value))

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def _key(self) -> Tuple[int, Fraction]:
        return (0, self.value) if self.value is not None else (1, Fraction(0))

    def __add__(self, other: object) -> "ExtRat":
        other = _coerce_ext(other)
        if other is None:
            return NotImplemented
        if self.value is None or other.value is None:
            return INF_RAT
        return ExtRat(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other: object) -> "ExtRat":
        other = _coerce_ext(other)
        if other is None:
            return NotImplemented
        if other.value is None:
            raise ArithmeticError("cannot subtract +inf")
        if self.value is None:
            return INF_RAT
        return ExtRat(self.value - other.value)

    def __eq__(self, other: object) -> bool:
        other = _coerce_ext(other)
        return other is not None and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __lt__(self, other: object) -> bool:
        other = _coerce_ext(other)
        if other is None:
            return NotImplemented
        return self._key() < other._key()

    def __le__(self, other: object) -> bool:
        other = _coerce_ext(other)
        if other is None:
            return NotImplemented
        return self._key() <= other._key()

    def __gt__(self, other: object) -> bool:
        other = _coerce_ext(other)
        if other is None:
            return NotImplemented
        return self._key() > other._key()

    def __ge__(self, other: object) -> bool:
        other = _coerce_ext(other)
        if other is None:
            return NotImplemented
        return self._key() >= other._key()

    def __str__(self) -> str:
        return "inf" if self.value is None else format_rational(self.value)

    def __repr__(self) -> str:
        return f"ExtRat({self})"


INF_RAT = ExtRat(None)


def _coerce_ext(value: object) -> Optional[ExtRat]:
    if isinstance(value, ExtRat):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ExtRat(Fraction(value))
    return None


@dataclass(frozen=True, eq=False, slots=True)
class PerturbedScalar:
    """
    Value ``base + eps_coeff * eta`` for a formal infinitesimal ``eta > 0``.

    Ordering is lexicographic in (base, eps_coeff), which is a total order
    compatible with addition. An infinite base always has ``eps_coeff == 0``.
    """

    base: ExtRat
    eps_coeff: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not isinstance(self.base, ExtRat):
            object.__setattr__(self, "base", ExtRat.of(self.base))
        if not isinstance(self.eps_coeff, Fraction):
            object.__setattr__(self, "eps_coeff", to_fraction(self.eps_coeff))
        if self.base.value is None and self.eps_coeff != 0:
            raise ValueError("an infinite scalar cannot carry a perturbation")

    # -- construction -----------------------------------------------------
    @classmethod
    def of(cls, value: Union["PerturbedScalar", ExtRat, RationalLike]) -> "PerturbedScalar":
        if isinstance(value, PerturbedScalar):
            return value
        if isinstance(value, ExtRat):
            return cls(value)
        if isinstance(value, str):
            return parse_scalar(value)
        return cls(ExtRat(to_fraction(value)))

    @classmethod
    def infinity(cls) -> "PerturbedScalar":
        return INFINITY

    @classmethod
    def eta(cls, coefficient: RationalLike = 1) -> "PerturbedScalar":
        return cls(ExtRat(Fraction(0)), to_fraction(coefficient))

    # -- queries ------------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.base.value is not None

    @property
    def real(self) -> Optional[Fraction]:
        """Base value without the infinitesimal part (None for +inf)."""

        return self.base.value

    @property
    def is_perturbed(self) -> bool:
        return self.eps_coeff != 0

    def _key(self) -> Tuple[int, Fraction, Fraction]:
        if self.base.value is None:
            return (1, Fraction(0), Fraction(0))
        return (0, self.base.value, self.eps_coeff)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: object) -> "PerturbedScalar":
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        if self.base.value is None or other.base.value is None:
            return INFINITY
        return PerturbedScalar(
            ExtRat(self.base.value + other.base.value), self.eps_coeff + other.eps_coeff
        )

    __radd__ = __add__

    def __sub__(self, other: object) -> "PerturbedScalar":
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        if other.base.value is None:
            raise ArithmeticError("cannot subtract +inf")
        if self.base.value is None:
            return INFINITY
        return PerturbedScalar(
            ExtRat(self.base.value - other.base.value), self.eps_coeff - other.eps_coeff
        )

    def __rsub__(self, other: object) -> "PerturbedScalar":
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> "PerturbedScalar":
        if self.base.value is None:
            raise ArithmeticError("cannot negate +inf")
        return PerturbedScalar(ExtRat(-self.base.value), -self.eps_coeff)

    def scale(self, factor: RationalLike) -> "PerturbedScalar":
        """Multiply by a rational; +inf may only be scaled by a positive factor."""

        factor = to_fraction(factor)
        if self.base.value is None:
            if factor > 0:
                return INFINITY
            raise ArithmeticError("+inf can only be scaled by a positive rational")
        return PerturbedScalar(ExtRat(self.base.value * factor), self.eps_coeff * factor)

    def __mul__(self, factor: object) -> "PerturbedScalar":
        if isinstance(factor, (int, Fraction)) and not isinstance(factor, bool):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, divisor: object) -> "PerturbedScalar":
        if isinstance(divisor, (int, Fraction)) and not isinstance(divisor, bool):
            if divisor == 0:
                raise ZeroDivisionError("division of a scalar by zero")
            return self.scale(Fraction(1) / Fraction(divisor))
        return NotImplemented

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        other = _coerce_scalar(other)
        return other is not None and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __lt__(self, other: object) -> bool:
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return self._key() < other._key()

    def __le__(self, other: object) -> bool:
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return self._key() <= other._key()

    def __gt__(self, other: object) -> bool:
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return self._key() > other._key()

    def __ge__(self, other: object) -> bool:
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return self._key() >= other._key()

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"PerturbedScalar({format_scalar(self)})"


def _coerce_scalar(value: object) -> Optional[PerturbedScalar]:
    if isinstance(value, PerturbedScalar):
        return value
    if isinstance(value, float) and value == math.inf:
        # unreached-distance sentinel of graph searches
        return INFINITY
    if isinstance(value, ExtRat):
        return PerturbedScalar(value)
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return PerturbedScalar(ExtRat(Fraction(value)))
    return None


ZERO = PerturbedScalar(ExtRat(Fraction(0)))
INFINITY = PerturbedScalar(INF_RAT)


def format_scalar(value: Union[PerturbedScalar, ExtRat, Fraction, int]) -> str:
    """Render ``"p/q"``, ``"inf"`` or ``"p/q+e*eta"``."""

    scalar = PerturbedScalar.of(value) if not isinstance(value, PerturbedScalar) else value
    base = str(scalar.base)
    if scalar.eps_coeff == 0:
        return base
    sign = "+" if scalar.eps_coeff > 0 else "-"
    return f"{base}{sign}{format_rational(abs(scalar.eps_coeff))}*eta"


def parse_scalar(text: str) -> PerturbedScalar:
    """Inverse of :func:`format_scalar`."""

    match = _SCALAR.match(text)
    if not match:
        raise ValueError(f"not a scalar literal: {text!r}")
    base = ExtRat.of(match.group("base"))
    eps = Fraction(0)
    if match.group("eps") is not None:
        eps = Fraction(match.group("eps"))
        if match.group("sign") == "-":
            eps = -eps
    return PerturbedScalar(base, eps)
