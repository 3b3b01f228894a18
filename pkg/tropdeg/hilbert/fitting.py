"""
Empirical eventual-polynomial fits of Hilbert sequences.

The polynomial of degree ``d`` through the last ``d + 1`` observations is
computed exactly; the onset is the first k from which every observation in
the window agrees with it. Nothing is asserted about the true asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

from ..errors import PreconditionError
from ..geometry.linalg import solve_square
from .functions import HilbertRecord

Observation = Union[HilbertRecord, Tuple[int, int]]


@dataclass(frozen=True)
class PolynomialFit:
    """``coefficients[i]`` multiplies ``k**i``."""

    degree: int
    coefficients: Tuple[Fraction, ...]
    onset: int
    stabilized: bool
    window: Tuple[int, int]

    def __call__(self, k: int) -> Fraction:
        return sum((c * Fraction(k) ** i for i, c in enumerate(self.coefficients)), Fraction(0))

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)


def _observations(records: Sequence[Observation]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    ks, values = [], []
    for record in records:
        if isinstance(record, HilbertRecord):
            if not record.exact:
                raise PreconditionError(f"record at k={record.k} is a bound, not an exact value")
            ks.append(record.k)
            values.append(record.lower)
        else:
            k, value = record
            ks.append(int(k))
            values.append(value)
    if any(b != a + 1 for a, b in zip(ks, ks[1:])):
        raise PreconditionError(f"k values must be consecutive, got {ks}")
    return tuple(ks), tuple(values)


def eventual_poly_fit(records: Sequence[Observation], d: int) -> PolynomialFit:
    if d < 0:
        raise PreconditionError("degree must be nonnegative")
    ks, values = _observations(records)
    if len(ks) < d + 2:
        raise PreconditionError(f"a degree-{d} fit needs at least {d + 2} records, got {len(ks)}")
    tail_k = ks[-(d + 1):]
    tail_v = values[-(d + 1):]
    vandermonde = [[Fraction(k) ** i for i in range(d + 1)] for k in tail_k]
    coefficients = solve_square(vandermonde, [Fraction(v) for v in tail_v])
    fit = PolynomialFit(d, coefficients, ks[-1], False, (ks[0], ks[-1]))
    onset_index = len(ks) - 1
    while onset_index > 0 and fit(ks[onset_index - 1]) == values[onset_index - 1]:
        onset_index -= 1
    stabilized = len(ks) - onset_index >= d + 2
    return PolynomialFit(d, coefficients, ks[onset_index], stabilized, (ks[0], ks[-1]))
