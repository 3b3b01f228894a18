"""
Tropical Monomials, Polynomials and Univariate Restrictions

A tropical (min-plus) polynomial is the minimum of finitely many affine
functions ``<a, x> + c`` with nonnegative integer exponent vectors ``a``.
Along a segment ``base + t * direction`` every term becomes a line in ``t``;
the lower envelope of those lines is the restriction of the polynomial.

Features:
- Monomial / Point / TropPoly frozen value types
- Exact min-plus evaluation with argmin sets
- Restriction to segments, keeping the originating term of every line
- Exact lower envelopes (pieces, breakpoints, tied terms at vertices),
  also over perturbed offsets

Usage:
    f = TropPoly.from_terms([((0, 0), 0), ((1, 1), 0)])
    value, argmin = eval_poly(f, Point.of([1, 1]))
    envelope = lower_envelope(restrict_to_segment(f, segment))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..errors import DimensionMismatchError
from .scalars import INFINITY, PerturbedScalar, RationalLike, to_fraction

if TYPE_CHECKING:  # pragma: no cover
    from ..geometry.prevariety import Segment

Parameter = Union[Fraction, PerturbedScalar]


@dataclass(frozen=True, slots=True)
class Point:
    """A rational point of R^n."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(to_fraction(c) for c in self.coords))

    @classmethod
    def of(cls, values: Iterable[RationalLike]) -> "Point":
        return cls(tuple(values))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def translate(self, offset: Sequence[RationalLike]) -> "Point":
        if len(offset) != self.dim:
            raise DimensionMismatchError(f"offset of length {len(offset)} for point in R^{self.dim}")
        return Point(tuple(c + to_fraction(o) for c, o in zip(self.coords, offset)))

    def permute(self, perm: Sequence[int]) -> "Point":
        """Coordinate ``i`` of the result is coordinate ``perm[i]`` of this point."""

        return Point(tuple(self.coords[p] for p in perm))


@dataclass(frozen=True, slots=True)
class Monomial:
    """Exponent vector of a tropical monomial ``i_1 x_1 + ... + i_n x_n``."""

    exponents: Tuple[int, ...]

    def __post_init__(self) -> None:
        exps = tuple(self.exponents)
        for e in exps:
            if isinstance(e, bool) or not isinstance(e, int) or e < 0:
                raise ValueError(f"exponents must be nonnegative integers, got {exps}")
        object.__setattr__(self, "exponents", exps)

    @property
    def dim(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def pair(self, vector: Sequence[Fraction]) -> Fraction:
        """Inner product with a rational vector (the value at a point)."""

        if len(vector) != self.dim:
            raise DimensionMismatchError(
                f"monomial in {self.dim} variables paired with vector of length {len(vector)}"
            )
        return sum((Fraction(e) * v for e, v in zip(self.exponents, vector)), Fraction(0))

    def permute(self, perm: Sequence[int]) -> "Monomial":
        return Monomial(tuple(self.exponents[p] for p in perm))

    def __str__(self) -> str:
        return "x^(" + ",".join(str(e) for e in self.exponents) + ")"


Term = Tuple[Monomial, PerturbedScalar]


@dataclass(frozen=True, slots=True)
class TropPoly:
    """
    Min-plus polynomial ``min_i (coeff_i + <a_i, x>)``.

    Terms with equal exponent vectors are merged at construction (the
    smaller coefficient wins); term order of first occurrence is kept, and
    term indices refer to that order.
    """

    terms: Tuple[Term, ...]

    def __post_init__(self) -> None:
        merged: Dict[Tuple[int, ...], int] = {}
        terms: List[Term] = []
        for monomial, coeff in self.terms:
            if not isinstance(monomial, Monomial):
                monomial = Monomial(tuple(monomial))
            coeff = PerturbedScalar.of(coeff)
            key = monomial.exponents
            if key in merged:
                idx = merged[key]
                if coeff < terms[idx][1]:
                    terms[idx] = (monomial, coeff)
                continue
            merged[key] = len(terms)
            terms.append((monomial, coeff))
        if not terms:
            raise ValueError("a tropical polynomial needs at least one term")
        dims = {m.dim for m, _ in terms}
        if len(dims) != 1:
            raise DimensionMismatchError(f"terms of mixed dimension {sorted(dims)}")
        if not any(c.is_finite for _, c in terms):
            raise ValueError("a tropical polynomial needs a finite coefficient")
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def from_terms(
        cls, terms: Iterable[Tuple[Union[Monomial, Sequence[int]], object]]
    ) -> "TropPoly":
        return cls(tuple((m if isinstance(m, Monomial) else Monomial(tuple(m)), c) for m, c in terms))

    @classmethod
    def monomial(cls, exponents: Union[Monomial, Sequence[int]], coeff: object = 0) -> "TropPoly":
        return cls.from_terms([(exponents, coeff)])

    @property
    def n(self) -> int:
        return self.terms[0][0].dim

    def __len__(self) -> int:
        return len(self.terms)

    def monomials(self) -> Tuple[Monomial, ...]:
        return tuple(m for m, _ in self.terms)

    def evaluate(self, x: Sequence[Fraction]) -> Tuple[PerturbedScalar, FrozenSet[int]]:
        return eval_poly(self, x)

    def degree(self) -> int:
        return poly_degree(self)

    def shifted(self, offset: object) -> "TropPoly":
        """Tropical product with a constant: every coefficient plus ``offset``."""

        offset = PerturbedScalar.of(offset)
        return TropPoly(tuple((m, c + offset) for m, c in self.terms))

    def translated(self, t: Sequence[Fraction]) -> "TropPoly":
        """Polynomial ``g(x) = f(x + t)``."""

        return TropPoly(tuple((m, c + m.pair(tuple(t))) for m, c in self.terms))

    def permute(self, perm: Sequence[int]) -> "TropPoly":
        return TropPoly(tuple((m.permute(perm), c) for m, c in self.terms))


def eval_poly(f: TropPoly, x: Sequence[Fraction]) -> Tuple[PerturbedScalar, FrozenSet[int]]:
    """Exact min-plus value of ``f`` at ``x`` and the set of minimizing term indices."""

    coords = tuple(x)
    if len(coords) != f.n:
        raise DimensionMismatchError(f"point in R^{len(coords)} for polynomial in {f.n} variables")
    best = INFINITY
    argmin: List[int] = []
    for idx, (monomial, coeff) in enumerate(f.terms):
        if not coeff.is_finite:
            continue
        value = coeff + monomial.pair(coords)
        if value < best:
            best = value
            argmin = [idx]
        elif value == best:
            argmin.append(idx)
    return best, frozenset(argmin)


def poly_degree(f: TropPoly) -> int:
    """Largest exponent sum over terms with finite coefficient."""

    return max(m.degree for m, c in f.terms if c.is_finite)


@dataclass(frozen=True, slots=True)
class RestrictionPiece:
    """Line ``offset + slope * t`` contributed by term ``term``."""

    slope: Fraction
    offset: PerturbedScalar
    term: int

    def value_at(self, t: Parameter) -> PerturbedScalar:
        if isinstance(t, PerturbedScalar):
            return self.offset + t.scale(self.slope)
        return self.offset + self.slope * t


@dataclass(frozen=True, slots=True)
class UnivariateRestriction:
    """
    Pieces of a min-plus function of one parameter over an interval.

    ``t_lo is None`` means -inf and ``t_hi is None`` means +inf.
    """

    pieces: Tuple[RestrictionPiece, ...]
    t_lo: Optional[Fraction] = None
    t_hi: Optional[Fraction] = None
    lo_closed: bool = False
    hi_closed: bool = False

    @classmethod
    def from_coefficients(
        cls, coefficients: Sequence[object], t_lo: Optional[Fraction] = Fraction(0)
    ) -> "UnivariateRestriction":
        """Function ``min_i (i * z + a_i)`` on ``[t_lo, +inf)``."""

        pieces = tuple(
            RestrictionPiece(Fraction(i), PerturbedScalar.of(a), i) for i, a in enumerate(coefficients)
        )
        return cls(pieces, t_lo, None, t_lo is not None, False)

    def evaluate(self, t: Parameter) -> Tuple[PerturbedScalar, FrozenSet[int]]:
        best = INFINITY
        argmin: List[int] = []
        for piece in self.pieces:
            if not piece.offset.is_finite:
                continue
            value = piece.value_at(t)
            if value < best:
                best, argmin = value, [piece.term]
            elif value == best:
                argmin.append(piece.term)
        return best, frozenset(argmin)

    def contains(self, t: Fraction) -> bool:
        if self.t_lo is not None and (t < self.t_lo or (t == self.t_lo and not self.lo_closed)):
            return False
        if self.t_hi is not None and (t > self.t_hi or (t == self.t_hi and not self.hi_closed)):
            return False
        return True


def restrict_to_segment(f: TropPoly, seg: "Segment") -> UnivariateRestriction:
    """One line per term: slope ``<a, w>``, offset ``c + <a, base>``."""

    if seg.base.dim != f.n:
        raise DimensionMismatchError(f"segment in R^{seg.base.dim} for polynomial in {f.n} variables")
    direction = tuple(Fraction(d) for d in seg.direction)
    pieces = tuple(
        RestrictionPiece(monomial.pair(direction), coeff + monomial.pair(seg.base.coords), idx)
        for idx, (monomial, coeff) in enumerate(f.terms)
    )
    return UnivariateRestriction(pieces, seg.t_lo, seg.t_hi, seg.lo_closed, seg.hi_closed)


@dataclass(frozen=True, slots=True)
class EnvelopePiece:
    """
    Maximal parameter range on which one line is the minimum.

    ``terms`` lists every term whose line coincides with the minimizing line
    (more than one only when two terms restrict to the same line).
    Endpoints are ``None`` for -inf / +inf.
    """

    terms: Tuple[int, ...]
    slope: Fraction
    offset: PerturbedScalar
    start: Optional[PerturbedScalar]
    end: Optional[PerturbedScalar]

    @property
    def unique(self) -> bool:
        return len(self.terms) == 1


@dataclass(frozen=True, slots=True)
class EnvelopeVertex:
    """Breakpoint between consecutive envelope pieces."""

    t: PerturbedScalar
    value: PerturbedScalar
    left: int
    right: int
    tied_terms: FrozenSet[int]


@dataclass(frozen=True, slots=True)
class Envelope:
    pieces: Tuple[EnvelopePiece, ...]
    vertices: Tuple[EnvelopeVertex, ...]

    @property
    def attained_terms(self) -> FrozenSet[int]:
        return frozenset(t for piece in self.pieces for t in piece.terms)

    @property
    def is_generic(self) -> bool:
        """No coinciding lines and exactly two lines through every vertex."""

        return all(p.unique for p in self.pieces) and all(len(v.tied_terms) == 2 for v in self.vertices)

    def piece_of(self, term: int) -> Optional[EnvelopePiece]:
        for piece in self.pieces:
            if term in piece.terms:
                return piece
        return None


def lower_envelope(h: UnivariateRestriction) -> Envelope:
    """
    Exact lower envelope of ``h`` over its parameter interval.

    Breakpoints may carry an infinitesimal part when offsets do.
    """

    lines: Dict[Tuple[Fraction, PerturbedScalar], List[int]] = {}
    for piece in h.pieces:
        if piece.offset.is_finite:
            lines.setdefault((piece.slope, piece.offset), []).append(piece.term)
    if not lines:
        return Envelope((), ())
    keys = list(lines)

    if h.t_lo is None:
        top_slope = max(s for s, _ in keys)
        current = min((k for k in keys if k[0] == top_slope), key=lambda k: k[1])
        position: Optional[PerturbedScalar] = None
    else:
        position = PerturbedScalar.of(h.t_lo)
        values = {k: k[1] + position.scale(k[0]) for k in keys}
        low = min(values.values())
        current = min((k for k in keys if values[k] == low), key=lambda k: k[0])

    hi = PerturbedScalar.of(h.t_hi) if h.t_hi is not None else None
    pieces: List[EnvelopePiece] = []
    vertices: List[EnvelopeVertex] = []
    while True:
        slope, offset = current
        crossing: Optional[PerturbedScalar] = None
        nxt: Optional[Tuple[Fraction, PerturbedScalar]] = None
        for key in keys:
            if key[0] >= slope:
                continue
            t = (key[1] - offset) / (slope - key[0])
            if crossing is None or t < crossing or (t == crossing and key[0] < nxt[0]):
                crossing, nxt = t, key
        if crossing is None or (hi is not None and crossing >= hi):
            pieces.append(EnvelopePiece(tuple(sorted(lines[current])), slope, offset, position, hi))
            break
        pieces.append(EnvelopePiece(tuple(sorted(lines[current])), slope, offset, position, crossing))
        value = offset + crossing.scale(slope)
        tied = frozenset(
            term for key in keys if key[1] + crossing.scale(key[0]) == value for term in lines[key]
        )
        vertices.append(EnvelopeVertex(crossing, value, min(lines[current]), min(lines[nxt]), tied))
        position, current = crossing, nxt
    return Envelope(tuple(pieces), tuple(vertices))
