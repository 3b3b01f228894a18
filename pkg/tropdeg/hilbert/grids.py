"""Monomial grids: the simplex ``sum(i) <= k`` and the box ``max(i) <= k``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, List, Optional

from ..algebra.polynomials import Monomial
from ..errors import GridBudgetExceededError
from ..settings import get_settings

SIMPLEX = "simplex"
BOX = "box"
SHAPES = (SIMPLEX, BOX)


@dataclass(frozen=True)
class MonomialGrid:
    n: int
    k: int
    shape: str = SIMPLEX

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("grid dimension must be positive")
        if self.k < 0:
            raise ValueError("degree bound must be nonnegative")
        if self.shape not in SHAPES:
            raise ValueError(f"unknown grid shape {self.shape!r}; expected one of {SHAPES}")

    @property
    def size(self) -> int:
        if self.shape == SIMPLEX:
            return comb(self.n + self.k, self.n)
        return (self.k + 1) ** self.n

    def contains(self, exponents: Monomial) -> bool:
        exps = exponents.exponents
        if len(exps) != self.n or any(e < 0 for e in exps):
            return False
        return sum(exps) <= self.k if self.shape == SIMPLEX else max(exps, default=0) <= self.k

    def __iter__(self) -> Iterator[Monomial]:
        for exps in itertools.product(range(self.k + 1), repeat=self.n):
            if self.shape == BOX or sum(exps) <= self.k:
                yield Monomial(exps)

    def monomials(self, limit: Optional[int] = None) -> List[Monomial]:
        bound = limit if limit is not None else get_settings().budgets.grid_max
        if self.size > bound:
            raise GridBudgetExceededError(f"{self.shape} grid n={self.n} k={self.k} has {self.size} > {bound} monomials")
        return list(self)

    def with_k(self, k: int) -> "MonomialGrid":
        return MonomialGrid(self.n, k, self.shape)
