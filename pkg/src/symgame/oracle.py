"""Brute-force symmetry test straight from the permutation definition.

For every permutation ``sigma`` of the players, every player ``i`` and every
profile ``x``, check ``c_i(x_1..x_n) == c_{sigma(i)}(x_{sigma^-1(1)}..x_{sigma^-1(n)})``.
Profiles are re-mapped as tuples; no swap or Kronecker matrices are involved, so
this module gives an independent reference for the matrix tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, NamedTuple

from .game import FiniteGame

__all__ = [
    "MAX_PLAYERS",
    "Permutation",
    "Witness",
    "adjacent_transpositions",
    "all_permutations",
    "check_definition4",
    "find_violation",
    "oracle_is_symmetric",
]

MAX_PLAYERS = 8


@dataclass(frozen=True)
class Permutation:
    """``mapping[i - 1] = sigma(i)``, 1-based."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(1, len(self.mapping) + 1)):
            raise ValueError(f"{self.mapping} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, s in enumerate(self.mapping, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))


class Witness(NamedTuple):
    """First failing instance: ``c_player(profile) != c_sigma(player)(permuted)``."""

    sigma: Permutation
    player: int
    profile: tuple[int, ...]
    permuted_profile: tuple[int, ...]
    lhs: object
    rhs: object


def all_permutations(n: int) -> Iterator[Permutation]:
    """All ``n!`` permutations in lexicographic order of their mapping."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_PLAYERS:
        raise ValueError(f"n = {n} too large for brute-force enumeration (max {MAX_PLAYERS})")
    for m in permutations(range(1, n + 1)):
        yield Permutation(m)


def adjacent_transpositions(n: int) -> Iterator[Permutation]:
    for r in range(1, n):
        m = list(range(1, n + 1))
        m[r - 1], m[r] = m[r], m[r - 1]
        yield Permutation(tuple(m))


def _table(g: FiniteGame) -> dict[tuple[int, ...], int]:
    # enumeration order of product() is the column order of a structure vector
    return {p: j for j, p in enumerate(product(range(1, g.k + 1), repeat=g.n))}


def _find(g: FiniteGame, sigma: Permutation, tol, table) -> Witness | None:
    if sigma.n != g.n:
        raise ValueError(f"permutation of {sigma.n} things applied to a {g.n}-player game")
    inv = sigma.inverse()
    c = g.payoffs
    for x, col in table.items():
        y = tuple(x[inv(t) - 1] for t in range(1, g.n + 1))
        ycol = table[y]
        for i in range(1, g.n + 1):
            lhs = c[i - 1, col]
            rhs = c[sigma(i) - 1, ycol]
            if abs(lhs - rhs) > tol:
                return Witness(sigma, i, x, y, lhs, rhs)
    return None


def check_definition4(g: FiniteGame, sigma: Permutation, tol: float = 1e-9) -> bool:
    """Whether the payoff identity holds for this single ``sigma``."""
    return _find(g, sigma, tol, _table(g)) is None


def find_violation(g: FiniteGame, tol: float = 1e-9, generators_only: bool = False) -> Witness | None:
    """Smallest violating ``(sigma, profile, player)`` in enumeration order, or ``None``."""
    perms = adjacent_transpositions(g.n) if generators_only else all_permutations(g.n)
    table = _table(g)
    for sigma in perms:
        w = _find(g, sigma, tol, table)
        if w is not None:
            return w
    return None


def oracle_is_symmetric(g: FiniteGame, tol: float = 1e-9, generators_only: bool = False) -> bool:
    """Brute-force verdict over all of ``S_n`` (or only adjacent transpositions)."""
    if g.n > MAX_PLAYERS:
        raise ValueError(f"n = {g.n} too large for brute-force enumeration (max {MAX_PLAYERS})")
    return find_violation(g, tol, generators_only) is None
