"""Finite games with ``n`` players and ``k`` strategies each, stored as structure vectors.

Row ``i`` of :attr:`FiniteGame.payoffs` is the structure vector of player ``i + 1``:
its column ``j`` holds that player's payoff at the strategy profile whose STP form
is ``delta_{k^n}^j``.  Profiles are ordered lexicographically with the first
player's strategy most significant.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "FiniteGame",
    "GameFormatError",
    "StrategyProfile",
    "index_to_profile",
    "load_game",
    "payoff",
    "profile_to_index",
    "save_game",
]

StrategyProfile = tuple[int, ...]


class GameFormatError(ValueError):
    """Malformed game document or inconsistent game data."""


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise GameFormatError(f"booleans are not payoffs: {x!r}")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise GameFormatError(f"cannot parse payoff {x!r}") from None
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise GameFormatError(f"non-finite payoff {x!r}")
        # shortest repr, so 0.1 becomes 1/10 rather than its binary expansion
        return Fraction(repr(float(x)))
    raise GameFormatError(f"unsupported payoff type {type(x).__name__}")


def _to_float(x) -> float:
    if isinstance(x, (str, Fraction)):
        x = float(_to_fraction(x))
    elif isinstance(x, bool):
        raise GameFormatError(f"booleans are not payoffs: {x!r}")
    try:
        return float(x)
    except (TypeError, ValueError):
        raise GameFormatError(f"cannot parse payoff {x!r}") from None


class FiniteGame:
    """Game in ``G[n;k]`` given by its ``n x k**n`` matrix of structure vectors.

    Parameters
    ----------
    n, k : int
        Number of players (at least 2) and strategies per player (at least 1).
    payoffs : array-like, shape (n, k**n)
        Structure vectors, one row per player.
    exact : bool, default False
        Store entries as :class:`~fractions.Fraction` (``object`` array) instead of
        ``float64``.  Exact games give tolerance-free symmetry verdicts.
    """

    __slots__ = ("n", "k", "payoffs", "exact")

    def __init__(self, n: int, k: int, payoffs, exact: bool = False):
        if int(n) != n or n < 2:
            raise GameFormatError(f"player count must be an integer >= 2, got {n!r}")
        if int(k) != k or k < 1:
            raise GameFormatError(f"strategy count must be an integer >= 1, got {k!r}")
        n, k = int(n), int(k)
        rows = list(payoffs) if not isinstance(payoffs, np.ndarray) else payoffs
        if len(rows) != n:
            raise GameFormatError(f"expected {n} payoff rows, got {len(rows)}")
        width = k**n
        for i, row in enumerate(rows):
            if len(row) != width:
                raise GameFormatError(
                    f"dimension mismatch: row {i + 1} has {len(row)} entries, expected k**n = {width}"
                )
        if exact:
            arr = np.empty((n, width), dtype=object)
            for i, row in enumerate(rows):
                for j, x in enumerate(row):
                    arr[i, j] = _to_fraction(x)
        else:
            if isinstance(rows, np.ndarray) and rows.dtype != object:
                arr = np.array(rows, dtype=np.float64)
            else:
                arr = np.array([[_to_float(x) for x in row] for row in rows], dtype=np.float64)
                arr = arr.reshape(n, width)
            if not np.all(np.isfinite(arr)):
                raise GameFormatError("payoffs must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "payoffs", arr)
        object.__setattr__(self, "exact", bool(exact))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGame is immutable")

    @classmethod
    def from_vector(cls, v, n: int, k: int, exact: bool = False) -> "FiniteGame":
        """Inverse of :meth:`vector`: split a length ``n * k**n`` vector into rows."""
        arr = np.asarray(v, dtype=object if exact else None).reshape(-1)
        if arr.size != n * k**n:
            raise GameFormatError(f"vector of length {arr.size} does not fit n={n}, k={k}")
        return cls(n, k, arr.reshape(n, k**n), exact=exact)

    @property
    def n_profiles(self) -> int:
        return self.k**self.n

    def vector(self) -> np.ndarray:
        """``V_G`` as one flat vector ``[V_1 V_2 ... V_n]``."""
        return self.payoffs.reshape(-1)

    def structure_vector(self, player: int) -> np.ndarray:
        """Row of player ``player`` (1-based)."""
        if not 1 <= player <= self.n:
            raise IndexError(f"player {player} out of range 1..{self.n}")
        return self.payoffs[player - 1]

    def with_payoff(self, player: int, column: int, value) -> "FiniteGame":
        """Copy with one entry replaced; ``player`` and ``column`` are 1-based."""
        arr = self.payoffs.copy()
        arr[player - 1, column - 1] = _to_fraction(value) if self.exact else float(value)
        return FiniteGame(self.n, self.k, arr, exact=self.exact)

    def as_exact(self) -> "FiniteGame":
        return self if self.exact else FiniteGame(self.n, self.k, self.payoffs, exact=True)

    def as_float(self) -> "FiniteGame":
        if not self.exact:
            return self
        return FiniteGame(self.n, self.k, self.payoffs.astype(np.float64))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGame):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and bool(np.all(self.payoffs == other.payoffs))

    def __hash__(self):
        return hash((self.n, self.k, tuple(self.payoffs.reshape(-1).tolist())))

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "float"
        return f"FiniteGame(n={self.n}, k={self.k}, {kind})"


def _check_profile(profile: Sequence[int], k: int) -> None:
    for t, s in enumerate(profile, start=1):
        if int(s) != s or not 1 <= s <= k:
            raise ValueError(f"strategy of player {t} is {s!r}, expected 1..{k}")


def profile_to_index(profile: Sequence[int], k: int) -> int:
    """1-based column of ``delta_k^{s_1} ... delta_k^{s_n}`` in ``Delta_{k^n}``."""
    if len(profile) == 0:
        raise ValueError("empty profile")
    _check_profile(profile, k)
    j = 0
    for s in profile:
        j = j * k + (int(s) - 1)
    return j + 1


def index_to_profile(j: int, n: int, k: int) -> StrategyProfile:
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    if int(j) != j or not 1 <= j <= k**n:
        raise ValueError(f"index {j!r} out of range 1..{k**n}")
    rest = int(j) - 1
    out = [0] * n
    for t in range(n - 1, -1, -1):
        rest, digit = divmod(rest, k)
        out[t] = digit + 1
    return tuple(out)


def payoff(g: FiniteGame, player: int, profile: Sequence[int]):
    """Payoff of ``player`` (1-based) at ``profile``."""
    if len(profile) != g.n:
        raise ValueError(f"profile has {len(profile)} entries, game has {g.n} players")
    return g.structure_vector(player)[profile_to_index(profile, g.k) - 1]


def load_game(text: bytes | str, exact: bool = False) -> FiniteGame:
    """Parse a game document.

    The document is a JSON object ``{"players": n, "strategies": k, "payoffs":
    [[...], ...]}``.  Entries are JSON numbers or ``"p/q"`` strings.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GameFormatError(f"game document is not UTF-8: {exc}") from None

    def _bad_constant(name):
        raise GameFormatError(f"non-finite number {name} in game document")

    try:
        # decimal literals stay strings so exact mode keeps their decimal value
        doc = json.loads(text, parse_float=str, parse_constant=_bad_constant)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"malformed game document: {exc}") from None
    if not isinstance(doc, dict):
        raise GameFormatError("game document must be a JSON object")
    missing = {"players", "strategies", "payoffs"} - doc.keys()
    if missing:
        raise GameFormatError(f"game document missing keys: {sorted(missing)}")
    n, k, rows = doc["players"], doc["strategies"], doc["payoffs"]
    if not isinstance(n, int) or isinstance(n, bool) or not isinstance(k, int) or isinstance(k, bool):
        raise GameFormatError("'players' and 'strategies' must be integers")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise GameFormatError("'payoffs' must be a list of lists")
    return FiniteGame(n, k, rows, exact=exact)


def _encode(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f'"{x}"'
    x = float(x)
    return str(int(x)) if x.is_integer() and abs(x) < 2**53 else repr(x)


def save_game(g: FiniteGame) -> bytes:
    """Serialize ``g`` to the game document format (deterministic UTF-8 bytes)."""
    rows = ",\n".join("    [" + ", ".join(_encode(x) for x in row) + "]" for row in g.payoffs)
    text = (
        "{\n"
        f'  "players": {g.n},\n'
        f'  "strategies": {g.k},\n'
        '  "payoffs": [\n'
        f"{rows}\n"
        "  ]\n"
        "}\n"
    )
    return text.encode("utf-8")
