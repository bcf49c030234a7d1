"""Small finite monoids used as construction parameters.

The listed order of ``names`` doubles as the total order wherever a builder
needs one (layered max-like additions compare positions in this list).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import first_nonassoc


@dataclass(frozen=True)
class Monoid:
    names: tuple[str, ...]
    table: np.ndarray
    unit: int

    @property
    def k(self) -> int:
        return len(self.names)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        if t.shape != (self.k, self.k):
            raise ValueError("monoid table must be square over the named elements")
        if first_nonassoc(t)[0] >= 0:
            raise ValueError("monoid table is not associative")
        if (t[self.unit] != np.arange(self.k)).any() or (t[:, self.unit] != np.arange(self.k)).any():
            raise ValueError("designated unit is not a two-sided unit")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)


def cyclic_group(k: int) -> Monoid:
    if k < 1:
        raise ValueError("cyclic group order must be positive")
    names = tuple(["1", "g"][:k]) if k <= 2 else ("1",) + tuple(f"g{i}" for i in range(1, k))
    table = (np.arange(k)[:, None] + np.arange(k)[None, :]) % k
    return Monoid(names=names, table=table, unit=0)


def trivial_monoid() -> Monoid:
    return cyclic_group(1)


def chain_monoid(k: int) -> Monoid:
    """Totally ordered idempotent monoid: x*y = max(x, y)."""
    names = ("1",) + tuple(f"t{i}" if i > 1 else "t" for i in range(1, k))
    table = np.maximum(np.arange(k)[:, None], np.arange(k)[None, :])
    return Monoid(names=names, table=table, unit=0)


def saturating_monoid(k: int) -> Monoid:
    """Addition on 0..k-1 capped at the top: x*y = min(x+y, k-1)."""
    names = tuple(str(i) for i in range(k))
    table = np.minimum(np.arange(k)[:, None] + np.arange(k)[None, :], k - 1)
    return Monoid(names=names, table=table, unit=0)


NAMED_MONOIDS = {
    "trivial": trivial_monoid,
    "c2": lambda: cyclic_group(2),
    "c3": lambda: cyclic_group(3),
    "c4": lambda: cyclic_group(4),
    "chain2": lambda: chain_monoid(2),
    "chain3": lambda: chain_monoid(3),
    "sat2": lambda: saturating_monoid(2),
    "sat3": lambda: saturating_monoid(3),
}


def named_monoid(name: str) -> Monoid:
    try:
        return NAMED_MONOIDS[name]()
    except KeyError:
        raise ValueError(f"unknown monoid {name!r}; have {sorted(NAMED_MONOIDS)}") from None
