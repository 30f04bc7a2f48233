"""Classical consequence by truth-table enumeration.

Each formula is evaluated once into a bitmask over all ``2**n`` valuations
of the atoms in play (bit ``v`` set iff valuation ``v`` satisfies it), so a
query costs a handful of big-integer operations.  Results are memoized on
``(frozenset(premises), conclusion)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .errors import AtomLimitExceeded
from .formula import (
    FALSITY,
    And,
    Atom,
    Falsity,
    Formula,
    Iff,
    Imp,
    Neg,
    Or,
    Truth,
    atoms,
    atoms_of,
)

MAX_ATOMS = 20

PremiseSet = tuple  # tuple[Formula, ...], deduplicated, insertion-ordered


def premise_set(formulas: Iterable[Formula]) -> PremiseSet:
    """Deduplicate ``formulas`` keeping first-occurrence order."""
    return tuple(dict.fromkeys(formulas))


@lru_cache(maxsize=None)
def _atom_patterns(n: int) -> tuple[tuple[int, ...], int]:
    rows = 1 << n
    full = (1 << rows) - 1
    patterns = []
    for i in range(n):
        half = 1 << i
        unit = ((1 << half) - 1) << half
        period = half << 1
        patterns.append(unit * (full // ((1 << period) - 1)))
    return tuple(patterns), full


class TruthTables:
    """Bitmask truth tables over a fixed, sorted atom vocabulary."""

    def __init__(self, atom_names: Iterable[str]):
        names = tuple(sorted(set(atom_names)))
        if len(names) > MAX_ATOMS:
            raise AtomLimitExceeded(f"{len(names)} atoms exceed the limit of {MAX_ATOMS}")
        self.atoms = names
        patterns, self.full = _atom_patterns(len(names))
        self._atom_table = dict(zip(names, patterns))
        self._cache: dict[Formula, int] = {}

    @classmethod
    def for_formulas(cls, formulas: Iterable[Formula]) -> "TruthTables":
        return cls(atoms_of(formulas))

    def table(self, f: Formula) -> int:
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            try:
                out = self._atom_table[f.name]
            except KeyError:
                raise ValueError(f"atom {f.name!r} outside vocabulary") from None
        elif isinstance(f, Neg):
            out = self.full & ~self.table(f.arg)
        elif isinstance(f, And):
            out = self.table(f.left) & self.table(f.right)
        elif isinstance(f, Or):
            out = self.table(f.left) | self.table(f.right)
        elif isinstance(f, Imp):
            out = (self.full & ~self.table(f.left)) | self.table(f.right)
        elif isinstance(f, Iff):
            out = self.full & ~(self.table(f.left) ^ self.table(f.right))
        elif isinstance(f, Falsity):
            out = 0
        elif isinstance(f, Truth):
            out = self.full
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._cache[f] = out
        return out

    def models(self, formulas: Iterable[Formula]) -> int:
        """Valuations satisfying every formula (all valuations if empty)."""
        out = self.full
        for f in formulas:
            out &= self.table(f)
            if not out:
                break
        return out


@lru_cache(maxsize=1 << 17)
def _entails(gamma: frozenset, phi: Formula) -> bool:
    tt = TruthTables(atoms_of(gamma) | atoms(phi))
    return tt.models(gamma) & ~tt.table(phi) == 0


def entails(gamma: Iterable[Formula], phi: Formula) -> bool:
    """``gamma |- phi`` in classical logic.

    Raises AtomLimitExceeded when more than 20 atoms are involved.
    """
    return _entails(frozenset(gamma), phi)


def is_consistent(gamma: Iterable[Formula]) -> bool:
    return not _entails(frozenset(gamma), FALSITY)


def equiv_under(gamma: Iterable[Formula], phi: Formula, psi: Formula) -> bool:
    """``phi`` and ``psi`` are interderivable given ``gamma``."""
    base = frozenset(gamma)
    return _entails(base | {phi}, psi) and _entails(base | {psi}, phi)


def clear_cache() -> None:
    _entails.cache_clear()
