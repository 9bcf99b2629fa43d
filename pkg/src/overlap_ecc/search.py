"""Search for valid overlap address assignments.

A pair of layer assignments is valid when the composite double-error key
(lo(a) XOR lo(b), li(a) XOR li(b)) is distinct for every unordered data pair
{a, b}: that is exactly what lets the decoder resolve two data errors.  The
outer layer is fixed to the lexicographically smallest choice (the data
addresses in ascending order) and the inner layer is found by backtracking,
pruning any partial assignment that repeats a composite key.

The search is deterministic for a given seed.  Seed 0 tries candidate
addresses in ascending order at every step; any other seed shuffles the
candidate order per step with a seeded RNG, giving a cheap randomized-restart
knob while keeping runs reproducible.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .code import AddressAssignment, OverlapConfig
from .hamming import min_check_bits


def available_addresses(k: int) -> tuple:
    """Usable data addresses for k check bits: non-powers-of-two in [3, 2**k - 1]."""
    if k < 2:
        raise ValueError("need at least 2 check bits")
    return tuple(a for a in range(3, 1 << k) if a & (a - 1) != 0)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking one assignment pair, with collision witnesses."""

    ok: bool
    collisions: tuple = ()  # ((pair_a, pair_b, key), ...)

    def __bool__(self) -> bool:
        return self.ok


def validate_assignment(outer, inner) -> ValidationReport:
    """Check composite-key injectivity over all data pairs.

    Accepts AddressAssignment objects or plain address sequences.
    """
    lo = tuple(getattr(outer, "logical_of_physical", outer))
    li = tuple(getattr(inner, "logical_of_physical", inner))
    if len(lo) != len(li):
        raise ValueError("layers assign different numbers of positions")
    m = len(lo)
    seen = {}
    collisions = []
    for a in range(m):
        for b in range(a + 1, m):
            key = (lo[a] ^ lo[b], li[a] ^ li[b])
            if key in seen:
                collisions.append((seen[key], (a, b), key))
            else:
                seen[key] = (a, b)
    return ValidationReport(ok=not collisions, collisions=tuple(collisions))


class SearchNotFoundError(Exception):
    """No valid inner assignment exists under the given parameters."""

    def __init__(self, m: int, k: int, explored: int):
        self.m = m
        self.k = k
        self.explored = explored
        super().__init__(
            f"no valid assignment for m={m}, k={k} "
            f"(explored {explored} partial states)"
        )


@dataclass
class SearchResult:
    m: int
    k: int
    outer: tuple
    inner: tuple
    explored: int = field(default=0)

    def to_config(self, name: str, rows: int, cols: int) -> OverlapConfig:
        return OverlapConfig(
            name=name, rows=rows, cols=cols,
            outer=AddressAssignment.from_logical(self.outer, self.k),
            inner=AddressAssignment.from_logical(self.inner, self.k),
        )

    def to_json(self) -> str:
        return json.dumps(
            {"m": self.m, "k": self.k, "outer": list(self.outer), "inner": list(self.inner)},
            indent=2,
        )


def search_assignment(m: int, k: int | None = None, seed: int = 0) -> SearchResult:
    """Find a valid (outer, inner) assignment pair for m data bits.

    The outer layer takes the m smallest usable addresses in ascending
    order.  The inner layer is built position by position over the same
    address set; a partial choice is pruned as soon as two data pairs share
    a composite key.  Raises SearchNotFoundError (with the number of partial
    states explored) if the tree is exhausted.
    """
    if m < 2:
        raise ValueError("need at least 2 data bits")
    if k is None:
        k = min_check_bits(m)
    pool = available_addresses(k)
    if len(pool) < m:
        raise ValueError(f"k={k} offers only {len(pool)} data addresses, need {m}")

    outer = pool[:m]
    rng = random.Random(seed) if seed else None

    # outer XOR of every data pair, fixed once
    okey = [[outer[a] ^ outer[b] for b in range(m)] for a in range(m)]

    inner = [-1] * m
    used = [False] * len(pool)
    seen_keys: set = set()
    explored = 0

    def extend(pos: int) -> bool:
        nonlocal explored
        if pos == m:
            return True
        order = list(range(len(pool)))
        if rng is not None:
            rng.shuffle(order)
        for idx in order:
            if used[idx]:
                continue
            cand = pool[idx]
            new_keys = []
            ok = True
            for prev in range(pos):
                key = (okey[prev][pos], inner[prev] ^ cand)
                if key in seen_keys or key in new_keys:
                    ok = False
                    break
                new_keys.append(key)
            explored += 1
            if not ok:
                continue
            inner[pos] = cand
            used[idx] = True
            seen_keys.update(new_keys)
            if extend(pos + 1):
                return True
            inner[pos] = -1
            used[idx] = False
            seen_keys.difference_update(new_keys)
        return False

    if not extend(0):
        raise SearchNotFoundError(m, k, explored)
    return SearchResult(m=m, k=k, outer=tuple(outer), inner=tuple(inner), explored=explored)
