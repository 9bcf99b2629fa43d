"""Overlapping extended-Hamming codec.

Two extended Hamming codes -- called the outer and inner layers -- protect
the same data bits.  Each layer assigns every physical data position its own
logical Hamming address, and the two layers use *different* address
permutations.  A single data error is corrected by either layer alone; a
pair of data errors produces the XOR of the two addresses in each layer, and
because the permutations differ, the composite (outer, inner) address pair
identifies the error pair uniquely via a precomputed table.

Serialized codestruct layout (used by fault injection and the hex/JSON text
forms), for m data bits and k check bits per layer:

    [0, m)              data, row-major
    [m, m+k)            outer check bits co (co[0] most significant)
    m+k                 outer parity po
    [m+k+1, m+2k+1)     inner check bits ci
    m+2k+1              inner parity pi

Decoding is table-driven.  Check bits are never corrected: they are
recomputable from corrected data, so only the data region is repaired.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .hamming import min_check_bits

BitVec = tuple  # ordered 0/1 ints


def as_bits(value, length: int | None = None) -> BitVec:
    """Normalize a bit sequence ('0101', [0,1,0,1], ...) to a tuple of ints."""
    if isinstance(value, str):
        try:
            bits = tuple(int(ch) for ch in value)
        except ValueError:
            raise ValueError(f"not a bit string: {value!r}") from None
    else:
        bits = tuple(value)
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bit values must be 0 or 1, got {b!r}")
    if length is not None and len(bits) != length:
        raise ValueError(f"expected {length} bits, got {len(bits)}")
    return bits


@dataclass(frozen=True)
class AddressAssignment:
    """Logical-address permutation of one layer.

    ``logical_of_physical[p]`` is the Hamming address of data position p;
    ``physical_of_logical`` is the inverse lookup (length 2**k, -1 for
    address 0, the power-of-two check addresses and any spare addresses).
    """

    k: int
    logical_of_physical: BitVec
    physical_of_logical: BitVec

    @classmethod
    def from_logical(cls, logical: Sequence[int], k: int) -> "AddressAssignment":
        logical = tuple(int(a) for a in logical)
        top = 1 << k
        inverse = [-1] * top
        for pos, addr in enumerate(logical):
            if not 3 <= addr < top or addr & (addr - 1) == 0:
                raise ValueError(
                    f"address {addr} at position {pos} is not a usable data "
                    f"address for k={k} (must be in [3, {top - 1}] and not a "
                    f"power of two)"
                )
            if inverse[addr] != -1:
                raise ValueError(f"address {addr} assigned twice")
            inverse[addr] = pos
        return cls(k=k, logical_of_physical=logical, physical_of_logical=tuple(inverse))

    def __len__(self) -> int:
        return len(self.logical_of_physical)


#: decode-ladder profiles supported by :func:`decode` (see its docstring).
DECODE_PROFILES = ("single_first", "double_first")


@dataclass(frozen=True)
class OverlapConfig:
    """Geometry plus the two address assignments; everything else derives.

    ``decode_profile`` selects the branch order of the decoder ladder:
    ``"single_first"`` (default) tries the per-layer single-error fixes
    before the composite pair table, ``"double_first"`` probes the pair
    table up front whenever the inner parity syndrome is clean and falls
    back to the single-error branches on a miss.  The profiles behave
    identically for up to two errors; they differ in which 3+-error
    patterns happen to alias onto correctable signatures.
    """

    name: str
    rows: int
    cols: int
    outer: AddressAssignment
    inner: AddressAssignment
    decode_profile: str = "single_first"

    def __post_init__(self):
        m = self.rows * self.cols
        if len(self.outer) != m or len(self.inner) != m:
            raise ValueError("both layers must assign every data position")
        if self.outer.k != self.inner.k:
            raise ValueError("layers must use the same check-bit count")
        if self.k < min_check_bits(m):
            raise ValueError(f"k={self.k} cannot address {m} data bits")
        if self.decode_profile not in DECODE_PROFILES:
            raise ValueError(f"unknown decode profile {self.decode_profile!r}; "
                             f"expected one of {DECODE_PROFILES}")

    @property
    def m(self) -> int:
        return self.rows * self.cols

    @property
    def k(self) -> int:
        return self.outer.k

    @property
    def n(self) -> int:
        return self.m + 2 * (self.k + 1)

    # serialized layout offsets
    @property
    def co_start(self) -> int:
        return self.m

    @property
    def po_pos(self) -> int:
        return self.m + self.k

    @property
    def ci_start(self) -> int:
        return self.m + self.k + 1

    @property
    def pi_pos(self) -> int:
        return self.m + 2 * self.k + 1


@dataclass(frozen=True)
class Codestruct:
    """One encoded word: data plus both layers' check and parity bits."""

    data: BitVec
    co: BitVec
    po: int
    ci: BitVec
    pi: int

    def bits(self) -> BitVec:
        """Serialized layout: data, co, po, ci, pi."""
        return self.data + self.co + (self.po,) + self.ci + (self.pi,)

    @classmethod
    def from_bits(cls, bits: Sequence[int], m: int, k: int) -> "Codestruct":
        b = as_bits(bits, m + 2 * (k + 1))
        return cls(
            data=b[:m],
            co=b[m : m + k],
            po=b[m + k],
            ci=b[m + k + 1 : m + 2 * k + 1],
            pi=b[m + 2 * k + 1],
        )

    def to_hex(self) -> str:
        """Lowercase hex of the bit layout, position 0 = MSB of the first digit.

        The tail is zero-padded to a nibble boundary.
        """
        bits = self.bits()
        digits = []
        for i in range(0, len(bits), 4):
            nibble = 0
            for j, b in enumerate(bits[i : i + 4]):
                nibble |= b << (3 - j)
            digits.append(f"{nibble:x}")
        return "".join(digits)

    @classmethod
    def from_hex(cls, text: str, m: int, k: int) -> "Codestruct":
        n = m + 2 * (k + 1)
        want_digits = (n + 3) // 4
        text = text.strip().lower()
        if len(text) != want_digits:
            raise ValueError(f"expected {want_digits} hex digits for n={n}, got {len(text)}")
        try:
            value = int(text, 16)
        except ValueError:
            raise ValueError(f"not a hex string: {text!r}") from None
        total = want_digits * 4
        bits = tuple((value >> (total - 1 - i)) & 1 for i in range(total))
        if any(bits[n:]):
            raise ValueError("padding bits past the codestruct length must be zero")
        return cls.from_bits(bits[:n], m, k)

    def to_json_dict(self) -> dict:
        return {
            "data": "".join(map(str, self.data)),
            "co": "".join(map(str, self.co)),
            "po": str(self.po),
            "ci": "".join(map(str, self.ci)),
            "pi": str(self.pi),
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "Codestruct":
        data = as_bits(obj["data"])
        co = as_bits(obj["co"])
        ci = as_bits(obj["ci"], len(co))
        (po,) = as_bits(obj["po"], 1)
        (pi,) = as_bits(obj["pi"], 1)
        return cls(data=data, co=co, po=po, ci=ci, pi=pi)


@dataclass(frozen=True)
class SyndromeSet:
    """Raw syndromes of both layers plus the derived flags the decoder uses."""

    s_co: BitVec
    s_po: int
    s_ci: BitVec
    s_pi: int
    ear_outer: int  # outer error address: s_co[j] weighted 2**(k-1-j)
    ear_inner: int

    @property
    def outer_nonzero(self) -> int:
        return 1 if self.ear_outer else 0

    @property
    def inner_nonzero(self) -> int:
        return 1 if self.ear_inner else 0

    @property
    def se_outer(self) -> bool:
        return bool(self.outer_nonzero and self.s_po)

    @property
    def de_outer(self) -> bool:
        return bool(self.outer_nonzero and not self.s_po)

    @property
    def se_inner(self) -> bool:
        return bool(self.inner_nonzero and self.s_pi)

    @property
    def de_inner(self) -> bool:
        return bool(self.inner_nonzero and not self.s_pi)

    @property
    def detected(self) -> bool:
        """OR over every syndrome bit, evaluated before any correction."""
        return bool(self.ear_outer or self.ear_inner or self.s_po or self.s_pi)


@dataclass(frozen=True)
class DecodeAction:
    """What the decoder did: kind plus the data positions it flipped."""

    kind: str  # "single_outer" | "single_inner" | "double_pair" | "detected_only"
    positions: tuple = ()


@dataclass(frozen=True)
class DecodeOutcome:
    data: BitVec
    detected: bool
    action: DecodeAction | None
    codestruct: Codestruct
    syndromes: SyndromeSet


class DoubleErrorTable:
    """Lookup from composite (outer, inner) error addresses to a data pair.

    Every unordered data pair {a, b} is keyed by
    (lo(a) XOR lo(b), li(a) XOR li(b)); valid assignments make these keys
    unique, which construction enforces.
    """

    def __init__(self, entries: Mapping):
        self._entries = dict(entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __getitem__(self, key) -> tuple:
        return self._entries[key]

    def get(self, key, default=None):
        return self._entries.get(key, default)

    def items(self):
        return self._entries.items()


@functools.lru_cache(maxsize=None)
def build_double_error_table(cfg: OverlapConfig) -> DoubleErrorTable:
    """Composite-address table over all C(m,2) data pairs; raises on collision."""
    lo = cfg.outer.logical_of_physical
    li = cfg.inner.logical_of_physical
    entries = {}
    for a in range(cfg.m):
        for b in range(a + 1, cfg.m):
            key = (lo[a] ^ lo[b], li[a] ^ li[b])
            if key in entries:
                raise ValueError(
                    f"composite address collision: pairs {entries[key]} and "
                    f"{(a, b)} both map to {key}"
                )
            entries[key] = (a, b)
    return DoubleErrorTable(entries)


def derive_check_equations(cfg: OverlapConfig, layer: str = "outer") -> tuple:
    """Data positions covered by each check bit of one layer.

    Check bit j (j=0 most significant) covers every data position whose
    logical address has bit 2**(k-1-j) set.
    """
    if layer == "outer":
        logical = cfg.outer.logical_of_physical
    elif layer == "inner":
        logical = cfg.inner.logical_of_physical
    else:
        raise ValueError(f"layer must be 'outer' or 'inner', got {layer!r}")
    k = cfg.k
    return tuple(
        tuple(p for p, addr in enumerate(logical) if addr >> (k - 1 - j) & 1)
        for j in range(k)
    )


def encode(cfg: OverlapConfig, data) -> Codestruct:
    """Encode m data bits: per-layer check bits plus an overall parity each.

    Each parity bit covers all data bits and that layer's check bits, turning
    the plain Hamming layer into an extended (distance-4) one.
    """
    d = as_bits(data, cfg.m)
    co = tuple(_xor_over(d, cover) for cover in derive_check_equations(cfg, "outer"))
    ci = tuple(_xor_over(d, cover) for cover in derive_check_equations(cfg, "inner"))
    all_data = _xor_all(d)
    po = all_data ^ _xor_all(co)
    pi = all_data ^ _xor_all(ci)
    return Codestruct(data=d, co=co, po=po, ci=ci, pi=pi)


def _xor_over(bits: Sequence[int], positions: Iterable[int]) -> int:
    v = 0
    for p in positions:
        v ^= bits[p]
    return v


def _xor_all(bits: Iterable[int]) -> int:
    v = 0
    for b in bits:
        v ^= b
    return v


def recompute_and_syndromes(cfg: OverlapConfig, cs: Codestruct) -> SyndromeSet:
    """Syndromes of a stored codestruct.

    Check syndromes compare stored check bits against checks recomputed from
    stored data.  Parity syndromes compare the stored parity against a parity
    recomputed from stored data XOR *stored* (not recomputed) check bits, so
    a lone check-bit flip shows up in both the address and the parity.
    """
    if len(cs.data) != cfg.m or len(cs.co) != cfg.k or len(cs.ci) != cfg.k:
        raise ValueError("codestruct does not match config geometry")
    k = cfg.k
    s_co = tuple(
        _xor_over(cs.data, cover) ^ cs.co[j]
        for j, cover in enumerate(derive_check_equations(cfg, "outer"))
    )
    s_ci = tuple(
        _xor_over(cs.data, cover) ^ cs.ci[j]
        for j, cover in enumerate(derive_check_equations(cfg, "inner"))
    )
    all_data = _xor_all(cs.data)
    s_po = all_data ^ _xor_all(cs.co) ^ cs.po
    s_pi = all_data ^ _xor_all(cs.ci) ^ cs.pi
    ear_o = 0
    ear_i = 0
    for j in range(k):
        ear_o |= s_co[j] << (k - 1 - j)
        ear_i |= s_ci[j] << (k - 1 - j)
    return SyndromeSet(s_co=s_co, s_po=s_po, s_ci=s_ci, s_pi=s_pi,
                       ear_outer=ear_o, ear_inner=ear_i)


def decode(cfg: OverlapConfig, cs: Codestruct) -> DecodeOutcome:
    """Table-driven single/double-error decoder.

    Branch order matters.  With the default ``single_first`` profile:

    1. either layer's error address is zero -> no correction (that layer saw
       nothing, or only its own parity/check bits are hit);
    2. outer sees a single error (odd outer parity) -> flip the addressed
       data bit, if the address maps to one;
    3. inner sees a single error -> same via the inner table;
    4. both layers see doubles (even parities, both addresses nonzero) ->
       look up the composite-address pair table; flip both positions on a
       hit, otherwise report detection only.

    With ``double_first`` (used by the 4x4 builtin) the pair table is probed
    *before* steps 2-3 whenever both addresses are nonzero and the inner
    parity syndrome is even; a table miss falls through to the single-error
    branches instead of stopping.  Both profiles agree on every <=2-error
    pattern; the reordering only changes which higher-weight patterns alias
    onto a correctable signature (notably, a data pair plus the outer parity
    bit still presents the pair's exact composite key and is repaired).

    Check bits are never corrected.  ``detected`` is the OR of all syndrome
    bits, evaluated before correction.
    """
    syn = recompute_and_syndromes(cfg, cs)
    detected = syn.detected
    action: DecodeAction | None = None
    new_data = cs.data

    if syn.ear_outer == 0 or syn.ear_inner == 0:
        if detected:
            action = DecodeAction("detected_only")
        fixed = Codestruct(data=new_data, co=cs.co, po=cs.po, ci=cs.ci, pi=cs.pi)
        return DecodeOutcome(data=new_data, detected=detected, action=action,
                             codestruct=fixed, syndromes=syn)

    key = (syn.ear_outer, syn.ear_inner)
    if cfg.decode_profile == "double_first" and not syn.s_pi:
        pair = build_double_error_table(cfg).get(key)
        if pair is not None:
            new_data = _flip(new_data, pair)
            action = DecodeAction("double_pair", pair)
    if action is None:
        if syn.s_po:  # single error according to the outer layer
            pos = cfg.outer.physical_of_logical[syn.ear_outer]
            if pos >= 0:
                new_data = _flip(new_data, (pos,))
                action = DecodeAction("single_outer", (pos,))
            else:
                action = DecodeAction("detected_only")
        elif syn.s_pi:  # single error according to the inner layer
            pos = cfg.inner.physical_of_logical[syn.ear_inner]
            if pos >= 0:
                new_data = _flip(new_data, (pos,))
                action = DecodeAction("single_inner", (pos,))
            else:
                action = DecodeAction("detected_only")
        else:  # both layers report doubles
            pair = build_double_error_table(cfg).get(key)
            if pair is not None:
                new_data = _flip(new_data, pair)
                action = DecodeAction("double_pair", pair)
            else:
                action = DecodeAction("detected_only")

    fixed = Codestruct(data=new_data, co=cs.co, po=cs.po, ci=cs.ci, pi=cs.pi)
    return DecodeOutcome(data=new_data, detected=detected, action=action,
                         codestruct=fixed, syndromes=syn)


def _flip(bits: BitVec, positions: Iterable[int]) -> BitVec:
    out = list(bits)
    for p in positions:
        out[p] ^= 1
    return tuple(out)


# --- builtin configurations ----------------------------------------------
#
# The 3x3 maps are the reference ones this codec family was validated
# against.  The 2x2 map was produced by search.search_assignment (seed noted
# below) and is frozen here so every build uses identical tables; a test
# regenerates it from the seed and compares.
#
# The 4x4 map comes from a constrained randomized search run once and frozen.
# Plain validity (injective pair keys) is not enough at this size: the map
# additionally (a) avoids pair-table keys that low-weight check-bit patterns
# can present, so exhaustive check-region sweeps stay clean through three
# errors under the double_first ladder, (b) has no four data positions whose
# addresses XOR to zero in both layers at once, keeping every 4-error pattern
# detectable, and (c) uses mostly even-weight addresses, which minimizes the
# single-error aliases reachable from check-bit-only corruption.  The
# acceptance sweep in tests/test_acceptance.py locks in the resulting rates.

_BUILTIN = {
    "2x2": {
        "rows": 2, "cols": 2, "k": 3,
        # search_assignment(m=4, k=3, seed=2)
        "outer": (3, 5, 6, 7),
        "inner": (5, 7, 3, 6),
    },
    "3x3": {
        "rows": 3, "cols": 3, "k": 4,
        "outer": (11, 13, 3, 10, 12, 5, 14, 6, 15),
        "inner": (9, 7, 14, 13, 10, 12, 5, 3, 15),
    },
    "4x4": {
        "rows": 4, "cols": 4, "k": 5,
        "outer": (17, 24, 29, 10, 15, 3, 23, 26, 12, 6, 18, 5, 20, 27, 31, 9),
        "inner": (6, 9, 5, 29, 23, 24, 20, 18, 30, 17, 12, 3, 27, 15, 26, 10),
        "decode_profile": "double_first",
    },
}

BUILTIN_NAMES = tuple(sorted(_BUILTIN))


@functools.lru_cache(maxsize=None)
def builtin_config(name: str) -> OverlapConfig:
    """One of the shipped configurations: '2x2', '3x3' or '4x4'."""
    key = name.lower()
    if key not in _BUILTIN:
        raise ValueError(f"unknown code {name!r}; available: {', '.join(BUILTIN_NAMES)}")
    spec = _BUILTIN[key]
    return OverlapConfig(
        name=key,
        rows=spec["rows"],
        cols=spec["cols"],
        outer=AddressAssignment.from_logical(spec["outer"], spec["k"]),
        inner=AddressAssignment.from_logical(spec["inner"], spec["k"]),
        decode_profile=spec.get("decode_profile", "single_first"),
    )
