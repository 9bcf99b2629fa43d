"""Codec behavior: encode, syndromes, the decoder ladder, serialization."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from overlap_ecc.code import (
    BUILTIN_NAMES,
    AddressAssignment,
    Codestruct,
    OverlapConfig,
    as_bits,
    build_double_error_table,
    builtin_config,
    decode,
    derive_check_equations,
    encode,
    recompute_and_syndromes,
)


def flip(cs: Codestruct, cfg: OverlapConfig, *positions) -> Codestruct:
    bits = list(cs.bits())
    for p in positions:
        bits[p] ^= 1
    return Codestruct.from_bits(bits, cfg.m, cfg.k)


# --- encoding --------------------------------------------------------------

def test_encode_3x3_worked_example():
    cfg = builtin_config("3x3")
    cs = encode(cfg, "100000000")
    assert cs.co == (1, 0, 1, 1)
    assert cs.po == 0
    assert cs.ci == (1, 0, 0, 1)
    assert cs.pi == 1


def test_encode_zero_payload_is_all_zero():
    for name in BUILTIN_NAMES:
        cfg = builtin_config(name)
        cs = encode(cfg, (0,) * cfg.m)
        assert set(cs.bits()) == {0}
        assert len(cs.bits()) == cfg.n


def test_check_equations_match_addresses():
    cfg = builtin_config("3x3")
    eqs = derive_check_equations(cfg, "outer")
    # check j covers exactly the positions whose address carries 2**(k-1-j)
    for j, cover in enumerate(eqs):
        weight = 1 << (cfg.k - 1 - j)
        expect = {p for p, a in enumerate(cfg.outer.logical_of_physical) if a & weight}
        assert set(cover) == expect
    with pytest.raises(ValueError):
        derive_check_equations(cfg, "sideways")


def test_single_data_flip_reads_both_addresses():
    cfg = builtin_config("3x3")
    cs = flip(encode(cfg, (0,) * 9), cfg, 4)  # position D4
    syn = recompute_and_syndromes(cfg, cs)
    assert syn.ear_outer == cfg.outer.logical_of_physical[4] == 12
    assert syn.ear_inner == cfg.inner.logical_of_physical[4] == 10
    assert syn.s_po == 1 and syn.s_pi == 1


def test_double_table_worked_entries():
    table = build_double_error_table(builtin_config("3x3"))
    assert table[(6, 14)] == (0, 1)
    assert table[(15, 1)] == (3, 5)
    assert len(table) == 36  # C(9,2)


# --- decoding ladder -------------------------------------------------------

def test_decode_clean_word():
    for name in BUILTIN_NAMES:
        cfg = builtin_config(name)
        out = decode(cfg, encode(cfg, (1, 0) * (cfg.m // 2) + (1,) * (cfg.m % 2)))
        assert not out.detected
        assert out.action is None


def test_decode_single_data_error():
    cfg = builtin_config("3x3")
    clean = encode(cfg, "110010011")
    for pos in range(cfg.m):
        out = decode(cfg, flip(clean, cfg, pos))
        assert out.detected
        assert out.action.kind in ("single_outer", "single_inner")
        assert out.data == clean.data


def test_decode_single_check_bit_error():
    cfg = builtin_config("3x3")
    clean = encode(cfg, "101110001")
    for pos in range(cfg.m, cfg.n):
        out = decode(cfg, flip(clean, cfg, pos))
        assert out.detected
        assert out.data == clean.data  # data untouched, error confined to checks


def test_decode_double_data_error_uses_pair_table():
    cfg = builtin_config("3x3")
    clean = encode(cfg, "010101110")
    out = decode(cfg, flip(clean, cfg, 2, 7))
    assert out.action.kind == "double_pair"
    assert sorted(out.action.positions) == [2, 7]
    assert out.data == clean.data


def test_decode_parity_plus_data_is_single():
    # data flip plus the outer parity bit: inner layer sees a clean single
    cfg = builtin_config("3x3")
    clean = encode(cfg, (0,) * 9)
    out = decode(cfg, flip(clean, cfg, 3, cfg.po_pos))
    assert out.data == clean.data


# --- decode profiles -------------------------------------------------------

def test_builtin_profiles():
    assert builtin_config("2x2").decode_profile == "single_first"
    assert builtin_config("3x3").decode_profile == "single_first"
    assert builtin_config("4x4").decode_profile == "double_first"


def test_unknown_profile_rejected():
    cfg = builtin_config("2x2")
    with pytest.raises(ValueError):
        OverlapConfig(name="x", rows=2, cols=2, outer=cfg.outer, inner=cfg.inner,
                      decode_profile="pairs_last")


def _with_profile(cfg: OverlapConfig, profile: str) -> OverlapConfig:
    return OverlapConfig(name=cfg.name, rows=cfg.rows, cols=cfg.cols,
                         outer=cfg.outer, inner=cfg.inner, decode_profile=profile)


def test_profiles_agree_up_to_two_errors():
    rng = random.Random(11)
    base = builtin_config("4x4")
    single = _with_profile(base, "single_first")
    double = _with_profile(base, "double_first")
    clean = encode(base, tuple(rng.randrange(2) for _ in range(base.m)))
    patterns = [(p,) for p in range(base.n)]
    patterns += [(a, b) for a in range(base.n) for b in range(a + 1, base.n)]
    for pat in patterns:
        cs = flip(clean, base, *pat)
        a = decode(single, cs)
        b = decode(double, cs)
        assert a.data == b.data
        assert a.detected == b.detected


def test_double_first_repairs_pair_plus_outer_parity():
    # {data, data, po}: the pair's composite key is intact and the inner
    # parity is even, so the up-front table probe repairs it; the
    # single-first ladder instead trusts s_po=1 and mis-flips.
    cfg = builtin_config("4x4")
    clean = encode(cfg, (0,) * 16)
    cs = flip(clean, cfg, 0, 1, cfg.po_pos)
    assert decode(cfg, cs).data == clean.data
    assert decode(_with_profile(cfg, "single_first"), cs).data != clean.data


def test_double_first_miss_falls_through_to_single():
    # {data, ci_j}: both addresses nonzero, s_pi=0, but the composite key
    # is no pair's key; the probe must miss and the outer single fix land.
    cfg = builtin_config("4x4")
    clean = encode(cfg, (0,) * 16)
    for j in range(cfg.k):
        out = decode(cfg, flip(clean, cfg, 5, cfg.ci_start + j))
        assert out.data == clean.data


# --- serialization ---------------------------------------------------------

def test_hex_round_trip_examples():
    cfg = builtin_config("3x3")
    cs = encode(cfg, "100000000")
    assert cs.to_hex() == "805a6"
    assert Codestruct.from_hex("805a6", cfg.m, cfg.k) == cs
    with pytest.raises(ValueError):
        Codestruct.from_hex("805a", cfg.m, cfg.k)  # too short
    with pytest.raises(ValueError):
        Codestruct.from_hex("805a7", cfg.m, cfg.k)  # padding bit set
    with pytest.raises(ValueError):
        Codestruct.from_hex("80zzz", cfg.m, cfg.k)


@settings(deadline=None, max_examples=60)
@given(st.sampled_from(BUILTIN_NAMES), st.data())
def test_serialization_round_trips(name, data):
    cfg = builtin_config(name)
    payload = tuple(data.draw(st.lists(st.integers(0, 1), min_size=cfg.m,
                                       max_size=cfg.m)))
    cs = encode(cfg, payload)
    assert Codestruct.from_hex(cs.to_hex(), cfg.m, cfg.k) == cs
    assert Codestruct.from_json_dict(cs.to_json_dict()) == cs
    assert Codestruct.from_bits(cs.bits(), cfg.m, cfg.k) == cs


def test_as_bits_validation():
    assert as_bits("0101") == (0, 1, 0, 1)
    assert as_bits([1, 0], 2) == (1, 0)
    with pytest.raises(ValueError):
        as_bits("01a1")
    with pytest.raises(ValueError):
        as_bits("011", 4)
    with pytest.raises(ValueError):
        as_bits([0, 2])


# --- config validation -----------------------------------------------------

def test_assignment_rejects_bad_addresses():
    with pytest.raises(ValueError):
        AddressAssignment.from_logical((3, 4, 6, 7), k=3)  # 4 is a power of two
    with pytest.raises(ValueError):
        AddressAssignment.from_logical((3, 5, 6, 3), k=3)  # reused
    with pytest.raises(ValueError):
        AddressAssignment.from_logical((3, 5, 6, 9), k=3)  # out of range


def test_config_rejects_mismatched_layers():
    out3 = AddressAssignment.from_logical((3, 5, 6, 7), k=3)
    inn4 = AddressAssignment.from_logical((3, 5, 6, 7), k=4)
    with pytest.raises(ValueError):
        OverlapConfig(name="x", rows=2, cols=2, outer=out3, inner=inn4)


def test_builtin_config_unknown_name():
    with pytest.raises(ValueError):
        builtin_config("5x5")
