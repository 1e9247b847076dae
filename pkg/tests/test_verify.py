import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cached_gset
from gsetbench.instances import ProblemInstance
from gsetbench.model import spins_to_bits
from gsetbench.verify import (
    HexDecodeError,
    HexSolution,
    bundled_solution,
    certify,
    decode_hex_solution,
    encode_hex_solution,
    format_solution_file,
    parse_solution_file,
)


def naive_decode(hex_string: str, n: int) -> list[int]:
    """Per-character reference: int(c, 16) rendered as 4 binary digits."""
    bits = "".join(format(int(c, 16), "04b") for c in hex_string)
    return [int(b) for b in bits[:n]]


def bits_of(cfg) -> list[int]:
    return spins_to_bits(cfg).tolist()


@pytest.mark.parametrize("text, n, bits", [("F", 4, [1, 1, 1, 1]), ("A", 4, [1, 0, 1, 0]), ("a", 3, [1, 0, 1])])
def test_decode_examples(text, n, bits):
    assert bits_of(decode_hex_solution(HexSolution(text, n))) == bits


def test_encode_example():
    assert encode_hex_solution([-1, -1, -1, -1]) == "F"
    assert encode_hex_solution([-1, 1, -1]) == "A"


@pytest.mark.parametrize("n", range(1, 17))
def test_decode_exhaustive_against_naive(n):
    chars = -(-n // 4)
    for code in range(16**chars):
        hs = f"{code:0{chars}X}"
        assert bits_of(decode_hex_solution(HexSolution(hs, n))) == naive_decode(hs, n)
        if n >= 12:  # keep it to 2**16 patterns
            break


@given(st.integers(1, 64).flatmap(lambda n: st.tuples(st.just(n), st.text("0123456789abcdefABCDEF", min_size=-(-n // 4), max_size=-(-n // 4)))))
@settings(max_examples=500, deadline=None)
def test_decode_matches_naive_up_to_64(case):
    n, hs = case
    assert bits_of(decode_hex_solution(HexSolution(hs, n))) == naive_decode(hs, n)


def test_exhaustive_n16_all_patterns():
    codes = np.arange(1 << 16)
    for code in itertools.islice(codes, 0, None, 97):
        hs = f"{code:04x}"
        assert bits_of(decode_hex_solution(HexSolution(hs, 16))) == naive_decode(hs, 16)


@pytest.mark.parametrize("n", list(range(1, 65)) + [10_000])
def test_round_trip(n):
    rng = np.random.default_rng(n)
    for _ in range(1000 if n <= 64 else 20):
        cfg = rng.choice(np.array([1, -1], dtype=np.int8), size=n)
        text = encode_hex_solution(cfg)
        assert len(text) == -(-n // 4)
        assert text == text.upper()
        assert np.array_equal(decode_hex_solution(HexSolution(text, n)), cfg)


def test_padding_bits_are_zero():
    assert encode_hex_solution([-1]) == "8"
    assert encode_hex_solution([-1] * 5) == "F8"


@pytest.mark.parametrize(
    "text, n, fragment",
    [("G0", 8, "non-hex"), ("F", 5, "fewer than"), ("FF", 4, "padding"), ("", 1, "fewer than")],
)
def test_invalid_hex(text, n, fragment):
    with pytest.raises(HexDecodeError, match=fragment):
        HexSolution(text, n)


def test_whitespace_is_stripped():
    assert HexSolution("A B\n\tC", 12).hex == "ABC"


def test_certify_mismatch_is_a_field_not_an_error():
    inst = ProblemInstance("one", 2, [(1, 2, 1)])
    rep = certify(inst, [1, -1], claimed=2)
    assert (rep.cut, rep.matches_claim, rep.quality, rep.verdict) == (1, False, None, "MISMATCH")
    assert certify(inst, [1, -1]).verdict == "NO-CLAIM"


def test_certify_quality_against_registry():
    # a G72-labelled toy: quality is reported against the registry value
    inst = ProblemInstance("G72", 2, [(1, 2, 7008)])
    rep = certify(inst, [1, -1], claimed=7008)
    assert rep.quality == 1.0 and rep.matches_claim


def test_certify_length_mismatch():
    with pytest.raises(ValueError, match="length"):
        certify(ProblemInstance("x", 2, [(1, 2, 1)]), [1, 1, 1])


def test_solution_file_round_trip():
    cfg = np.array([1, -1, -1, 1, 1, 1, -1], dtype=np.int8)
    text = format_solution_file(cfg, instance="G72", claimed=3, comment="found by sa")
    assert text.startswith("# found by sa\ninstance=G72 n=7 claimed=3\n")
    parsed = parse_solution_file(text)
    assert (parsed.instance, parsed.n, parsed.claimed) == ("G72", 7, 3)
    assert np.array_equal(decode_hex_solution(parsed.solution()), cfg)


def test_solution_file_header_n_conflict():
    with pytest.raises(HexDecodeError, match="n=7"):
        parse_solution_file("n=7\n00\n").solution(8)


def test_bundled_assets_shape():
    g72 = bundled_solution("G72")
    assert (g72.instance, g72.n, g72.claimed) == ("G72", 10000, 7008)
    assert len(g72.hex) == 2500
    assert g72.hex.startswith("AB09C32B897F1290") and g72.hex.endswith("E2FC46342F")
    g77 = bundled_solution("G77")
    assert (g77.instance, g77.n, g77.claimed) == ("G77", 14000, 9940)
    assert g77.hex.startswith("C4AC172AA225AFFE") and g77.hex.endswith("B12E289")


def test_g72_asset_round_trips_through_codec():
    g72 = bundled_solution("G72")
    cfg = decode_hex_solution(g72.solution())
    assert encode_hex_solution(cfg) == g72.hex


def test_g77_asset_is_short_and_rejected():
    # the published string carries 13988 bits for 14000 variables
    g77 = bundled_solution("G77")
    assert len(g77.hex) == 3497
    with pytest.raises(HexDecodeError, match="13988 bits, fewer than n=14000"):
        g77.solution()
    cfg = decode_hex_solution(HexSolution(g77.hex, 4 * len(g77.hex)))
    assert encode_hex_solution(cfg) == g77.hex


@pytest.mark.parametrize("instance_id, value", [("G72", 7008), ("G77", 9940)])
def test_record_certification_when_cached(instance_id, value):
    inst = cached_gset(instance_id)
    if inst is None:
        pytest.skip(f"{instance_id} not cached")
    sol = bundled_solution(instance_id)
    rep = certify(inst, decode_hex_solution(sol.solution(inst.n)), claimed=sol.claimed)
    assert rep.cut == value and rep.matches_claim and rep.quality == 1.0
