import itertools
import random
from math import isqrt

import pytest
from hypothesis import given, strategies as st

from palctl import sequences as S
from palctl.words import BINARY, KOLAKOSKI_ALPHABET, WordError, cinf_derivative

dec = BINARY.decode


def mechanical(a: int, b: int, n: int) -> str:
    """Characteristic word of slope (a*n - sqrt(b*n^2)) / 2 using exact integer arithmetic."""
    def fl(m):  # floor(m * slope)
        return (a * m - isqrt(b * m * m) - 1) // 2
    return "".join(str(fl(m + 1) - fl(m)) for m in range(1, n + 1))


def paperfold_oracle(instr, n):
    out = []
    for i in range(1, n + 1):
        m = 0
        while i % 2 == 0:
            i //= 2
            m += 1
        out.append(str(((i - 1) // 2 + instr[m]) % 2))
    return "".join(out)


def test_prefix_basics():
    src = S.builtin("period-doubling")
    assert dec(src.prefix(4)) == "0100"
    assert src.prefix(0) == b""
    with pytest.raises(S.SourceError):
        src.prefix(-1)


def test_kolakoski_prefix():
    assert KOLAKOSKI_ALPHABET.decode(S.builtin("kolakoski").prefix(9)) == "221121221"


def test_kolakoski_runlengths_equal_sequence():
    w = S.builtin("kolakoski").prefix(200)
    runs = [len(list(g)) for _, g in itertools.groupby(w)]
    assert bytes(r - 1 for r in runs[:60]) == w[:60]


def test_kolakoski_derivatives_are_factors():
    w = S.builtin("kolakoski").prefix(20000)
    factors = {w[i:i + n] for n in range(1, 41) for i in range(0, 2000)}
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(3, 40)
        i = rng.randrange(0, 5000)
        d = cinf_derivative(w[i:i + n])
        assert d == b"" or d in factors or d in w


def test_chacon_prefix():
    assert dec(S.builtin("chacon").prefix(8)) == "00100010"


def test_champernowne_prefix():
    oracle = "".join(bin(k)[2:] for k in range(200))
    assert dec(S.builtin("champernowne-binary").prefix(500)) == oracle[:500]
    assert dec(S.builtin("champernowne-binary").prefix(7)) == "0110111"


@pytest.mark.parametrize("cf,a,b", [("1,...", 3, 5), ("2,...", 2, 2)])
def test_sturmian_matches_mechanical_word(cf, a, b):
    src = S.sturmian(S.parse_expansion(cf))
    assert dec(src.prefix(3000)) == mechanical(a, b, 3000)


def test_sturmian_golden_is_fibonacci():
    src = S.sturmian(itertools.repeat(1))
    assert dec(src.prefix(8)) == "01001010"
    assert src.prefix(5000) == S.builtin("fibonacci").prefix(5000)


def test_sturmian_short_expansion_errors():
    src = S.sturmian([1, 1, 1])
    with pytest.raises(S.SourceError):
        src.prefix(100)


def test_paperfolding_examples():
    assert dec(S.builtin("paperfolding-classical").prefix(3)) == "001"
    zeros = S.paperfolding(itertools.repeat(0))
    assert zeros.prefix(3)[2] == 1


@pytest.mark.parametrize("seed", range(4))
def test_paperfolding_matches_oracle(seed):
    rng = random.Random(seed)
    instr = [rng.randint(0, 1) for _ in range(20)]
    src = S.paperfolding(instr)
    assert dec(src.prefix(4000)) == paperfold_oracle(instr, 4000)
    for m in range(11):
        assert src.prefix(2 ** m)[-1] == instr[m]


def test_rudin_shapiro_partial_sums():
    u = S.builtin("paperfolding-classical").prefix(999)
    v = S.builtin("rudin-shapiro").prefix(1000)
    assert v[0] == 0
    acc = 0
    for i, x in enumerate(u, 1):
        acc ^= x
        assert v[i] == acc


def test_instruction_stream_too_short():
    with pytest.raises(S.SourceError):
        S.paperfolding([0, 1]).prefix(64)


def test_parse_expansion_forms():
    take = lambda t, d=False: list(itertools.islice(S.parse_expansion(t, d), 7))
    assert take("1,2,3") == [1, 2, 3]
    assert take("1,2,...") == [1, 2, 1, 2, 1, 2, 1]
    assert take("2,(1,3)") == [2, 1, 3, 1, 3, 1, 3]
    assert take("0(01)", True) == [0, 0, 1, 0, 1, 0, 1]
    with pytest.raises(S.SourceError):
        S.parse_expansion("1,x")


def test_rote_round_trip():
    beta = S.sturmian(itertools.repeat(1))
    rote = S.rote_from_sturmian(beta, 0)
    assert S.difference_mod2(rote).prefix(5000) == beta.prefix(5000)
    other = S.rote_from_sturmian(beta, 1)
    assert all(a ^ b == 1 for a, b in zip(rote.prefix(100), other.prefix(100)))


def test_rote_requires_binary():
    with pytest.raises(S.SourceError):
        S.rote_from_sturmian(S.morphic("ternary", {"a": "ab", "b": "c", "c": "a"}, "a"))


def test_pointwise_image_word_valued():
    src = S.builtin("image-example")
    base = S.morphic("base", S.IMAGE_EXAMPLE, "a").prefix(200)
    expected = "".join(S.IMAGE_EXAMPLE_MAP["abcd"[c]] for c in base)
    assert dec(src.prefix(300)) == expected[:300]


def test_pointwise_identity_and_partial_map():
    s = S.builtin("fibonacci")
    same = S.pointwise_image(s, {"0": "0", "1": "1"}, target=BINARY)
    assert same.prefix(500) == s.prefix(500)
    with pytest.raises(S.SourceError):
        S.pointwise_image(s, {"0": "1"})


REMCOR_W2 = "100110000000000000011001000000000000100110000000000110010000000010011"


def remcor_oracle(j):
    w = "1"
    for level in range(j):
        big = 2 ** (2 ** (level + 1))
        parts = [w]
        for i in range(1, 2 ** (2 ** level - 1) + 1):
            parts.append("0" * (big + 2 - 4 * i) + w[::-1] + "0" * (big - 4 * i) + w)
        w = "".join(parts)
    return w


def test_remcor_words():
    assert dec(S.remcor_word(1)) == "10011"
    assert dec(S.remcor_word(2)) == REMCOR_W2
    assert len(S.remcor_word(3)) == 4997
    assert dec(S.remcor_word(3)) == remcor_oracle(3)
    assert [S.remcor_length(j) for j in range(4)] == [len(remcor_oracle(j)) for j in range(4)]
    assert S.remcor_length(4) == 17995653


def test_remcor_limit_extends_words():
    src = S.builtin("remcor-limit")
    assert dec(src.prefix(4997)) == remcor_oracle(3)
    assert src.prefix(20000)[:4997] == S.remcor_word(3)


def test_remcor_budget():
    with pytest.raises(S.BudgetError):
        S.remcor_word(6)


def test_pansiot_block_structure():
    w = dec(S.builtin("pansiot-quadratic").prefix(5000))
    blocks = w.split("00")[1:-1]
    for n, b in enumerate(blocks[:200], 1):
        assert b == "1" * (1 + ((n & -n).bit_length() - 1))


def test_pansiot_cover_factors_are_factors():
    cover = S.pansiot_cover(30)
    w = S.builtin("pansiot-quadratic").prefix(1 << 18)
    segs = cover.split(bytes([S.PANSIOT_SEPARATOR]))
    # short factors of the cover are exactly those of the sequence
    for k in (1, 5, 9, 14):
        cover_f = {s[i:i + k] for s in segs for i in range(len(s) - k + 1)}
        seq_f = {w[i:i + k] for i in range(len(w) - k + 1)}
        assert cover_f == seq_f


def test_pansiot_factor_horizon():
    # the horizon prefix already holds every factor the cover lists
    w = S.builtin("pansiot-quadratic").prefix(S.pansiot_factor_horizon(14))
    segs = S.pansiot_cover(14).split(bytes([S.PANSIOT_SEPARATOR]))
    for k in range(1, 15):
        cover_f = {s[i:i + k] for s in segs for i in range(len(s) - k + 1)}
        end = S.pansiot_factor_horizon(k)
        assert cover_f <= {w[i:i + k] for i in range(end - k + 1)}


@pytest.mark.parametrize("name", S.BUILTIN_NAMES)
def test_extension_consistency(name):
    src = S.builtin(name)
    long = src.prefix(3000)
    fresh = S.builtin(name)
    for n in (0, 1, 17, 500, 3000):
        assert fresh.prefix(n) == long[:n]


def test_unknown_builtin():
    with pytest.raises(S.SourceError):
        S.builtin("nope")


@given(st.integers(0, 3000), st.integers(0, 3000))
def test_prefix_monotone(m, n):
    src = S.builtin("rudin-shapiro")
    a, b = sorted((m, n))
    assert src.prefix(b)[:a] == src.prefix(a)
