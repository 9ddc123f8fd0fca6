import pytest

from palctl import sequences as S
from palctl.formats import FormatError, format_morphism, parse_morphism, read_morphism
from palctl.words import Morphism

GOOD = """# period doubling
alphabet: 0 1
rule: 0 -> 0 1   # trailing comment
rule: 1 -> 0 0
seed: 0
"""


def test_parse_good():
    mf = parse_morphism(GOOD)
    assert mf.morphism == Morphism.from_rules(S.PERIOD_DOUBLING)
    assert mf.seed == 0


def test_compact_images_and_multichar_letters():
    assert parse_morphism("alphabet: a b\nrule: a -> abba\nrule: b -> baab\n").morphism == \
        Morphism.from_rules(S.THUE_MORSE_SQUARED)
    mf = parse_morphism("alphabet: x10 y\nrule: x10 -> x10 y\nrule: y -> x10\n")
    assert mf.morphism.images == (b"\x00\x01", b"\x00")


@pytest.mark.parametrize("text,line,fragment", [
    ("alphabet: 0 1\nrule: 0 -> 0 1\nrule 1 -> 0\n", 3, "key: value"),
    ("alphabet: 0 1\nrule: 0 -> 0 2\nrule: 1 -> 0\n", 2, "unknown letter"),
    ("alphabet: 0 1\nrule: 0 -> 0 1\n", 2, "no rule for 1"),
    ("alphabet: 0 0\n", 1, "duplicate"),
    ("alphabet: 0 1\nrule: 0 -> 01\nrule: 1 -> 0\nseed: 2\n", 4, "seed"),
    ("alphabet: 0 1\nrule: 0 -> 01\nrule: 0 -> 1\n", 3, "second rule"),
    ("alphabet: 0 1\nrule: 0 01\n", 2, "->"),
    ("colour: red\n", 1, "unknown directive"),
])
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(FormatError) as info:
        parse_morphism(text, "m.txt")
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"m.txt:{line}:")


def test_missing_alphabet():
    with pytest.raises(FormatError, match="alphabet"):
        parse_morphism("rule: 0 -> 1\n")


def test_roundtrip(tmp_path):
    for rules in (S.PERIOD_DOUBLING, S.IMAGE_EXAMPLE, S.CHACON):
        m = Morphism.from_rules(rules)
        path = tmp_path / "m.txt"
        path.write_text(format_morphism(m, 0, comment="test"), encoding="utf-8")
        mf = read_morphism(path)
        assert mf.morphism == m and mf.seed == 0


def test_missing_file(tmp_path):
    with pytest.raises(FormatError, match="cannot read"):
        read_morphism(tmp_path / "absent.txt")
