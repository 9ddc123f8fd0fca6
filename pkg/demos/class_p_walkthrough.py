"""Detect class P decompositions, then conjugate one with a long p."""

from palctl.classp import detect_class_p, normalize_class_p
from palctl.formats import format_morphism
from palctl.words import Morphism

for rules in ({"0": "01", "1": "00"}, {"a": "abba", "b": "baab"}, {"0": "001", "1": "101"}):
    m = Morphism.from_rules(rules)
    found = detect_class_p(m)
    print(m, "->", [d.describe(m.alphabet) for d in found] or "not class P")

m = Morphism.from_rules({"a": "bba", "b": "bbaba"})
n = normalize_class_p(m)
print()
print(f"{m} has p = {m.alphabet.decode(n.original.p)!r}; conjugated, every image is a palindrome:")
print(format_morphism(n.morphism, n.seed, f"power {n.power} is prolongable"))
