"""Print pal(k) for k = 1..24 for every builtin sequence."""

from palctl import sequences as S
from palctl.complexity import palindrome_complexity

K = 24

print(f"{'source':<24}" + " ".join(f"{k:>3}" for k in range(1, K + 1)))
for name in S.BUILTIN_NAMES:
    p = palindrome_complexity(S.builtin(name), K)
    cells = [f"{v:>3}" if p.stable[k] else "  ?" for k, v in enumerate(p.pal) if k]
    print(f"{name:<24}" + " ".join(cells))
print("? = count still changing at the largest prefix")
