"""Independent reference implementations used only by the tests.

These are deliberately naive so they share no code path with the package.
"""

from itertools import combinations


def naive_reduce(letters):
    """Remove the leftmost adjacent inverse pair until none is left."""
    w = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                del w[i : i + 2]
                changed = True
                break
    return w


def naive_quotient(letters, present):
    return naive_reduce([a for a in letters if abs(a) in present])


def states(n):
    for r in range(n + 1):
        for s in combinations(range(1, n + 1), r):
            yield set(s)


def brute_force_monotone_tables(n):
    """Every nontrivial monotone table on n inputs, by checking all 2^(2^n)."""
    size = 1 << n
    out = []
    for code in range(1 << size):
        bits = [bool(code >> m & 1) for m in range(size)]
        if bits[0] or not bits[-1]:
            continue
        if all(not bits[m] or bits[m | 1 << i] for m in range(size) for i in range(n)):
            out.append(bits)
    return out


def enumerate_failures(n, k, m):
    """Exact failure probabilities for a uniform m-subset by listing subsets."""
    subsets = list(combinations(range(1, n + 1), m))
    hang = sum(1 for s in subsets if s and min(s) < k)
    fall = sum(1 for s in subsets if not s or min(s) > k)
    return hang, fall, len(subsets)
