"""Brute-force reference implementations used to validate the library.

Everything here works on plain integers (or tuples) with the most direct
algorithm available, no pruning and no clever encodings, so a disagreement
with the library is always the library's problem.  Sizes are kept small by
the callers.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product


def subsets(items):
    """All subsets as tuples, by increasing size then lexicographic order."""
    items = sorted(items)
    for size in range(len(items) + 1):
        yield from combinations(items, size)


def naive_sumset(xs, ys):
    return sorted({x + y for x in xs for y in ys})


def naive_iterated(xs, n, m=0):
    """nA - mA by repeated pairwise sumsets."""
    out = [0]
    for _ in range(n):
        out = naive_sumset(out, xs)
    for _ in range(m):
        out = naive_sumset(out, [-x for x in xs])
    return sorted(out)


def naive_sigma(xs, k):
    """Sums of at most k distinct elements (the empty sum included)."""
    out = set()
    for size in range(0, k + 1):
        for combo in combinations(sorted(xs), size):
            out.add(sum(combo))
    return sorted(out)


def naive_relation(xs, k):
    """A nonzero coefficient vector in [-k, k]^n summing to zero, or None."""
    xs = sorted(xs)
    for coeffs in product(range(-k, k + 1), repeat=len(xs)):
        if any(coeffs) and sum(c * x for c, x in zip(coeffs, xs)) == 0:
            return coeffs
    return None


def naive_dim_k1(xs):
    """Largest subset with pairwise-distinct subset sums, by full DFS.

    The dissociated family is downward closed, so a depth-first walk that
    extends every valid subset visits all of them; no bounding is applied.
    """
    xs = sorted(xs)
    best = 0

    def walk(idx, sums, depth):
        nonlocal best
        best = max(best, depth)
        for j in range(idx, len(xs)):
            x = xs[j]
            shifted = {s + x for s in sums}
            if shifted & sums:
                continue
            walk(j + 1, sums | shifted, depth + 1)

    walk(0, {0}, 0)
    return best


def naive_dim_k(xs, k):
    """Largest k-dissociated subset via per-subset relation search."""
    best = 0
    for sub in subsets(xs):
        if len(sub) > best and naive_relation(sub, k) is None:
            best = len(sub)
    return best


def naive_span(xs, k):
    xs = sorted(xs)
    out = set()
    for coeffs in product(range(-k, k + 1), repeat=len(xs)):
        out.add(sum(c * x for c, x in zip(coeffs, xs)))
    return sorted(out)


def naive_tk(xs, k):
    """T_k by enumerating all 2k-tuples."""
    count = 0
    for tup in product(xs, repeat=2 * k):
        if sum(tup[:k]) == sum(tup[k:]):
            count += 1
    return count


def naive_energy(xs, ys):
    """E(A,B): quadruples with a - b = a' - b'."""
    count = 0
    for a1, a2 in product(xs, repeat=2):
        for b1, b2 in product(ys, repeat=2):
            if a1 - b1 == a2 - b2:
                count += 1
    return count


def naive_ratio_box(xs):
    """Largest n with every x/y (1 <= x, y <= n) among difference ratios."""
    mags = sorted({abs(x - y) for x in xs for y in xs if x != y})
    if not mags:
        return 0
    ratios = {Fraction(d1, d2) for d1 in mags for d2 in mags}
    n = 0
    while True:
        cand = n + 1
        ok = all(
            Fraction(x, y) in ratios
            for x in range(1, cand + 1)
            for y in range(1, cand + 1)
        )
        if not ok:
            return n
        n = cand


def naive_sidon_max(xs, h):
    """Largest B_h[1] subset by checking every subset."""
    best = 0
    for sub in subsets(xs):
        if len(sub) <= best:
            continue
        sums = [sum(t) for t in combinations_with_replacement(sub, h)]
        if len(sums) == len(set(sums)):
            best = len(sub)
    return best


def naive_dft_peak(xs, n):
    """max_{r != 0} |sum_a e(ar/n)| by direct summation."""
    import cmath

    best = 0.0
    for r in range(1, n):
        z = sum(cmath.exp(2j * cmath.pi * a * r / n) for a in xs)
        best = max(best, abs(z))
    return best


def naive_dirichlet(xs, s, n):
    """min over q in [1, n-1] of sum_a ||q*a/n||^s, exactly."""
    best = None
    for q in range(1, n):
        total = Fraction(0)
        for a in xs:
            rem = (q * a) % n
            total += Fraction(min(rem, n - rem), n) ** s
        if best is None or total < best:
            best = total
    return best
