"""Dissociativity certificates, additive dimension, spans, and covers.

A set L is k-dissociated when no nonzero coefficient vector eps with entries
in [-k, k] satisfies sum eps_i * l_i = 0.  Equivalently, the (k+1)^|L| sums
with coefficients in [0, k] are pairwise distinct; the incremental search
states below maintain exactly that invariant.

All searches are deterministic: elements are processed in a fixed order and
witnesses are the lexicographically smallest among optimal ones (subsets are
compared as sorted tuples).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .budget import WorkMeter, as_meter
from .errors import (
    BudgetExceededError,
    PreconditionError,
    SizeCapExceededError,
    VerificationFailedError,
)
from .groundset import (
    Ambient,
    GroundSet,
    IntegerLattice,
    Residues,
    combination,
)

# Direct coefficient enumeration below this state count, meet-in-the-middle above.
EXHAUSTIVE_STATE_LIMIT = 3 ** 12

DEFAULT_SPAN_CAP = 1 << 22


@dataclass(frozen=True)
class DissociationCertificate:
    """Outcome of a dissociativity test, re-verifiable from the relation."""

    verdict: str  # "dissociated" or "relation"
    k: int
    relation: tuple | None  # coefficients aligned with the sorted element order
    method: str  # "subset-sum-distinctness", "exhaustive", or "meet-in-the-middle"
    states_visited: int

    @property
    def is_dissociated(self) -> bool:
        return self.verdict == "dissociated"

    def verify(self, lam: GroundSet) -> bool:
        """Recheck the certificate against the set it was issued for."""
        if self.verdict == "dissociated":
            return self.relation is None
        eps = self.relation
        if eps is None or len(eps) != len(lam.elements):
            return False
        if not any(eps):
            return False
        if any(abs(c) > self.k for c in eps):
            return False
        total = combination(lam.ambient, lam.elements, eps)
        return total == lam.ambient.zero

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "k": self.k,
            "relation": list(self.relation) if self.relation is not None else None,
            "method": self.method,
            "states_visited": self.states_visited,
        }


@dataclass(frozen=True)
class DimensionBounds:
    """Certified bounds for a dimension-like quantity."""

    kind: str  # "dim_k", "d_k", "d_star_k", "dim_alpha_k"
    k: int
    lower: int
    upper: int
    exact: bool
    lower_witness: GroundSet | None = None
    upper_witness: GroundSet | None = None
    states: int = 0
    note: str = ""

    def __post_init__(self):
        if self.lower > self.upper:
            raise AssertionError(f"bounds inverted: {self.lower} > {self.upper}")

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError("bounds are not exact")
        return self.lower

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "lower_witness": list(self.lower_witness) if self.lower_witness else None,
            "upper_witness": list(self.upper_witness) if self.upper_witness else None,
            "states": self.states,
            "note": self.note,
        }


# ---------------------------------------------------------------------------
# Incremental distinct-combination states


class _LineBits:
    """Sums with coefficients in [0,k] as a bitset over an integer interval."""

    __slots__ = ("bits", "base", "count")

    def __init__(self, bits: int = 1, base: int = 0, count: int = 1):
        self.bits = bits
        self.base = base
        self.count = count

    def extended(self, x: int, k: int):
        if x >= 0:
            shifts = [c * x for c in range(k + 1)]
            new_base = self.base
        else:
            shifts = [(k - c) * (-x) for c in range(k + 1)]
            new_base = self.base + k * x
        combined = 0
        for s in shifts:
            combined |= self.bits << s
        if combined.bit_count() != (k + 1) * self.count:
            return None
        return _LineBits(combined, new_base, (k + 1) * self.count)


class _CyclicBits:
    """Same invariant over Z/NZ, bitset of length N with rotations."""

    __slots__ = ("bits", "n", "count")

    def __init__(self, n: int, bits: int = 1, count: int = 1):
        self.n = n
        self.bits = bits
        self.count = count

    def _rot(self, r: int) -> int:
        n = self.n
        r %= n
        if r == 0:
            return self.bits
        mask = (1 << n) - 1
        return ((self.bits << r) | (self.bits >> (n - r))) & mask

    def extended(self, x: int, k: int):
        combined = 0
        for c in range(k + 1):
            combined |= self._rot(c * x)
        if combined.bit_count() != (k + 1) * self.count:
            return None
        return _CyclicBits(self.n, combined, (k + 1) * self.count)


class _TupleState:
    """Fallback for lattices of rank >= 2: explicit set of sum vectors."""

    __slots__ = ("ambient", "sums")

    def __init__(self, ambient: Ambient, sums: frozenset | None = None):
        self.ambient = ambient
        self.sums = sums if sums is not None else frozenset([ambient.zero])

    @property
    def count(self) -> int:
        return len(self.sums)

    def extended(self, x, k: int):
        amb = self.ambient
        combined = set(self.sums)
        step = x
        shifted = self.sums
        for _ in range(k):
            shifted = {amb.add(s, step) for s in shifted}
            combined |= shifted
        if len(combined) != (k + 1) * len(self.sums):
            return None
        return _TupleState(amb, frozenset(combined))


def _new_state(ambient: Ambient):
    if isinstance(ambient, Residues):
        if ambient.modulus <= (1 << 22):
            return _CyclicBits(ambient.modulus)
        return _TupleState(ambient)
    if ambient.rank == 1:
        return _LineBits()
    return _TupleState(ambient)


def _state_weight(ambient: Ambient, elems, k: int) -> int:
    """Budget weight per search node, heavier for wide bitsets."""
    if isinstance(ambient, Residues):
        span = ambient.modulus
    elif ambient.rank == 1:
        span = k * sum(abs(x) for x in elems) + 1
    else:
        span = len(elems) ** 2 + 1
    return max(1, span >> 14)


# ---------------------------------------------------------------------------
# Dissociativity certificates


def is_k_dissociated(lam: GroundSet, k: int = 1, budget: int | None = None) -> DissociationCertificate:
    """Certified test with an explicit relation on failure.

    k = 1 runs incremental subset-sum distinctness; larger k uses direct
    coefficient enumeration when small enough, meet-in-the-middle otherwise.
    An empty set is trivially dissociated.  A set containing 0 fails at once
    (coefficient 1 on the zero element is already a relation).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    amb = lam.ambient
    elems = lam.elements
    n = len(elems)
    if n == 0:
        return DissociationCertificate("dissociated", k, None, "exhaustive", 0)
    zero = amb.zero
    if zero in lam:
        eps = tuple(1 if x == zero else 0 for x in elems)
        return DissociationCertificate("relation", k, eps, "exhaustive", 0)
    meter = as_meter(budget)
    if k == 1:
        return _subset_sum_certificate(lam, meter)
    if (2 * k + 1) ** n <= min(EXHAUSTIVE_STATE_LIMIT, meter.limit):
        return _exhaustive_certificate(lam, k, meter)
    return _mitm_certificate(lam, k, meter)


def _subset_sum_certificate(lam: GroundSet, meter: WorkMeter) -> DissociationCertificate:
    amb = lam.ambient
    elems = lam.elements
    sums = {amb.zero: 0}  # sum -> subset bitmask, first-seen wins
    for i, x in enumerate(elems):
        new = {}
        for s, mask in sums.items():
            meter.tick()
            t = amb.add(s, x)
            clash = sums.get(t, new.get(t))
            if clash is not None:
                q = mask | (1 << i)
                eps = tuple(((q >> j) & 1) - ((clash >> j) & 1) for j in range(len(elems)))
                cert = DissociationCertificate(
                    "relation", 1, eps, "subset-sum-distinctness", meter.states
                )
                assert cert.verify(lam)
                return cert
            new[t] = mask | (1 << i)
        sums.update(new)
    return DissociationCertificate("dissociated", 1, None, "subset-sum-distinctness", meter.states)


def _exhaustive_certificate(lam: GroundSet, k: int, meter: WorkMeter) -> DissociationCertificate:
    amb = lam.ambient
    elems = lam.elements
    for eps in itertools.product(range(-k, k + 1), repeat=len(elems)):
        meter.tick()
        if not any(eps):
            continue
        if combination(amb, elems, eps) == amb.zero:
            return DissociationCertificate("relation", k, eps, "exhaustive", meter.states)
    return DissociationCertificate("dissociated", k, None, "exhaustive", meter.states)


def _mitm_certificate(lam: GroundSet, k: int, meter: WorkMeter) -> DissociationCertificate:
    amb = lam.ambient
    elems = lam.elements
    n = len(elems)
    h = n // 2
    left, right = elems[:h], elems[h:]
    meter.check_feasible((2 * k + 1) ** (n - h), "meet-in-the-middle table")
    table: dict = {}
    zero_sum_nonzero = None
    for eps in itertools.product(range(-k, k + 1), repeat=n - h):
        meter.tick()
        s = combination(amb, right, eps)
        if s not in table:
            table[s] = eps
        if s == amb.zero and any(eps) and zero_sum_nonzero is None:
            zero_sum_nonzero = eps
    for eps_l in itertools.product(range(-k, k + 1), repeat=h):
        meter.tick()
        s = combination(amb, left, eps_l)
        target = amb.neg(s)
        eps_r = table.get(target)
        if eps_r is None:
            continue
        if not any(eps_l):
            if zero_sum_nonzero is None:
                continue
            eps_r = zero_sum_nonzero
        eps = tuple(eps_l) + tuple(eps_r)
        cert = DissociationCertificate("relation", k, eps, "meet-in-the-middle", meter.states)
        assert cert.verify(lam)
        return cert
    return DissociationCertificate("dissociated", k, None, "meet-in-the-middle", meter.states)


# ---------------------------------------------------------------------------
# Greedy maximal dissociated subsets


def _ordered_elements(lam: GroundSet, order: str):
    amb = lam.ambient
    elems = [x for x in lam.elements if x != amb.zero]
    if order == "given":
        return elems
    if order == "desc_abs":
        return sorted(elems, key=lambda x: (-amb.magnitude(x), x))
    if order == "asc_abs":
        return sorted(elems, key=lambda x: (amb.magnitude(x), x))
    raise ValueError(f"unknown order {order!r}")


def max_dissociated_greedy(
    lam: GroundSet, k: int = 1, order: str = "desc_abs", budget: int | None = None
) -> GroundSet:
    """Single-pass greedy k-dissociated subset, maximal under insertion.

    Rejection is monotone (a relation survives supersets), so the result
    cannot be extended by any element of the input.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    amb = lam.ambient
    meter = as_meter(budget)
    elems = _ordered_elements(lam, order)
    weight = _state_weight(amb, elems, k)
    state = _new_state(amb)
    chosen = []
    for x in elems:
        meter.tick(weight)
        child = state.extended(x, k)
        if child is not None:
            state = child
            chosen.append(x)
    return GroundSet.of(amb, chosen)


# ---------------------------------------------------------------------------
# Exact dimension by branch and bound


def _counting_allowance(k: int, cur: int, chosen_abs: int, prefix: list, rem: int, modulus: int | None) -> int:
    """Max further elements any extension could add, by combination counting.

    Coefficient-[0,k] sums of a k-dissociated set are distinct, so (k+1)^t
    must fit inside the reachable value range.  prefix[m] is the sum of the
    m largest magnitudes over the whole input, which upper-bounds any m
    remaining candidates.
    """
    best = 0
    for m in range(rem + 1):
        if modulus is not None:
            box = modulus
        else:
            box = k * (chosen_abs + prefix[min(m, len(prefix) - 1)]) + 1
        if (k + 1) ** (cur + m) <= box:
            best = m
        else:
            break
    return best


def dim_k_exact(lam: GroundSet, k: int = 1, budget: int | None = None) -> DimensionBounds:
    """Largest k-dissociated subset size by depth-first branch and bound.

    Elements are scanned in ascending order, so the first witness found at
    the optimum is the lexicographically smallest one.  On budget exhaustion
    the result degrades to certified bounds with ``exact=False``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    amb = lam.ambient
    elems = [x for x in lam.elements if x != amb.zero]
    n = len(elems)
    if n == 0:
        empty = GroundSet.of(amb, ())
        return DimensionBounds("dim_k", k, 0, 0, True, empty, None, 0)
    meter = as_meter(budget)
    weight = _state_weight(amb, elems, k)
    mags = sorted((amb.magnitude(x) for x in elems), reverse=True)
    prefix = [0]
    for m in mags:
        prefix.append(prefix[-1] + m)
    modulus = amb.modulus if isinstance(amb, Residues) else None

    greedy = max_dissociated_greedy(lam, k, "desc_abs", budget=meter)
    best = len(greedy) - 1
    witness: tuple | None = None
    root_cap = _counting_allowance(k, 0, 0, prefix, n, modulus)

    abs_of = {x: amb.magnitude(x) for x in elems}

    def dfs(i: int, chosen: list, chosen_abs: int, state) -> None:
        nonlocal best, witness
        if len(chosen) > best:
            best = len(chosen)
            witness = tuple(chosen)
        rem = n - i
        if len(chosen) + rem <= best:
            return
        cap = _counting_allowance(k, len(chosen), chosen_abs, prefix, rem, modulus)
        if len(chosen) + cap <= best:
            return
        for j in range(i, n):
            if len(chosen) + (n - j) <= best:
                break
            meter.tick(weight)
            x = elems[j]
            child = state.extended(x, k)
            if child is not None:
                chosen.append(x)
                dfs(j + 1, chosen, chosen_abs + abs_of[x], child)
                chosen.pop()

    truncated = False
    try:
        dfs(0, [], 0, _new_state(amb))
    except BudgetExceededError:
        truncated = True

    if witness is not None:
        low_set = GroundSet.of(amb, witness)
    else:
        low_set = greedy
    lower = len(low_set)
    if truncated:
        upper = max(lower, min(n, root_cap))
        return DimensionBounds(
            "dim_k", k, lower, upper, False, low_set, None, meter.states,
            note="search truncated by budget",
        )
    return DimensionBounds("dim_k", k, lower, lower, True, low_set, None, meter.states)


def dim_bounds(lam: GroundSet, k: int = 1, budget: int | None = None) -> DimensionBounds:
    """dim_k_exact that degrades to bounds instead of raising on budget."""
    try:
        return dim_k_exact(lam, k, budget)
    except BudgetExceededError:
        greedy = max_dissociated_greedy(lam, k, "desc_abs")
        n = len([x for x in lam.elements if x != lam.ambient.zero])
        return DimensionBounds(
            "dim_k", k, len(greedy), n, False, greedy, None, 0, note="budget"
        )


# ---------------------------------------------------------------------------
# Spans and covering numbers


def span_k(s: GroundSet, k: int, size_cap: int | None = None) -> GroundSet:
    """{sum eps_i s_i : |eps_i| <= k}; requires (2k+1)^|S| within the cap."""
    if k < 0:
        raise ValueError("k must be >= 0")
    cap = size_cap if size_cap is not None else DEFAULT_SPAN_CAP
    if (2 * k + 1) ** len(s) > cap:
        raise SizeCapExceededError(
            f"span enumeration (2k+1)^|S| = {(2 * k + 1) ** len(s)} exceeds cap {cap}",
            cap=cap,
            stage="span_k",
        )
    amb = s.ambient
    cur = {amb.zero}
    for x in s.elements:
        steps = {c: amb.scale(c, x) for c in range(-k, k + 1)}
        cur = {amb.add(v, d) for v in cur for d in steps.values()}
    return GroundSet(amb, tuple(sorted(cur)))


def _min_size_for_span(count: int, k: int) -> int:
    """Smallest t with (2k+1)^t >= count."""
    t = 0
    cap = 1
    while cap < count:
        cap *= 2 * k + 1
        t += 1
    return t


def d_k_exact(a: GroundSet, k: int = 1, budget: int | None = None) -> DimensionBounds:
    """min |S| over S subset of A with A inside Span_k(S), by size-ordered search."""
    if k < 1:
        raise ValueError("k must be >= 1")
    amb = a.ambient
    elems = a.elements
    need = set(elems)
    empty = GroundSet.of(amb, ())
    if not need or need == {amb.zero}:
        return DimensionBounds("d_k", k, 0, 0, True, None, empty, 0)
    meter = as_meter(budget)

    # A maximal 1-dissociated subset spans A with coefficients in [-1, 1],
    # so it is a valid upper witness for every k >= 1.
    fallback = max_dissociated_greedy(a, 1, "desc_abs", budget=meter)
    try:
        if not need <= set(span_k(fallback, k).elements):
            fallback = a
    except SizeCapExceededError:
        fallback = a

    t_lo = _min_size_for_span(len(need), k)
    t = t_lo
    try:
        while t <= len(elems):
            per_candidate = (2 * k + 1) ** t
            for cand in itertools.combinations(elems, t):
                meter.tick(per_candidate)
                sub = GroundSet(amb, cand)
                span = span_k(sub, k, size_cap=None)
                if need <= set(span.elements):
                    return DimensionBounds(
                        "d_k", k, t, t, True, None, sub, meter.states
                    )
            t += 1
    except BudgetExceededError:
        return DimensionBounds(
            "d_k", k, t, len(fallback), False, None, fallback, meter.states,
            note="search truncated by budget",
        )
    # Unreachable in principle: S = A always spans A for k >= 1.
    return DimensionBounds("d_k", k, len(elems), len(elems), True, None, a, meter.states)


def d_star_bounds(a: GroundSet, k: int = 1, budget: int | None = None) -> DimensionBounds:
    """Bounds for the unrestricted covering number (exact search is infeasible:
    the covering set ranges over the whole ambient group).

    Upper: the restricted covering number.  Lower: span counting plus the
    pigeonhole bound (k+1)^d <= (2k^2 d + 1)^|S| applied to a certified
    k-dissociated subset of size d.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    dk = d_k_exact(a, k, budget)
    lam = max_dissociated_greedy(a, k, "desc_abs", budget=budget)
    d0 = len(lam)
    s_lo = 0
    if d0 > 0:
        lhs = (k + 1) ** d0
        base = 2 * k * k * d0 + 1
        cap = 1
        while cap < lhs:
            cap *= base
            s_lo += 1
    lower = max(_min_size_for_span(len(set(a.elements)), k), s_lo)
    upper = dk.upper
    lower = min(lower, upper)
    return DimensionBounds(
        "d_star_k", k, lower, upper, False, lam, dk.upper_witness, dk.states,
        note="upper from restricted cover; exact unrestricted search unsupported",
    )


# ---------------------------------------------------------------------------
# Combinatorial cubes


def cube(lam: GroundSet, max_generators: int = 24) -> tuple[GroundSet, bool]:
    """Subset-sum cube of L and whether it is proper (|Q| = 2^|L|)."""
    if len(lam) > max_generators:
        raise PreconditionError(f"cube limited to {max_generators} generators")
    amb = lam.ambient
    sums = {amb.zero}
    for x in lam.elements:
        sums |= {amb.add(s, x) for s in sums}
    q = GroundSet(amb, tuple(sorted(sums)))
    return q, len(q) == 1 << len(lam)


# ---------------------------------------------------------------------------
# Randomized dissociated subsets of subset-sum sets


def coin_weighing_dissociated(
    lam: GroundSet,
    m: int,
    seed: int = 0,
    trials: int = 64,
    budget: int | None = None,
) -> GroundSet:
    """Random 0/1 column sums over an m-dissociated base, verified dissociated.

    Draws an n x m random 0/1 matrix whose column sums live in the subset-sum
    set of L; re-verifies the result and retries on failure.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    n = len(lam)
    if n == 0:
        raise PreconditionError("base set is empty")
    base_cert = is_k_dissociated(lam, max(1, m), budget)
    if not base_cert.is_dissociated:
        raise PreconditionError(
            f"base set is not {m}-dissociated (relation {base_cert.relation})"
        )
    amb = lam.ambient
    rng = random.Random(seed)
    for _ in range(trials):
        sums = set()
        for _j in range(m):
            col = [rng.randint(0, 1) for _ in range(n)]
            sums.add(combination(amb, lam.elements, col))
        if len(sums) < m:
            continue
        cand = GroundSet(amb, tuple(sorted(sums)))
        if is_k_dissociated(cand, 1, budget).is_dissociated:
            return cand
    raise VerificationFailedError(
        f"no dissociated column-sum set found in {trials} trials"
    )
