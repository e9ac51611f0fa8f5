"""Constructive decompositions of finite sets.

The routines here take a set apart: peeling off dissociated blocks, slicing
representation functions into dyadic level sets, extracting a
structured core with an explicit Balog-Szemeredi-Gowers-style pipeline,
splitting a set into an additively tame part and a multiplicatively tame
part, pulling out B_h[1] (Sidon-type) subsets, and measuring how much of
the ratio box [n]/[n] the difference set covers.

Everything is deterministic: randomized-looking steps are either
derandomized (popularity arguments use exact counts) or take explicit
seeds.  Reported statistics are exact integers or rationals so they can be
recomputed bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .budget import WorkMeter, as_meter
from .dissociation import DimensionBounds, dim_bounds, is_k_dissociated, max_dissociated_greedy
from .energy import additive_energy, t_k
from .errors import BudgetExceededError, PreconditionError, SizeCapExceededError
from .groundset import (
    GroundSet,
    IntegerLattice,
    RepFn,
    mult_embed,
    rep_fn,
    sumset,
    translate,
)
from .growth import beta_hat

REP_SUPPORT_CAP = 1 << 18
SIDON_EXACT_LIMIT = 20
RATIO_SET_CAP = 4000


# ---------------------------------------------------------------------------
# dissociated peeling


@dataclass(frozen=True)
class PeelingResult:
    """A = block_1 | ... | block_s | remainder with dissociated blocks.

    Every block has exactly l elements and passes the k-dissociation check.
    certified means dim_k(remainder) < l was proven; when the dimension
    search was truncated by budget the flag is False and remainder_dim
    carries the bounds that were established.
    """

    blocks: tuple[GroundSet, ...]
    remainder: GroundSet
    l: int
    k: int
    remainder_dim: Optional[DimensionBounds]
    certified: bool
    note: str = ""

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def to_json(self) -> dict:
        return {
            "blocks": [sorted(b.elements) for b in self.blocks],
            "remainder": sorted(self.remainder.elements),
            "l": self.l,
            "k": self.k,
            "certified": self.certified,
            "note": self.note,
        }


def dissociated_peeling(
    a: GroundSet, l: int, k: int = 1, budget: Optional[int] = None
) -> PeelingResult:
    """Greedily extract disjoint k-dissociated blocks of size exactly l.

    Each round takes the greedy maximal dissociated subset of what is left
    (largest magnitudes first) and keeps its first l elements; when greedy
    comes up short, an exact dimension search has the final say.  The loop
    stops when the leftover set has dimension < l, certified when the
    search completed within budget.
    """
    if l < 1:
        raise PreconditionError("block size l must be at least 1")
    meter = as_meter(budget)
    blocks: list[GroundSet] = []
    current = a
    note = ""
    remainder_dim: Optional[DimensionBounds] = None
    certified = False
    while True:
        if len(current) < l:
            db = dim_bounds(current, k, budget=meter) if current.elements else None
            remainder_dim = db
            certified = db is None or db.upper < l
            break
        witness = max_dissociated_greedy(current, k, order="desc_abs", budget=meter)
        if len(witness) < l:
            try:
                db = dim_bounds(current, k, budget=meter)
            except BudgetExceededError:
                remainder_dim = None
                certified = False
                note = "dimension check on remainder ran out of budget"
                break
            remainder_dim = db
            if db.lower >= l and db.lower_witness is not None:
                ordered = sorted(
                    db.lower_witness.elements,
                    key=lambda e: (-current.ambient.magnitude(e), e if isinstance(e, tuple) else (e,)),
                )
                blocks.append(GroundSet.of(current.ambient, ordered[:l]))
                current = current.without(blocks[-1])
                continue
            certified = db.exact or db.upper < l
            if not certified:
                note = "remainder dimension not certified below l (budget truncation)"
            break
        ordered = witness.elements  # already a set; use magnitude-descending order
        ordered = sorted(
            ordered, key=lambda e: (-current.ambient.magnitude(e), e if isinstance(e, tuple) else (e,))
        )
        block = GroundSet.of(current.ambient, ordered[:l])
        assert is_k_dissociated(block, k).verdict == "dissociated"
        blocks.append(block)
        current = current.without(block)
    return PeelingResult(
        blocks=tuple(blocks),
        remainder=current,
        l=l,
        k=k,
        remainder_dim=remainder_dim,
        certified=certified,
        note=note,
    )


# ---------------------------------------------------------------------------
# dyadic level sets


def level_set(r: RepFn, base: Fraction | int = 1) -> list[tuple[Fraction, GroundSet]]:
    """Partition the support of r into dyadic bands (Delta, 2*Delta].

    Band labels are the lower endpoints Delta = base * 2^i (i may be
    negative); every positive count lands in exactly one band, so the
    bands partition the support.  Returned in increasing Delta order.
    """
    base = Fraction(base)
    if base <= 0:
        raise PreconditionError("dyadic base must be positive")
    bands: dict[Fraction, list] = {}
    for x, c in r.entries.items():
        if c <= 0:
            continue
        delta = base / 2
        while c > 2 * delta:
            delta *= 2
        while c <= delta:
            delta /= 2
        bands.setdefault(delta, []).append(x)
    out = []
    for delta in sorted(bands):
        out.append((delta, GroundSet.of(r.ambient, bands[delta])))
    return out


# ---------------------------------------------------------------------------
# constructive BSG


@dataclass(frozen=True)
class BsgResult:
    """Structured core H and shift x from the BSG-style pipeline.

    stats holds exact integers and rationals only, so every entry can be
    recomputed from (A, B, parameters) and compared bit-for-bit.
    """

    h: GroundSet
    x: object
    stats: dict

    def to_json(self) -> dict:
        return {"h": sorted(self.h.elements), "x": self.x, "stats": self.stats}


def _energy_chain(b: GroundSet, l: int, size_cap: int) -> tuple[list[RepFn], list[int]]:
    """r_{2^i B} and T_{2^i}(B) for i = 0..l, stopping early at the cap."""
    reps = [rep_fn([(b, "+")])]
    energies = [reps[0].square_sum()]
    for _ in range(l):
        try:
            nxt = _rep_double(reps[-1], size_cap)
        except SizeCapExceededError:
            break
        reps.append(nxt)
        energies.append(nxt.square_sum())
    return reps, energies


def _rep_double(r: RepFn, size_cap: int) -> RepFn:
    """Convolution of r with itself (r_{2S} from r_S, with multiplicity)."""
    if len(r.entries) ** 2 > 8 * size_cap:
        raise SizeCapExceededError("convolution square too large", cap=size_cap, stage="bsg-chain")
    out: dict = {}
    amb = r.ambient
    items = list(r.entries.items())
    for x, cx in items:
        for y, cy in items:
            z = amb.add(x, y)
            out[z] = out.get(z, 0) + cx * cy
    if len(out) > size_cap:
        raise SizeCapExceededError("convolution support too large", cap=size_cap, stage="bsg-chain")
    return RepFn(amb, out)


def _bsg_core(
    a: GroundSet,
    b: GroundSet,
    k_target: Fraction,
    l: int,
    meter: WorkMeter,
    seed: int,
) -> BsgResult:
    size_a, size_b = len(a), len(b)
    energy_ab = additive_energy(a, b).value

    # Hoelder amplification: walk the energy chain T_1, T_2, T_4, ... of B
    # and take the level that loses the least against the trivial bound.
    reps, chain = _energy_chain(b, l, REP_SUPPORT_CAP)
    surrogates: dict[int, Fraction] = {}
    best_j = 1
    best_m: Optional[Fraction] = None
    for j in range(1, len(chain)):
        m_j = Fraction(size_b ** (2**j) * chain[j - 1], chain[j])
        surrogates[j] = m_j
        if best_m is None or m_j < best_m:
            best_m, best_j = m_j, j
    j = best_j if surrogates else 1

    # Dyadic level set of r_{2^{j-1} B}, weighted toward popular bands.
    r_level = reps[j - 1]
    bands = level_set(r_level)
    best_band = None
    best_weight = None
    for delta, p_delta in bands:
        meter.tick(len(p_delta))
        weight = delta**4 * additive_energy(p_delta, p_delta).value
        if best_weight is None or (weight, delta) > (best_weight, best_band[0]):
            best_weight, best_band = weight, (delta, p_delta)
    assert best_band is not None
    delta, p = best_band

    # Popular-difference graph on P: d is popular when r_{P-P}(d) clears
    # half the average energy per pair.
    r_pp = rep_fn([(p, "+"), (p, "-")])
    energy_p = r_pp.square_sum()
    theta = Fraction(energy_p, 2 * len(p) ** 2)
    elems = sorted(p.elements, key=lambda e: (p.ambient.magnitude(e), e if isinstance(e, tuple) else (e,)))
    amb = p.ambient
    edges = 0
    best_v = None
    best_deg = -1
    neighbors_of_best: list = []
    for u in elems:
        meter.tick(len(elems))
        nbrs = []
        for v in elems:
            if v == u:
                continue
            d = amb.sub(u, v)
            if r_pp[d] >= theta:
                nbrs.append(v)
        edges += len(nbrs)
        if len(nbrs) > best_deg:
            best_deg, best_v, neighbors_of_best = len(nbrs), u, nbrs
    assert best_v is not None
    h = GroundSet.of(amb, [best_v, *neighbors_of_best])

    hh = sumset(h, h)
    r_bh = rep_fn([(b, "+"), (h, "-")])
    x_star = None
    x_count = -1
    for x in sorted(r_bh.entries, key=lambda e: (amb.magnitude(e), e if isinstance(e, tuple) else (e,))):
        c = r_bh.entries[x]
        if c > x_count:
            x_count, x_star = c, x
    assert x_star is not None and x_count >= 1
    assert len(h) >= 1

    stats = {
        "j": j,
        "m_surrogates": {str(jj): v for jj, v in surrogates.items()},
        "delta": delta,
        "p_size": len(p),
        "theta": theta,
        "edges": edges,
        "energy_p": energy_p,
        "energy_ab": energy_ab,
        "k_target": Fraction(k_target),
        "h_size": len(h),
        "hh_size": len(hh),
        "doubling": Fraction(len(hh), len(h)),
        "trivial_doubling": Fraction(len(h) + 1, 2),
        "intersection": x_count,
        "a_size": size_a,
        "b_size": size_b,
        "seed": seed,
    }
    return BsgResult(h=h, x=x_star, stats=stats)


def bsg_asymmetric(
    a: GroundSet,
    b: GroundSet,
    k_target: Fraction | int,
    l: int = 3,
    budget: Optional[int] = None,
    seed: int = 0,
) -> BsgResult:
    """Extract a small-doubling core H and shift x with B ∩ (H+x) large.

    Requires the energy precondition E(A,B) >= |A||B|^2 / K (checked
    exactly) and |A| >= |B|.  The pipeline is deterministic: an energy
    chain on B picks the amplification level, a dyadic band of the
    resulting representation function picks P, a popular-difference graph
    on P picks H as the closed neighborhood of a maximum-degree vertex,
    and x maximizes r_{B-H}.  Guarantees at desk scale are empirical; the
    stats record the measured doubling |H+H|/|H| and intersection count
    next to their trivial yardsticks, and everything in stats is exactly
    recomputable.  ``seed`` is accepted for interface stability and echoed
    in the stats; the default pipeline does not branch on it.
    """
    if a.ambient != b.ambient:
        raise PreconditionError("A and B must share an ambient")
    if not a.elements or not b.elements:
        raise PreconditionError("A and B must be nonempty")
    if len(a) < len(b):
        raise PreconditionError("need |A| >= |B|")
    k_target = Fraction(k_target)
    if k_target <= 0:
        raise PreconditionError("K must be positive")
    energy_ab = additive_energy(a, b).value
    if energy_ab * k_target.numerator < len(a) * len(b) ** 2 * k_target.denominator:
        raise PreconditionError(
            f"energy precondition failed: E(A,B) = {energy_ab} < |A||B|^2/K"
        )
    meter = as_meter(budget)
    return _bsg_core(a, b, k_target, l, meter, seed)


# ---------------------------------------------------------------------------
# beta decomposition


@dataclass(frozen=True)
class BetaDecomposition:
    """A dense piece A* of A with small measured beta statistic."""

    a_star: GroundSet
    stats: dict
    note: str = ""

    def to_json(self) -> dict:
        return {"a_star": sorted(self.a_star.elements), "stats": self.stats, "note": self.note}


def beta_decomposition(
    a: GroundSet,
    k: int = 2,
    big_k: Optional[Fraction] = None,
    budget: Optional[int] = None,
) -> BetaDecomposition:
    """Find A* ⊆ A that is dense and additively structured.

    The energy chain T_2, ..., T_k of A is scanned for the largest j with
    T_j >= |A|^2 T_{j-1} / K, where K defaults to the value determined by
    T_k(A) = |A|^{2k-1} K^{1-k} (the default test is carried out in
    cross-multiplied integer form, so no irrational K is ever computed).
    The level set of r_{(j-1)A} at the most energetic dyadic band feeds
    the BSG pipeline, and A* = A ∩ (H + x).  If the chain test never
    fires the theorem gives nothing and A itself is returned with a note.
    """
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if len(a) <= 2:
        return BetaDecomposition(a_star=a, stats={"sizes": len(a)}, note="set too small; returned unchanged")
    meter = as_meter(budget)
    size = len(a)
    energies = [0, len(a)]  # T_0 unused, T_1 = |A|
    for j in range(2, k + 1):
        energies.append(t_k(a, j).value)
    t_k_val = energies[k]

    fired = None
    for j in range(k, 1, -1):
        t_j, t_jm1 = energies[j], energies[j - 1]
        if big_k is not None:
            kk = Fraction(big_k)
            ok = t_j * kk.numerator >= size**2 * t_jm1 * kk.denominator
        else:
            ok = t_j ** (k - 1) * size ** (2 * k - 1) >= t_k_val * size ** (2 * (k - 1)) * t_jm1 ** (k - 1)
        if ok:
            fired = j
            break
    stats: dict = {
        "k": k,
        "energies": {str(i): energies[i] for i in range(1, k + 1)},
        "size": size,
    }
    if big_k is not None:
        stats["big_k"] = Fraction(big_k)
    if fired is None:
        stats["chain_fired"] = None
        return BetaDecomposition(
            a_star=a, stats=stats, note="chain test degenerate (no energetic level); returned A"
        )
    j = fired
    stats["chain_fired"] = j

    r = rep_fn([(a, "+")] * (j - 1), size_cap=REP_SUPPORT_CAP)
    bands = level_set(r)
    best = None
    best_weight = None
    for delta, p_delta in bands:
        meter.tick(len(p_delta))
        weight = delta**2 * additive_energy(p_delta, a).value
        if best_weight is None or (weight, delta) > (best_weight, best[0]):
            best_weight, best = weight, (delta, p_delta)
    assert best is not None
    delta, p = best
    stats["delta"] = delta
    stats["p_size"] = len(p)

    e_pa = additive_energy(p, a).value
    k_prime = Fraction(len(p) * size**2, e_pa)
    core = _bsg_core(p, a, k_prime, l=2, meter=meter, seed=0)
    shifted = translate(core.h, core.x)
    a_star = a.restrict(shifted.elements)
    if not a_star.elements:
        stats["bsg"] = core.stats
        return BetaDecomposition(a_star=a, stats=stats, note="core missed A entirely; returned A")
    est = beta_hat(a_star)
    stats["bsg"] = core.stats
    stats["a_star_size"] = len(a_star)
    stats["density_ratio"] = Fraction(size, len(a_star))
    stats["beta_upper_sq"] = est.upper_sq
    stats["small_block"] = len(a_star) ** 2 < size
    return BetaDecomposition(a_star=a_star, stats=stats)


# ---------------------------------------------------------------------------
# additive/multiplicative splitting


@dataclass(frozen=True)
class DecompositionResult:
    """A = B | C with C multiplicatively tame and B additively tame.

    iterations traces each peel: the size of C going in, its
    multiplicative s-energy, the threshold compared against, and the size
    of the extracted piece.  flags collect anything that deviated from the
    ideal run (iteration cap, non-shrinking peel, small pieces).
    """

    a: GroundSet
    b: GroundSet
    c: GroundSet
    s: int
    q: int
    big_k: Fraction
    threshold: Fraction
    energies: dict
    iterations: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def __post_init__(self):
        assert not (set(self.b.elements) & set(self.c.elements)), "B and C overlap"
        assert set(self.b.elements) | set(self.c.elements) == set(self.a.elements), "B and C do not cover A"

    def to_json(self) -> dict:
        return {
            "b": sorted(self.b.elements),
            "c": sorted(self.c.elements),
            "s": self.s,
            "q": self.q,
            "big_k": self.big_k,
            "threshold": self.threshold,
            "energies": self.energies,
            "iterations": self.iterations,
            "flags": self.flags,
        }


def dec_tk(
    a: GroundSet,
    s: int = 2,
    q: Optional[int] = None,
    big_k: Optional[Fraction] = None,
    max_iter: Optional[int] = None,
    budget: Optional[int] = None,
) -> DecompositionResult:
    """Split a set of positive integers into B ⊔ C with T_s^x(C) small.

    While the multiplicative s-energy of the remaining part C exceeds the
    threshold |A|^{2s-1} K^{1-s}, the loop maps C to prime-exponent
    vectors, extracts a structured core via the beta pipeline, and moves
    it into B; multiplicatively structured pieces are additively spread,
    which is what keeps T_q^+(B) low.  K defaults to max(2, |A|^{1/4})
    rounded; asymptotic choices of K degenerate at desk sizes.  The loop
    always terminates: a peel that fails to shrink C stops it (flagged),
    as does max_iter (default |A| + 1).
    """
    amb = a.ambient
    if not isinstance(amb, IntegerLattice) or amb.rank != 1:
        raise PreconditionError("dec_tk expects a rank-1 integer set")
    if any(x < 1 for x in a.elements):
        raise PreconditionError("dec_tk expects positive integers")
    if s < 2:
        raise PreconditionError("s must be at least 2")
    q = s if q is None else q
    if q < 2:
        raise PreconditionError("q must be at least 2")
    if not a.elements:
        raise PreconditionError("cannot decompose the empty set")
    meter = as_meter(budget)
    size = len(a)
    kk = Fraction(big_k) if big_k is not None else Fraction(max(2, round(size**0.25)))
    if kk <= 1:
        raise PreconditionError("K must exceed 1")
    threshold = Fraction(size ** (2 * s - 1)) / kk ** (s - 1)
    max_iter = size + 1 if max_iter is None else max_iter

    desk_note = None
    if size >= 3:
        log_a = math.log(size)
        loglog = math.log(max(math.log(size), 1.0001))
        logloglog = math.log(max(loglog, 1.0001)) if loglog > 1 else 0.0
        bound = log_a / math.sqrt(max(loglog * max(logloglog, 1e-9), 1e-9))
        if s > bound:
            desk_note = (
                f"s={s} is outside the guaranteed regime for |A|={size} (limit ~{bound:.2f}); "
                "proceeding anyway"
            )

    b_elems: set = set()
    c = a
    iterations: list = []
    flags: list[str] = []
    if desk_note:
        flags.append(desk_note)
    peels = 0
    for it in range(max_iter):
        tsc = t_k(c, s, op="*").value if c.elements else 0
        over = Fraction(tsc) > threshold
        row = {
            "iteration": it,
            "c_size": len(c),
            "t_s_mult_c": tsc,
            "threshold": threshold,
            "above_threshold": over,
        }
        if not over:
            iterations.append(row)
            break
        emb = mult_embed(c)
        dec = beta_decomposition(emb.image, k=s, budget=meter)
        piece_vectors = dec.a_star
        piece = emb.preimage(piece_vectors)
        row["peel_size"] = len(piece)
        row["peel_note"] = dec.note
        row["small_piece"] = len(piece) ** 2 < size
        if len(piece) ** 2 < size:
            flags.append(f"iteration {it}: extracted piece smaller than sqrt|A|")
        if len(piece) == len(c):
            iterations.append(row)
            flags.append(f"iteration {it}: peel did not shrink C; stopping early")
            b_elems |= set(piece.elements)
            c = c.without(piece)
            peels += 1
            break
        b_elems |= set(piece.elements)
        c = c.without(piece)
        peels += 1
        iterations.append(row)
    else:
        flags.append(f"iteration cap {max_iter} reached with C above threshold")

    b = a.restrict(b_elems)
    energies = {
        "t_s_add_b": t_k(b, s).value if b.elements else 0,
        "t_q_add_b": t_k(b, q).value if b.elements else 0,
        "t_s_mult_c": t_k(c, s, op="*").value if c.elements else 0,
        "peels": peels,
    }
    return DecompositionResult(
        a=a,
        b=b,
        c=c,
        s=s,
        q=q,
        big_k=kk,
        threshold=threshold,
        energies=energies,
        iterations=iterations,
        flags=flags,
    )


# ---------------------------------------------------------------------------
# Sidon-type extraction


def _h_fold_ok(elems: Sequence, h: int, amb) -> bool:
    """True when all h-multiset sums over elems are distinct."""
    seen = set()
    for tup in combinations_with_replacement(elems, h):
        total = tup[0]
        for x in tup[1:]:
            total = amb.add(total, x)
        if total in seen:
            return False
        seen.add(total)
    return True


def sidon_extract(
    a: GroundSet,
    h: int = 2,
    op: str = "+",
    mode: Optional[str] = None,
    budget: Optional[int] = None,
) -> GroundSet:
    """Largest (exact) or maximal (greedy) B_h[1] subset of A.

    A B_h[1] set has all h-fold sums distinct; with op="*" the h-fold
    products are made distinct instead, computed exactly through the
    prime-exponent embedding.  Exact mode performs a depth-first search
    over the (downward-closed) family of B_h[1] subsets and is limited to
    |A| <= 20; greedy mode inserts elements in ascending order and keeps
    an element whenever it does not break the property.
    """
    if h < 2:
        raise PreconditionError("h must be at least 2")
    if op not in ("+", "*"):
        raise PreconditionError("op must be '+' or '*'")
    if mode is None:
        mode = "exact_tiny" if len(a) <= SIDON_EXACT_LIMIT else "greedy"
    if mode not in ("exact_tiny", "greedy"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if mode == "exact_tiny" and len(a) > SIDON_EXACT_LIMIT:
        raise PreconditionError(f"exact mode is limited to |A| <= {SIDON_EXACT_LIMIT}")

    if op == "*":
        emb = mult_embed(a)
        inner = sidon_extract(emb.image, h, "+", mode, budget)
        return emb.preimage(inner)

    amb = a.ambient
    meter = as_meter(budget)
    elems = sorted(a.elements, key=lambda e: (amb.magnitude(e), e if isinstance(e, tuple) else (e,)))

    if mode == "greedy":
        kept: list = []
        for x in elems:
            meter.tick(len(kept) ** (h - 1) + 1)
            if _h_fold_ok(kept + [x], h, amb):
                kept.append(x)
        return GroundSet.of(amb, kept)

    best: list = []

    def dfs(start: int, chosen: list):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        # even taking everything that is left cannot beat the best
        if len(chosen) + (len(elems) - start) <= len(best):
            return
        for i in range(start, len(elems)):
            cand = chosen + [elems[i]]
            meter.tick(len(cand) ** h // max(1, h) + 1)
            if _h_fold_ok(cand, h, amb):
                dfs(i + 1, cand)

    dfs(0, [])
    return GroundSet.of(amb, best)


# ---------------------------------------------------------------------------
# ratio box


@dataclass(frozen=True)
class RatioBoxResult:
    """Largest n with every reduced fraction from [n]/[n] realized in D/D."""

    n: int
    missing: Optional[Fraction]
    ratio_count: int

    def to_json(self) -> dict:
        return {"n": self.n, "missing": self.missing, "ratio_count": self.ratio_count}


def ratio_box(a: GroundSet, cap: int = RATIO_SET_CAP) -> RatioBoxResult:
    """Measure how much of the box [n]/[n] the ratios of A - A cover.

    D is the nonzero part of A - A (symmetric, so positive ratios come
    from the magnitudes).  The scan grows n while every reduced a/b with
    1 <= a, b <= n is a ratio of two differences; it reports the first
    missing fraction one step past the answer.  Singletons have no nonzero
    differences and return n = 0.
    """
    amb = a.ambient
    if not isinstance(amb, IntegerLattice) or amb.rank != 1:
        raise PreconditionError("ratio box is defined for rank-1 integer sets")
    if len(a) > cap:
        raise SizeCapExceededError("too many elements for the pair scan", cap=cap, stage="ratio-box")
    mags = sorted({abs(x - y) for x in a.elements for y in a.elements if x != y})
    if not mags:
        return RatioBoxResult(n=0, missing=Fraction(1), ratio_count=0)
    ratios = {Fraction(d1, d2) for d1 in mags for d2 in mags}
    max_n = max(mags) // min(mags) + 1
    n = 0
    missing: Optional[Fraction] = None
    while missing is None and n <= max_n:
        cand = n + 1
        for x in range(1, cand + 1):
            if math.gcd(x, cand) != 1:
                continue
            if Fraction(x, cand) not in ratios:
                missing = Fraction(x, cand)
                break
            if Fraction(cand, x) not in ratios:
                missing = Fraction(cand, x)
                break
        if missing is None:
            n = cand
    return RatioBoxResult(n=n, missing=missing, ratio_count=len(ratios))
