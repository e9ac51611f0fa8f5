import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from adlab import (
    PreconditionError,
    additive_energy,
    beta_decomposition,
    bsg_asymmetric,
    dec_tk,
    dissociated_peeling,
    integers,
    level_set,
    rep_fn,
    ratio_box,
    sidon_extract,
    sumset,
    t_k,
)

from oracles import naive_ratio_box, naive_relation, naive_sidon_max


# ---------------------------------------------------------------------------
# Peeling


def test_peeling_partitions_the_set():
    a = integers(range(1, 9))
    peel = dissociated_peeling(a, 3)
    pieces = [set(b.elements) for b in peel.blocks] + [set(peel.remainder.elements)]
    merged = set().union(*pieces)
    assert merged == set(a.elements)
    assert sum(len(p) for p in pieces) == len(a)


def test_peeling_blocks_are_dissociated():
    a = integers([1, 2, 3, 5, 8, 13, 21, 34, 55])
    peel = dissociated_peeling(a, 4)
    assert peel.certified
    for b in peel.blocks:
        assert len(b) == 4
        assert naive_relation(list(b.elements), 1) is None


def test_peeling_remainder_has_certified_dim():
    peel = dissociated_peeling(integers(range(1, 9)), 3)
    assert peel.remainder_dim is not None and peel.remainder_dim.exact
    assert peel.remainder_dim.value <= len(peel.remainder)


def test_peeling_no_block_when_l_exceeds_set():
    peel = dissociated_peeling(integers([1, 2]), 5)
    assert peel.blocks == ()
    assert set(peel.remainder.elements) == {1, 2}


# ---------------------------------------------------------------------------
# Dyadic level sets


def test_level_set_frozen_bands():
    a = integers(range(1, 5))
    r = rep_fn([(a, "+"), (a, "+")])
    bands = level_set(r)
    shaped = [(band, set(g.elements)) for band, g in bands]
    assert shaped == [
        (Fraction(1, 2), {2, 8}),
        (Fraction(1), {3, 7}),
        (Fraction(2), {4, 5, 6}),
    ]


def test_level_set_partitions_support():
    a = integers([0, 1, 3, 7, 11])
    r = rep_fn([(a, "+"), (a, "+")])
    bands = level_set(r)
    support = set(sumset(a, a).elements)
    seen = set()
    for band, g in bands:
        for x in g.elements:
            assert x not in seen
            seen.add(x)
            # the multiplicity sits inside (band, 2*band]
            assert band < r.entries[x] <= 2 * band
    assert seen == support


def test_level_set_respects_base():
    a = integers(range(1, 5))
    r = rep_fn([(a, "+"), (a, "+")])
    doubled = level_set(r, base=2)
    assert [band for band, _ in doubled] == [Fraction(1, 2), Fraction(1), Fraction(2)]


# ---------------------------------------------------------------------------
# Asymmetric graph decomposition


def test_bsg_contract_small():
    a = integers(range(1, 9))
    k = Fraction(2)
    assert additive_energy(a, a).value * k >= len(a) ** 3  # precondition holds
    res = bsg_asymmetric(a, a, k)
    assert len(res.h) > 0
    hh = sumset(res.h, res.h)
    assert res.stats["hh_size"] == len(hh)
    assert res.stats["doubling"] == Fraction(len(hh), len(res.h))
    shifted = {e + res.x for e in res.h.elements}
    assert res.stats["intersection"] == len(shifted & set(a.elements))


def test_bsg_rejects_weak_energy():
    a = integers([1, 10, 100, 1000])  # Sidon: E = 2n^2 - n
    with pytest.raises(PreconditionError):
        bsg_asymmetric(a, a, Fraction(1))


def test_bsg_deterministic_per_seed():
    a = integers([0, 1, 2, 3, 5, 8, 11])
    r1 = bsg_asymmetric(a, a, Fraction(3), seed=5)
    r2 = bsg_asymmetric(a, a, Fraction(3), seed=5)
    assert r1.h.elements == r2.h.elements and r1.x == r2.x
    assert r1.stats == r2.stats


def test_bsg_asymmetric_pair_contract():
    a = integers(range(1, 13))
    b = integers(range(4, 12))
    e = additive_energy(a, b).value
    k = Fraction(2 * len(a) * len(b) ** 2, e)
    res = bsg_asymmetric(a, b, k)
    assert len(res.h) > 0
    hh = sumset(res.h, res.h)
    assert res.stats["doubling"] == Fraction(len(hh), len(res.h))
    shifted = {el + res.x for el in res.h.elements}
    assert res.stats["intersection"] == len(shifted & set(b.elements))


# ---------------------------------------------------------------------------
# Energy-guided refinement


def test_beta_decomposition_selects_dense_core():
    a = integers(range(1, 17))
    bd = beta_decomposition(a, k=2)
    assert 0 < len(bd.a_star) <= len(a)
    assert set(bd.a_star.elements) <= set(a.elements)
    assert bd.stats["density_ratio"] == Fraction(len(a), len(bd.a_star))


def test_beta_decomposition_deterministic():
    a = integers([1, 4, 9, 16, 25, 36, 49, 64])
    b1 = beta_decomposition(a, k=2)
    b2 = beta_decomposition(a, k=2)
    assert b1.a_star.elements == b2.a_star.elements


# ---------------------------------------------------------------------------
# Additive/multiplicative splitting


def test_dec_tk_interval_clean_exit():
    a = integers(range(1, 9))
    res = dec_tk(a, s=2)
    assert set(res.b.elements) | set(res.c.elements) == set(a.elements)
    assert set(res.b.elements) & set(res.c.elements) == set()
    assert res.energies["t_s_mult_c"] == t_k(res.c, 2, op="*").value
    assert res.energies["peels"] == 0
    # clean exit requires the multiplicative energy to sit under the threshold
    assert res.energies["t_s_mult_c"] <= res.threshold


def test_dec_tk_geometric_progression_peels():
    a = integers([2 ** i for i in range(10)])
    res = dec_tk(a, s=2)
    assert set(res.b.elements) | set(res.c.elements) == set(a.elements)
    assert set(res.b.elements) & set(res.c.elements) == set()
    assert res.energies["t_s_mult_c"] == t_k(res.c, 2, op="*").value
    if res.energies["peels"] >= 1 and len(res.b) >= 2:
        q = res.q
        assert res.energies["t_q_add_b"] == t_k(res.b, q).value
        assert res.energies["t_q_add_b"] < len(res.b) ** (2 * q - 1)


def test_dec_tk_records_iterations():
    a = integers([2 ** i for i in range(10)])
    res = dec_tk(a, s=2)
    # the trace logs every pass, including the final clean check
    peels = res.energies["peels"]
    assert peels <= len(res.iterations) <= peels + 1
    assert peels == sum(1 for step in res.iterations if step["above_threshold"])


# ---------------------------------------------------------------------------
# Sidon extraction


def _is_sidon(xs, h):
    sums = [sum(t) for t in combinations_with_replacement(sorted(xs), h)]
    return len(sums) == len(set(sums))


def test_sidon_frozen_values():
    assert sidon_extract(integers(range(1, 6)), 2).elements == (1, 2, 4)
    got = sidon_extract(integers([2, 3, 4, 9]), 2, op="*")
    assert set(got.elements) == {2, 3, 4, 9}


def test_sidon_exact_matches_oracle():
    rng = random.Random(17)
    for _ in range(10):
        xs = sorted(rng.sample(range(1, 40), rng.randint(2, 8)))
        for h in (2, 3):
            got = sidon_extract(integers(xs), h)
            assert set(got.elements) <= set(xs)
            assert _is_sidon(got.elements, h)
            assert len(got) == naive_sidon_max(xs, h)


def test_sidon_greedy_mode_gives_valid_subset():
    xs = sorted(random.Random(23).sample(range(1, 500), 30))
    got = sidon_extract(integers(xs), 2, mode="greedy")
    assert set(got.elements) <= set(xs)
    assert _is_sidon(got.elements, 2)


# ---------------------------------------------------------------------------
# Ratio boxes


def test_ratio_box_frozen():
    rb = ratio_box(integers([0, 1, 3]))
    assert rb.n == 3 and rb.missing == Fraction(1, 4)


def test_ratio_box_ap_realizes_four():
    ap = integers(range(0, 35, 7))  # 5-term progression
    assert ratio_box(ap).n == 4


def test_ratio_box_matches_oracle():
    rng = random.Random(29)
    for _ in range(20):
        xs = sorted(rng.sample(range(0, 60), rng.randint(2, 7)))
        rb = ratio_box(integers(xs))
        assert rb.n == naive_ratio_box(xs)


def test_ratio_box_missing_is_first_gap():
    xs = [0, 1, 3]
    rb = ratio_box(integers(xs))
    mags = sorted({abs(x - y) for x in xs for y in xs if x != y})
    ratios = {Fraction(d1, d2) for d1 in mags for d2 in mags}
    assert rb.missing not in ratios
    n = rb.n
    assert rb.missing.numerator <= n + 1 and rb.missing.denominator <= n + 1
