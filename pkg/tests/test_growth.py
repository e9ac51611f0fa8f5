import math
from fractions import Fraction

import pytest

from adlab import (
    PreconditionError,
    additive_energy,
    beta_hat,
    dim_bounds,
    dim_shift_ratio,
    freiman_model,
    growth_sequence,
    integers,
    iterated_sumset,
    polynomial_growth_fit,
    residues,
    sumset,
    t_k,
    verify_growth_bounds,
    verify_span_isomorphism,
)

from oracles import naive_iterated


def test_growth_sequence_interval():
    gc = growth_sequence(integers(range(1, 9)), 4)
    assert gc.sizes == (8, 15, 22, 29)
    assert gc.truncated_at is None


def test_growth_sequence_matches_oracle():
    xs = [0, 1, 4, 9, 11]
    gc = growth_sequence(integers(xs), 5)
    for n, size in enumerate(gc.sizes, start=1):
        assert size == len(naive_iterated(xs, n))


def test_growth_sequence_generalized_ap():
    # {1, 10, 100} has no carries for small n: |nA| = C(n+2, 2)
    gc = growth_sequence(integers([1, 10, 100]), 4)
    assert gc.sizes == tuple(math.comb(n + 2, 2) for n in range(1, 5))


def test_growth_sequence_truncation():
    gc = growth_sequence(integers(range(1, 9)), 6, size_cap=40)
    assert gc.sizes == (8, 15, 22, 29, 36)
    assert gc.truncated_at == 6


def test_growth_bounds_interval_clean():
    rep = verify_growth_bounds(integers(range(1, 9)), n_max=4, k=1)
    assert not any(r.violated for r in rep.records)
    stems = {r.claim.split("_n")[0] for r in rep.records}
    assert {"growth_stage1", "growth_stage2", "split_block_growth"} <= stems
    assert rep.measured["curve"]["sizes"] == [8, 15, 22, 29]


def test_growth_bounds_stage_constants_recompute():
    a = integers(range(1, 9))
    rep = verify_growth_bounds(a, n_max=4, k=1)
    d = rep.measured["dim_lower"]
    by_claim = {r.claim: r for r in rep.records}
    r = by_claim["growth_stage2_n3"]
    size3 = r.measured["size"]
    assert size3 == 22
    assert r.fitted_constant == pytest.approx(d / (3 * size3 ** 0.5))


def test_split_block_record_recompute():
    a = integers(range(1, 9))
    rep = verify_growth_bounds(a, n_max=4, k=1)
    rec = next(r for r in rep.records if r.claim == "split_block_growth_n1_m1")
    w = dim_bounds(a, 1).lower_witness
    # k = 1, n = m = 1: S is the witness itself, |1S| * 2 >= |Lambda|
    assert rec.measured["size_ns"] == len(w)
    assert rec.measured["lhs"] == 2 * len(w)
    assert rec.measured["rhs"] == len(w)
    assert rec.measured["lhs"] >= rec.measured["rhs"]


def test_growth_bounds_rejects_empty():
    with pytest.raises(PreconditionError):
        verify_growth_bounds(integers([]))


# ---------------------------------------------------------------------------
# Beta statistic


def test_beta_hat_interval_frozen():
    bh = beta_hat(integers(range(1, 9)))
    assert bh.upper_sq == Fraction(4096, 841)
    assert bh.sum_size == 64 and bh.x_size == bh.y_size == 29
    assert bh.upper == pytest.approx(64 / 29)


def test_beta_hat_internal_consistency():
    bh = beta_hat(integers([0, 3, 7, 19, 31]))
    assert bh.upper_sq == Fraction(bh.sum_size ** 2, bh.x_size * bh.y_size)
    assert bh.candidates_tried > 0


def test_beta_hat_beats_explicit_candidates():
    a = integers(range(1, 9))
    bh = beta_hat(a)
    # X = Y = {0} and X = Y = A are both in the candidate family
    assert bh.upper_sq <= Fraction(len(a) ** 2, 1)
    aa = sumset(a, a)
    aaa = sumset(aa, a)
    assert bh.upper_sq <= Fraction(len(aaa) ** 2, len(a) ** 2)


def test_beta_hat_extra_candidate_can_win():
    a = integers(range(1, 9))
    baseline = beta_hat(a).upper_sq
    # a much longer interval than the built-in family absorbs A almost freely
    box = integers(range(0, 2048))
    bh = beta_hat(a, extra_candidates=[("box", box)])
    assert bh.x_label == bh.y_label == "box"
    assert bh.upper_sq == Fraction(4102 ** 2, 2048 ** 2)
    assert bh.upper_sq < baseline


# ---------------------------------------------------------------------------
# Polynomial growth exponent


def test_poly_fit_ap_exponent():
    ap = integers(range(0, 50, 7))
    rep = polynomial_growth_fit(ap, n_max=5)
    r1 = next(r for r in rep.records if r.claim == "poly_growth_k1")
    want = max(
        math.log((7 * n + 1) / 8) / math.log(n) for n in range(2, 6)
    )
    assert r1.measured["d_fit"] == pytest.approx(want)
    assert r1.measured["d_fit"] < 1.0
    assert r1.measured["dim_lower"] >= 1


def test_poly_fit_reports_both_orders():
    rep = polynomial_growth_fit(integers(range(1, 9)), n_max=4)
    claims = {r.claim for r in rep.records}
    assert {"poly_growth_k1", "poly_growth_k2"} <= claims


# ---------------------------------------------------------------------------
# Dimension under shifts


def test_shift_zero_keeps_dim():
    a = integers([1, 2, 4, 8, 9])
    rep = dim_shift_ratio(a, [0], k=1)
    rec = next(r for r in rep.records if r.claim == "shift_zero_fixed")
    assert not rec.violated


def test_shift_ratio_records_each_shift():
    a = integers(range(1, 9))
    rep = dim_shift_ratio(a, [0, 3, -5], k=1)
    rec = next(r for r in rep.records if r.claim == "shift_dim_ratio")
    shifts = {s["shift"]: s for s in rec.measured["shifts"]}
    assert shifts[0]["dim_lower"] == rec.measured["base_dim_lower"] == 4
    # shifting [1..8] by -5 folds elements onto negatives of each other
    assert shifts[-5]["dim_lower"] == 3
    for s in shifts.values():
        su = dim_bounds(integers([x + s["shift"] for x in range(1, 9)]), 1)
        assert (su.lower, su.upper) == (s["dim_lower"], s["dim_upper"])


# ---------------------------------------------------------------------------
# Freiman models


def test_freiman_model_interval():
    a = integers(range(1, 9))
    fm = freiman_model(a, l=2, trials=64, seed=1)
    assert fm.verified
    assert len(fm.mapping) == len(a)
    assert len(set(fm.mapping.values())) == len(a)
    assert all(0 <= v < fm.modulus for v in fm.mapping.values())
    assert verify_span_isomorphism(fm.subset, fm.mapping, fm.l, fm.modulus)


def test_freiman_model_preserves_energy():
    a = integers(range(1, 9))
    fm = freiman_model(a, l=2, trials=64, seed=1)
    image = residues(fm.mapping.values(), fm.modulus)
    assert t_k(image, 2).value == t_k(a, 2).value == 344
    assert additive_energy(image, image).value == 344


def test_freiman_verifier_rejects_tampering():
    a = integers(range(1, 9))
    fm = freiman_model(a, l=2, trials=64, seed=1)
    ks = sorted(fm.mapping)
    collide = dict(fm.mapping)
    collide[ks[0]] = collide[ks[1]]
    assert not verify_span_isomorphism(fm.subset, collide, fm.l, fm.modulus)
    swapped = dict(fm.mapping)
    swapped[ks[0]], swapped[ks[1]] = swapped[ks[1]], swapped[ks[0]]
    assert not verify_span_isomorphism(fm.subset, swapped, fm.l, fm.modulus)


def test_freiman_translation_still_isomorphism():
    a = integers(range(1, 9))
    fm = freiman_model(a, l=2, trials=64, seed=1)
    shifted = {k: (v + 1) % fm.modulus for k, v in fm.mapping.items()}
    assert verify_span_isomorphism(fm.subset, shifted, fm.l, fm.modulus)


def test_freiman_model_deterministic():
    a = integers([0, 1, 5, 11, 19])
    f1 = freiman_model(a, l=2, trials=32, seed=4)
    f2 = freiman_model(a, l=2, trials=32, seed=4)
    assert f1.mapping == f2.mapping and f1.modulus == f2.modulus


def test_iterated_sumset_agrees_with_chain():
    a = integers([0, 2, 5])
    chain = a
    for n in range(2, 5):
        chain = sumset(chain, a)
        assert set(iterated_sumset(a, n).elements) == set(chain.elements)
