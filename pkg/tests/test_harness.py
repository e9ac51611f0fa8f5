import pytest

from adlab import PreconditionError, integers
from adlab.harness import (
    CORE_INSTANCES,
    FITTED_CLAIMS,
    HARD_CLAIMS,
    REGISTRY,
    evaluate_claim,
    fit_constant,
    generate,
    get_claim,
    has_hard_violation,
    report_to_json,
    run_core_suite,
    run_suite,
    spec,
)
from adlab.modular import subgroup


# ---------------------------------------------------------------------------
# Generators


def test_generator_frozen_examples():
    assert generate(spec("es_product", s=2, h=2)).elements == (6, 12, 18, 36)
    assert generate(spec("interval", n=4)).elements == (1, 2, 3, 4)
    q = generate(spec("cube", gens=(1, 10, 100)))
    assert len(q) == 8  # proper cube on 3 generators


def test_generator_ap_and_gp():
    assert generate(spec("ap", start=1, step=1, length=6)).elements == tuple(range(1, 7))
    assert generate(spec("gp", base=2, length=5)).elements == (1, 2, 4, 8, 16)


def test_generator_random_sample_deterministic():
    s1 = generate(spec("random_sample", seed=3, n_max=1000, size=14))
    s2 = generate(spec("random_sample", seed=3, n_max=1000, size=14))
    s3 = generate(spec("random_sample", seed=4, n_max=1000, size=14))
    assert s1.elements == s2.elements
    assert len(s1) == 14
    assert s1.elements != s3.elements


def test_generator_unknown_name_raises():
    with pytest.raises(PreconditionError):
        generate(spec("no_such_generator", x=1))


def test_generator_parameter_validation():
    with pytest.raises(PreconditionError):
        generate(spec("interval"))
    with pytest.raises(PreconditionError):
        generate(spec("interval", n=4, bogus=1))


def test_spec_serialization_roundtrip():
    s = spec("ap", start=5, step=3, length=7, seed=2)
    j = s.to_json()
    assert j["generator"] == "ap"
    assert j["params"] == {"length": 7, "start": 5, "step": 3}
    assert j["seed"] == 2
    assert "ap" in j["label"]


# ---------------------------------------------------------------------------
# Registry


def test_registry_partition():
    assert set(REGISTRY) == set(HARD_CLAIMS) | set(FITTED_CLAIMS)
    assert not set(HARD_CLAIMS) & set(FITTED_CLAIMS)
    for cid, claim in REGISTRY.items():
        assert claim.id == cid
        assert claim.klass in ("hard", "fitted")
        assert claim.summary


def test_get_claim_unknown_raises():
    with pytest.raises(PreconditionError):
        get_claim("no_such_claim")


def test_dirichlet_claim_on_subgroup_holds():
    g = subgroup(31, 5).members
    recs = evaluate_claim(
        "dirichlet_dim_lower", g, {"generator": "subgroup", "params": {"p": 31, "t": 5}}
    )
    assert recs and not any(r.violated for r in recs)


def test_hard_claims_on_interval_all_hold():
    a = integers(range(1, 9))
    inst = {"generator": "literal"}
    for cid in HARD_CLAIMS:
        recs = evaluate_claim(cid, a, inst)
        assert not any(r.violated for r in recs), cid


def test_evaluate_claim_skip_note():
    big = integers(range(1, 200))
    recs = evaluate_claim("energy_dim_lower", big, {"generator": "literal"})
    assert recs
    assert all(r.note.startswith("skipped:") for r in recs)
    assert not any(r.violated for r in recs)


# ---------------------------------------------------------------------------
# Constant fitting


def test_fit_constant_shape():
    recs = []
    for a in (integers(range(1, 9)), integers([1, 2, 4, 8, 16])):
        recs += evaluate_claim("rudin_constant", a, {"generator": "literal"})
    fc = fit_constant("rudin_constant", recs)
    assert fc["claim"] == "rudin_constant"
    assert fc["direction"] == "upper"
    assert fc["count"] == len([r for r in recs if r.fitted_constant is not None])
    assert fc["binding"] == fc["max"]  # upper-direction constants bind at the max
    assert fc["min"] <= fc["quantiles"]["q25"] <= fc["quantiles"]["q50"]
    assert fc["quantiles"]["q50"] <= fc["quantiles"]["q75"] <= fc["max"]
    assert fc["finite"]


def test_fit_constant_lower_direction_binds_at_min():
    recs = []
    for a in (integers(range(1, 9)), integers(range(1, 13))):
        recs += evaluate_claim("sidon_extremal", a, {"generator": "literal"})
    fc = fit_constant("sidon_extremal", recs)
    assert fc["direction"] == "lower"
    assert fc["binding"] == fc["min"]


def test_fit_constant_empty_raises():
    with pytest.raises(PreconditionError):
        fit_constant("rudin_constant", [])


# ---------------------------------------------------------------------------
# Suite runner


def test_run_suite_no_instances():
    rep = run_suite(claim_ids=["growth_monotone"], instances=())
    assert rep["summary"]["records"] == 0
    assert rep["summary"]["hard_violations"] == 0
    assert not has_hard_violation(rep)


def test_run_suite_unknown_claim_raises():
    with pytest.raises(PreconditionError):
        run_suite(claim_ids=["growth_monotone", "bogus"], instances=())


def test_run_suite_single_instance():
    rep = run_suite(
        claim_ids=["growth_monotone", "pluennecke_doubling", "rudin_constant"],
        instances=[integers(range(1, 9))],
    )
    assert rep["summary"]["instances"] == 1
    assert rep["summary"]["records"] >= 3
    assert rep["summary"]["hard_violations"] == 0
    assert "rudin_constant" in rep["fits"]
    assert rep["violations"] == []


def test_run_suite_report_is_deterministic():
    kwargs = dict(
        claim_ids=["growth_monotone", "dim_chain"],
        instances=[spec("interval", n=6), spec("gp", base=2, length=6)],
    )
    j1 = report_to_json(run_suite(**kwargs), drop_timing=True)
    j2 = report_to_json(run_suite(**kwargs), drop_timing=True)
    assert j1 == j2


def test_core_suite_clean():
    rep = run_core_suite()
    assert rep["summary"]["hard_violations"] == 0
    assert rep["summary"]["records"] > 100
    assert rep["summary"]["instances"] == len(CORE_INSTANCES)
    assert not has_hard_violation(rep)
    # every core claim family produced at least one fit or record
    assert rep["fits"]


def test_report_json_parses_back():
    import json

    rep = run_suite(claim_ids=["growth_monotone"], instances=[integers([1, 2, 3])])
    parsed = json.loads(report_to_json(rep))
    assert parsed["schema"] == rep["schema"]
    assert parsed["summary"]["records"] == rep["summary"]["records"]
