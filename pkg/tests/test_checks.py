"""The named check suite: registry coverage, determinism, mutations."""

import pytest

from rieszlab.checks import (
    CLAIM_INDEX, REGISTRY, run_all, run_check,
    search_truncated_joins, summary_text,
)
from rieszlab.errors import PreconditionError, UnknownCheck
from rieszlab.mutations import MUTATIONS, tampered
from rieszlab.reports import FAILS, HOLDS


REQUIRED_CLAIMS = (
    "theorem 1.1", "theorem 2.3", "theorem 3.2", "theorem 4.2",
    "corollary 3.3", "corollary 3.4", "corollary 3.5", "corollary 3.6",
    "lemma 3.1", "lemma 4.4", "lemma 4.5",
    "example 2.2", "example 4.3 (continuous)", "example 4.3 (lateral meet)",
    "remark c00", "remark positive-linear-is-zero",
)


def test_registry_covers_every_claim():
    for claim in REQUIRED_CLAIMS:
        ids = CLAIM_INDEX[claim]
        assert ids, f"claim {claim} has no checks"
        for cid in ids:
            assert cid in REGISTRY, f"{claim} points at unknown id {cid}"


def test_registry_entries_have_titles_and_profiles():
    for cid, d in REGISTRY.items():
        assert d.title
        assert isinstance(d.quick, dict) and isinstance(d.full, dict)


def test_unknown_id():
    with pytest.raises(UnknownCheck):
        run_check("nosuch")


def test_determinism_identical_records():
    a = run_check("lem-3.1", {"instances": 40}, seed=7)
    b = run_check("lem-3.1", {"instances": 40}, seed=7)
    assert a.record() == b.record()
    c = run_check("ex-2.2", seed=3)
    d = run_check("ex-2.2", seed=3)
    assert c.record() == d.record()


def test_run_all_subset_and_empty_filter():
    results, summary = run_all(ids=["frag-boolean", "ex-4.3-pl"], seed=0)
    assert summary["total"] == 2 and summary[FAILS] == 0
    assert "total=2" in summary_text(summary)
    with pytest.raises(PreconditionError):
        run_all(ids=[])


def test_selected_checks_hold():
    for cid in ("lem-3.1", "thm-1.1-e", "thm-2.3-forward", "ex-2.2",
                "ex-4.3-pl", "ex-4.3-latmeet", "rem-linear-positive"):
        result = run_check(cid)
        assert result.result.verdict == HOLDS, (cid, result.summary_line())


def test_config_out_of_range_is_rejected():
    with pytest.raises(PreconditionError):
        run_check("frag-boolean", {"n": 0})
    with pytest.raises(PreconditionError):
        run_check("lem-3.1", {"instances": "many"})


def test_runner_exception_becomes_failure(monkeypatch):
    from rieszlab import checks as checks_mod
    broken = REGISTRY["lem-3.1"]

    def boom(rng, cfg):
        raise RuntimeError("wired to explode")

    # CheckDef is frozen; swap the whole registry entry
    monkeypatch.setitem(checks_mod.REGISTRY, "lem-3.1",
                        type(broken)(broken.id, broken.title, boom,
                                     broken.quick, broken.full))
    result = run_check("lem-3.1")
    assert result.result.verdict == FAILS
    assert "exception" in (result.result.witness or "")


def test_mutation_meet_formula_breaks_lateral_meet_example():
    with tampered("latinf-collinear-meet-formula"):
        assert run_check("ex-4.3-latmeet").result.verdict == FAILS
    assert run_check("ex-4.3-latmeet").result.verdict == HOLDS


def test_mutation_sup_sign_flip_breaks_boolean_algebra():
    with tampered("latsup-sign-flip"):
        assert run_check("frag-boolean").result.verdict == FAILS
    assert run_check("frag-boolean").result.verdict == HOLDS


def test_mutation_zero_meet_breaks_grid_reconstruction():
    with tampered("latinf-zero"):
        report = run_check("lem-3.1").result
        assert report.verdict == FAILS
        assert report.witness


def test_mutation_names_are_documented():
    assert set(MUTATIONS) >= {"latinf-collinear-meet-formula",
                              "latsup-sign-flip"}


def test_search_classifications():
    report = search_truncated_joins({"instances": 6, "max_level": 24,
                                     "seed": 3})
    kinds = [c.classification for c in report.cases]
    descs = [c.description for c in report.cases]
    assert "stabilized" in kinds
    ramped = kinds[descs.index("ramped basis vs zero")]
    assert ramped == "monotone-unbounded"
    same = kinds[descs.index("operator vs itself")]
    assert same == "stabilized"
    assert "no claim" in report.note
    again = search_truncated_joins({"instances": 6, "max_level": 24,
                                    "seed": 3})
    assert again.lines() == report.lines()


def test_summary_lines_format():
    result = run_check("ex-4.3-pl")
    line = result.summary_line()
    parts = line.split()
    assert parts[0] == "ex-4.3-pl" and parts[1] in ("holds", "fails",
                                                    "inconclusive")
    assert parts[2].isdigit()
