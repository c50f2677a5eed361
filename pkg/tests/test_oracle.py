import dataclasses
import json
from pathlib import Path

import pytest

from stirpadic import oracle
from stirpadic.oracle import (
    CLAIMS,
    SweepReport,
    SweepSpec,
    check_case,
    find_non_minzero_shift_examples,
    run_all,
    run_sweep,
)
from stirpadic.padic import INFINITE
from stirpadic.sequences import Kind

CLAIM_IDS = [
    "L2.1", "T2.1", "C2.1", "C2.2", "T2.2", "C2.3", "T2.3", "C2.4", "T2.4", "C2.5", "T2.5",
    "EQ1.1", "EQ1.3", "EQ1.4", "L3.1", "T3.1", "C3.1", "T3.2", "C3.2", "C3.3", "T3.3", "T3.4",
    "L5.1", "P5.1", "EQ5.6", "L4.1", "L4.2", "EQ4.x",
]
README = Path(__file__).resolve().parents[1] / "README.md"


def test_claim_table_is_total():
    assert list(CLAIMS) == CLAIM_IDS
    assert [c for c in CLAIMS.values() if c.conjecture] == [CLAIMS["EQ1.3"]]
    for spec in oracle._profile_specs("full"):
        assert spec.claim_id in CLAIMS
    assert {s.claim_id for s in oracle._profile_specs("full")} == set(CLAIM_IDS)


def test_readme_maps_every_claim():
    text = README.read_text(encoding="utf-8")
    rows = {line.split("|")[1].strip().strip("`") for line in text.splitlines() if line.startswith("| `")}
    assert set(CLAIM_IDS) <= rows


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec("T9.9", (2,)).validate()
    with pytest.raises(ValueError):
        SweepSpec("T2.1", (4,)).validate()
    with pytest.raises(ValueError):
        SweepSpec("T2.1", ()).validate()
    with pytest.raises(ValueError):
        SweepSpec("EQ1.1", (3,)).validate()
    with pytest.raises(ValueError):
        SweepSpec("T2.1", (2,), {"n": (5, 4)}).validate()
    with pytest.raises(ValueError):
        run_sweep(SweepSpec("T9.9", (2,)))


@pytest.mark.parametrize(
    "claim_id,primes,ranges",
    [("EQ1.1", (2,), {"h": (0, 4)}), ("T2.4", (2,), {"k": (1, 200)}), ("T2.2", (5,), {"h": (0, 0)})],
)
def test_spec_examples_pass(claim_id, primes, ranges):
    rep = run_sweep(SweepSpec(claim_id, primes, ranges))
    assert rep.verdict == "PASS" and rep.cases_checked > 0 and not rep.failures


def test_eq11_counts_match_range():
    rep = run_sweep(SweepSpec("EQ1.1", (2,), {"h": (0, 4)}))
    assert rep.cases_checked == sum(2**h for h in range(5))


def test_l21_skips_zero_values():
    rep = run_sweep(SweepSpec("L2.1", (3,), {"n": (0, 10), "k": (1, 12)}))
    assert rep.cases_skipped > 0 and rep.verdict == "PASS"
    assert rep.cases_checked + rep.cases_skipped == 11 * 12


def test_sweeps_are_reproducible():
    spec = SweepSpec("T3.1", (2, 3), {"n": (1, 30)})
    a, b = run_sweep(spec).to_dict(), run_sweep(spec).to_dict()
    a.pop("elapsed"), b.pop("elapsed")
    assert a == b


def test_failures_carry_replayable_inputs(monkeypatch):
    original = CLAIMS["C2.5"]

    def broken(p, k):
        ok, expected, observed = original.check(p=p, k=k)
        return (k % 7 != 3, expected, observed)

    monkeypatch.setitem(CLAIMS, "C2.5", dataclasses.replace(original, check=broken))
    rep = run_sweep(SweepSpec("C2.5", (3,), {"k": (1, 20)}))
    assert rep.verdict == "FAIL"
    assert [f[0]["k"] for f in rep.failures] == [3, 10, 17]
    monkeypatch.setitem(CLAIMS, "C2.5", original)
    for inputs, _, _ in rep.failures:
        assert check_case("C2.5", inputs)[0]
    json.dumps(rep.to_dict())


def test_errors_become_failures(monkeypatch):
    original = CLAIMS["T2.4"]

    def boom(p, k):
        raise ValueError("synthetic")

    monkeypatch.setitem(CLAIMS, "T2.4", dataclasses.replace(original, check=boom))
    rep = run_sweep(SweepSpec("T2.4", (2,), {"k": (1, 3)}))
    assert len(rep.failures) == 3 and "synthetic" in rep.failures[0][2]


def test_conjecture_flag_and_verdict():
    rep = run_sweep(SweepSpec("EQ1.3", (2,), {"c": (1, 3), "h": (0, 3)}))
    assert rep.conjecture_flag and rep.verdict == "PASS"
    flagged = SweepReport("EQ1.3", (2,), {}, failures=[({}, 1, 2)], conjecture_flag=True)
    assert flagged.verdict == "CONJECTURE VIOLATION"
    assert "verdict=CONJECTURE_VIOLATION" in flagged.log_line()
    assert SweepReport("T2.1", (2,), {}, failures=[({}, 1, 2)]).verdict == "FAIL"


def test_jsonable_handles_infinite_and_big_ints():
    assert oracle._jsonable(INFINITE) is None
    assert oracle._jsonable(2**60) == str(2**60)
    assert oracle._jsonable((1, INFINITE)) == [1, None]


def test_run_all_empty_claim_list():
    assert run_all("quick", claims=[]) == []


def test_run_all_unknown_profile():
    with pytest.raises(ValueError):
        run_all("medium")


def test_run_all_subset_with_workers():
    serial = run_all("quick", claims=["T2.4", "L4.2"])
    parallel = run_all("quick", claims=["T2.4", "L4.2"], workers=2)
    assert [r.claim_id for r in serial] == [r.claim_id for r in parallel] == ["T2.4", "L4.2"]
    for a, b in zip(serial, parallel):
        assert (a.cases_checked, a.failures) == (b.cases_checked, b.failures)


@pytest.mark.slow
def test_quick_profile_passes():
    reports = run_all("quick")
    assert [r.claim_id for r in reports] == CLAIM_IDS
    assert all(r.verdict == "PASS" for r in reports)


def test_find_non_minzero_shift_examples():
    found = find_non_minzero_shift_examples(2, 6)
    assert (5, 3) in found
    assert find_non_minzero_shift_examples(2, 1) == []
    assert len(find_non_minzero_shift_examples(2, 3)) <= 3
    first = find_non_minzero_shift_examples(3, 12, Kind.FIRST)
    assert all(k >= 2 for _, k in first)
