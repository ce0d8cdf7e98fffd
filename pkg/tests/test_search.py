"""
Tests for exhaustive enumeration, the conjecture harness and the
bicentral equivalence census.

Enumerations above 3x5 are marked slow; run them with --run-slow.
"""

import pytest
from pydantic import ValidationError

from facemagic.errors import GridError
from facemagic.models import Dims, FactorizationSequence, Labeling
from facemagic.services import counting, labeling, search
from facemagic.services.construct import build
from facemagic.services.search import SearchConfig, enumerate_all


def _run(m, n, **kwargs):
    return enumerate_all(SearchConfig(m=m, n=n, **kwargs))


def _all_labelings(report):
    return {L.labels for S in report.values for L in report.labelings(S)}


# ============================================================
# Shared Reports (computed once per module)
# ============================================================

@pytest.fixture(scope="module")
def report_3x3():
    return _run(3, 3)


@pytest.fixture(scope="module")
def report_3x3_lemma():
    return _run(3, 3, pruning="lemma")


@pytest.fixture(scope="module")
def oracle_3x3():
    return search.brute_force_labelings(Dims(3, 3))


@pytest.fixture(scope="module")
def report_3x5():
    return _run(3, 5)


@pytest.fixture(scope="module")
def report_3x5_lemma():
    return _run(3, 5, pruning="lemma")


# ============================================================
# Configuration
# ============================================================

def test_config_rejects_lemma_on_mixed_parity():
    with pytest.raises(ValidationError):
        SearchConfig(m=2, n=3, pruning="lemma")
    assert SearchConfig(m=4, n=4, pruning="lemma").pruning == "lemma"
    assert SearchConfig(m=2, n=3).pruning == "pure"


def test_config_from_settings_ignores_none():
    cfg = SearchConfig.from_settings(3, 3, workers=None, pruning="lemma", value_filter=21)
    assert cfg.pruning == "lemma"
    assert cfg.workers >= 1
    assert cfg.value_filter == 21


def test_value_range():
    assert search.value_range(Dims(3, 3)) == range(10, 31)


# ============================================================
# P(3,3)
# ============================================================

def test_3x3_matches_oracle(report_3x3, oracle_3x3):
    """Propagation search against every permutation of 1..9."""
    print("\n" + "=" * 60)
    print("P(3,3) against the 9! oracle")
    print("=" * 60)

    assert report_3x3.complete
    assert _all_labelings(report_3x3) == {L.labels for L in oracle_3x3}
    for S in report_3x3.values:
        assert report_3x3.raw_count(S) == sum(1 for L in oracle_3x3 if labeling.magic_value(L) == S)
        print(f"  S={S}: raw {report_3x3.raw_count(S)}, classes {report_3x3.class_count(S)}")


def test_3x3_counts(report_3x3):
    assert set(report_3x3.values) <= {19, 20, 21}
    assert report_3x3.class_count(20) == counting.count_value_mid(3, 3) == 1
    assert report_3x3.class_count(19) == report_3x3.class_count(21)
    assert report_3x3.raw_count(19) == report_3x3.raw_count(21)
    assert report_3x3.class_count(21) >= counting.lower_bound_value_plus(3, 3)


def test_3x3_orbit_bookkeeping(report_3x3):
    for S, v in report_3x3.values.items():
        assert sum(size * k for size, k in v.orbit_sizes.items()) == v.raw
        assert sum(v.orbit_sizes.values()) == v.up_to_symmetry
        assert v.representatives == sorted(v.representatives)
        for rep in v.representatives:
            L = Labeling(Dims(3, 3), rep)
            assert labeling.canonical_form(L) == L, "representatives are canonical"


def test_3x3_modes_agree(report_3x3, report_3x3_lemma):
    assert report_3x3.same_result(report_3x3_lemma)


def test_3x3_lemma_trichotomy(report_3x3):
    for S in report_3x3.values:
        for L in report_3x3.labelings(S):
            r = labeling.verify(L)
            assert r.lemma_consistent, f"S={S} digons ({r.D1},{r.D2})"


@pytest.mark.parametrize("name", ["report_3x3", "report_3x5"])
def test_bicentral_iff_top_value(request, name):
    """Balanced exactly at S = 2mn+3; balanced labelings satisfy the row-pair identities."""
    report = request.getfixturevalue(name)
    dims = report.dims
    top = 2 * dims.size + 3
    assert top in report.values
    for S in report.values:
        for L in report.labelings(S):
            assert labeling.is_bicentrally_balanced(L) == (S == top), f"{name} S={S}"
            if S == top:
                sums = labeling.row_pair_sums(L)
                assert len(sums) == dims.n0
                assert labeling.center_label(L) == labeling.expected_center_label(dims)


@pytest.mark.parametrize("name", ["report_3x3", "report_3x5"])
def test_complement_keeps_middle_value_class(request, name):
    """Complementing the S = 2mn+2 labelings maps the set onto itself."""
    report = request.getfixturevalue(name)
    mid = 2 * report.dims.size + 2
    found = report.labelings(mid)
    assert found
    originals = {labeling.canonical_form(L).labels for L in found}
    complements = set()
    for L in found:
        C = labeling.complement(L)
        assert labeling.magic_value(C) == mid
        complements.add(labeling.canonical_form(C).labels)
    assert complements == originals


def test_3x3_complement_pairs_classes(report_3x3):
    plus = {L.labels for L in report_3x3.labelings(21)}
    minus = {labeling.complement(L).labels for L in report_3x3.labelings(19)}
    assert plus == minus


def test_value_filter(report_3x3):
    only = _run(3, 3, value_filter=21, pruning="lemma")
    assert set(only.values) == {21}
    assert only.raw_count(21) == report_3x3.raw_count(21)
    assert _run(3, 3, value_filter=22, pruning="lemma").total() == 0
    assert _run(3, 3, value_filter=5).total() == 0


def test_up_to_symmetry_flag_only_changes_counts_view(report_3x3):
    raw = _run(3, 3, up_to_symmetry=False)
    assert raw.same_result(report_3x3)
    assert raw.counts() == {S: v.raw for S, v in report_3x3.values.items()}


def test_workers_do_not_change_the_result(report_3x3):
    parallel = _run(3, 3, workers=2)
    assert parallel.same_result(report_3x3)
    assert parallel.nodes == report_3x3.nodes


def test_node_budget_flags_incomplete():
    report = _run(3, 3, max_nodes=100)
    assert not report.complete
    assert report.nodes > 100


# ============================================================
# Small & Degenerate Grids
# ============================================================

def test_2x2_every_labeling_is_magic():
    report = _run(2, 2)
    assert set(report.values) == {10}
    assert report.raw_count(10) == 24
    assert report.class_count(10) == 3
    assert report.values[10].orbit_sizes == {8: 3}
    assert _run(2, 2, pruning="lemma").same_result(report)


def test_mixed_parity_pure_search_finds_nothing():
    report = _run(2, 3)
    assert report.complete
    assert report.total() == 0
    assert search.brute_force_labelings(Dims(2, 3)) == []


def test_brute_force_limit():
    with pytest.raises(GridError):
        search.brute_force_labelings(Dims(3, 4))


# ============================================================
# P(3,5)
# ============================================================

def test_3x5_counts(report_3x5):
    print("\n" + "=" * 60)
    print("P(3,5) enumeration")
    print("=" * 60)
    print(f"  counts {report_3x5.counts()}, nodes {report_3x5.nodes}")

    assert report_3x5.complete
    assert set(report_3x5.values) <= {31, 32, 33}
    assert report_3x5.class_count(32) == counting.count_value_mid(3, 5) == 8
    assert report_3x5.class_count(31) == report_3x5.class_count(33)
    assert report_3x5.class_count(33) >= counting.lower_bound_value_plus(3, 5) == 4


def test_3x5_modes_agree(report_3x5, report_3x5_lemma):
    assert report_3x5.same_result(report_3x5_lemma)


def test_3x5_contains_constructions(report_3x5):
    found = {L.labels for L in report_3x5.labelings(33)}
    assert build(FactorizationSequence("horizontal", (3, 5))).labels in found
    assert build(FactorizationSequence("vertical", (5, 3))).labels in found


def test_3x5_lemma_trichotomy(report_3x5_lemma):
    for S in report_3x5_lemma.values:
        for L in report_3x5_lemma.labelings(S):
            assert labeling.verify(L).lemma_consistent


# ============================================================
# Conjecture Harness & Census
# ============================================================

def test_conjecture_3x3():
    report = search.conjecture_check(3, 3)
    assert report.complete
    assert report.S == 21
    assert report.missing_witnesses == []
    assert report.collisions == []
    assert len(report.constructed) == 2
    # HBBL((3,3)) and VBBL((3,3)) are transposes: two distinct standard arrays
    assert len(report.enumerated_standard) == 2
    assert report.verdict == "equal"


def test_conjecture_3x5():
    report = search.conjecture_check(3, 5)
    assert report.complete
    assert report.S == 33
    assert report.verdict == "equal"
    assert report.missing_witnesses == []
    assert report.extra_witnesses == []
    assert report.collisions == []
    assert len(report.enumerated_standard) == len(report.constructed) == 2


def test_conjecture_budget_is_inconclusive():
    report = search.conjecture_check(3, 5, max_nodes=50)
    assert report.verdict == "inconclusive"
    assert not report.complete


def test_conjecture_needs_odd_grid():
    with pytest.raises(GridError):
        search.conjecture_check(4, 4)


def test_census_3x3(report_3x3):
    census = search.bicentral_equivalence_census(3, 3)
    assert census.complete
    assert census.expected_class_size == 4
    assert census.entries
    for entry in census.entries:
        assert entry.class_size == 4
        assert entry.rect_quotient == 1
        assert entry.matches_expected
    assert census.total_class_size == report_3x3.raw_count(21)


def test_census_3x5_from_enumeration(report_3x5):
    census = search.bicentral_equivalence_census(3, 5)
    assert census.complete
    assert census.source == "enumeration"
    assert [(e.class_size, e.rect_quotient, e.full_quotient) for e in census.entries] == [
        (8, 2, 2),
        (8, 2, 2),
    ]
    assert all(e.matches_expected for e in census.entries)
    assert census.total_class_size == report_3x5.raw_count(33)


def test_census_constructed_3x5_and_5x5():
    c35 = search.bicentral_equivalence_census(3, 5, source="constructed")
    assert c35.expected_class_size == 8
    assert [(e.class_size, e.rect_quotient) for e in c35.entries] == [(8, 2), (8, 2)]
    c55 = search.bicentral_equivalence_census(5, 5, source="constructed")
    assert all(e.class_size == 16 and e.rect_quotient == 4 for e in c55.entries)
    assert all(e.matches_expected for e in c55.entries)


# ============================================================
# Slow Tiers
# ============================================================

@pytest.mark.slow
def test_4x4_has_144_labelings():
    """Every labeling of P(4,4) has S=34; 144 up to symmetry."""
    pure = _run(4, 4, workers=4)
    assert pure.complete
    assert set(pure.values) == {34}
    assert pure.class_count(34) == 144
    lemma = _run(4, 4, pruning="lemma", workers=4)
    assert lemma.same_result(pure)


@pytest.mark.slow
def test_conjecture_5x3():
    report = search.conjecture_check(5, 3)
    assert report.complete
    assert report.verdict == "equal"
    assert report.collisions == []


@pytest.mark.slow
def test_5x5_lemma_tier():
    report = _run(5, 5, pruning="lemma", workers=8)
    assert report.complete, "5x5 enumeration must finish"
    assert report.class_count(52) == counting.count_value_mid(5, 5) == 16
    assert report.class_count(51) == report.class_count(53)
    assert report.class_count(53) >= 4

    conjecture = search.conjecture_check(5, 5, workers=8)
    assert conjecture.complete
    assert conjecture.missing_witnesses == []
    print(f"  5x5 conjecture verdict: {conjecture.verdict}")
