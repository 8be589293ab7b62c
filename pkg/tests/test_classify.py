import json

import pytest

from tautilt import bruteforce
from tautilt.algebra import has_loop
from tautilt.classify import (
    check_completion_property, enumerate_modules, enumerate_support_tau_tilting,
    enumerate_tau_tilting, enumerate_tilting, is_hereditary, modules_of_dim,
    saturation_check, simple_projective_dimensions,
)
from tautilt.corpus import CORPUS
from tautilt.modules import AtLeast, CapExceeded, is_indecomposable

from conftest import COMPUTED, algebra, report, table


def test_module_counts():
    mods = enumerate_modules(algebra("a3rad2"), (1, 1, 1))
    assert len([M for M in mods if not M.is_zero]) == 11
    kr = enumerate_modules(algebra("kronecker"), (1, 1))
    assert len([M for M in kr if not M.is_zero]) == 6


def test_kronecker_indecomposables_at_11():
    mods = modules_of_dim(algebra("kronecker"), (1, 1))
    # p + 1 = 3 regular modules plus the decomposable one
    assert sum(is_indecomposable(M) for M in mods) == 3
    assert len(mods) == 4


def test_a3rad2_indecomposables_and_families():
    T = table("a3rad2")
    assert sorted(T.labels) == ["P1", "P2", "P3", "S1", "S2"]
    tilting = {T.label(S) for S in enumerate_tilting(T)}
    tau_tilting = {T.label(S) for S in enumerate_tau_tilting(T)}
    assert tilting == {"P1+P2+P3", "P1+P2+S2"}
    assert tau_tilting == tilting | {"P1+P3+S1"}


def test_a3rad2_support_family():
    T = table("a3rad2")
    sup = enumerate_support_tau_tilting(algebra("a3rad2"), (1, 1, 1), table=T)
    assert len(sup) == 12
    assert sup[0].support == (1, 2, 3)
    assert sup[-1].summands == ()
    assert {T.label(e.summands) for e in sup if e.support == (1, 2)} == {"P1+S2", "P1+S1"}


@pytest.mark.parametrize("name", COMPUTED)
def test_golden_counts(name):
    exp = CORPUS[name].expected
    r = report(name)
    assert r.algebra.dim == exp["dimension"]
    assert len(r.table) == exp["indecomposables"]
    assert len(r.tilting) == exp["tilting"]
    assert len(r.tau_tilting) == exp["tau_tilting"]
    assert len(r.support_tau_tilting) == exp["support_tau_tilting"]
    assert r.hereditary == exp["hereditary"]
    assert r.has_loop == exp["has_loop"]


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_simple_projective_dimensions(name):
    A = algebra(name)
    pds = simple_projective_dimensions(A)
    got = {str(v): (str(d) if isinstance(d, AtLeast) else d) for v, d in pds.items()}
    assert got == CORPUS[name].expected["simple_pd"]


@pytest.mark.parametrize("name", COMPUTED)
def test_engine_matches_bruteforce(name):
    T = table(name)
    assert enumerate_tilting(T) == bruteforce.tilting_sets(T)
    assert enumerate_tau_tilting(T) == bruteforce.tau_tilting_sets(T)
    sup = enumerate_support_tau_tilting(algebra(name), CORPUS[name].dim_bound, table=T)
    assert [(e.support, e.summands) for e in sup] == bruteforce.support_tau_tilting_sets(T)


@pytest.mark.parametrize("name", COMPUTED)
def test_tilting_inside_tau_tilting(name):
    r = report(name)
    assert set(r.tilting) <= set(r.tau_tilting)
    sup = {e.summands for e in r.support_tau_tilting}
    assert set(r.tau_tilting) <= sup


@pytest.mark.parametrize("name", COMPUTED)
def test_pd_flags_agree_with_tau_criterion(name):
    T = table(name)
    for M, flag in zip(T.modules, T.pd_le_one):
        assert bruteforce.pd_le_one_via_tau(M) == flag


@pytest.mark.parametrize("name", COMPUTED)
def test_completion(name):
    ok, missing = check_completion_property(table(name))
    assert ok and not missing


@pytest.mark.parametrize("name", COMPUTED)
def test_sincere_faithful_properties(name):
    sf = report(name).sincere_faithful
    assert sf["tau_tilting_sincere"]
    assert sf["tilting_faithful"]
    assert sf["faithful_iff_tilting"]
    if report(name).hereditary:
        assert sf["hereditary_sincere_rigid_faithful"]


def test_a3rad2_tau_tilting_not_faithful():
    assert report("a3rad2").sincere_faithful["tau_tilting_not_faithful"] == ["P1+P3+S1"]


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_verdicts_pass(name):
    r = report(name)
    assert r.verdict == "PASS"
    assert r.hereditary == is_hereditary(algebra(name))


def test_kronecker_families_not_computed():
    r = report("kronecker")
    assert not r.families_computed
    assert r.tilting is None and r.families_equal is None
    assert r.rigid_modules_partial_tilting
    assert r.to_json()["families"]["status"] == "NOT COMPUTED"


def test_kronecker_saturation_finds_more():
    new = saturation_check(algebra("kronecker"), (1, 1))
    assert {(d[1], d[2]) for d in new} == {(2, 1), (1, 2)}


def test_linear_saturation_is_quiet():
    assert saturation_check(algebra("linear-a3"), (1, 1, 1)) == []


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_loop_means_infinite_global_dimension(name):
    A = algebra(name)
    if has_loop(A.quiver):
        pds = simple_projective_dimensions(A, cutoff=6).values()
        assert any(isinstance(d, AtLeast) for d in pds)


def test_witness_label():
    r = report("a3rad2")
    assert r.table.label(r.witness) == "P1+P3+S1"


def test_cap_exceeded_in_enumeration():
    with pytest.raises(CapExceeded) as info:
        modules_of_dim(algebra("kronecker"), (2, 2), cap=8)
    assert info.value.dim_vector is not None


def test_report_is_deterministic():
    from tautilt.classify import check_theorem
    a = check_theorem(algebra("a3rad2"), (1, 1, 1), name="a3rad2").to_json()
    b = check_theorem(algebra("a3rad2"), (1, 1, 1), name="a3rad2").to_json()
    assert json.dumps(a) == json.dumps(b)


def test_uniform_bound_two_on_a3rad2():
    # bound 2 finds nothing new for this representation-finite algebra
    r = report("a3rad2")
    from tautilt.classify import check_theorem
    r2 = check_theorem(algebra("a3rad2"), 2, name="a3rad2", saturation=False)
    assert r2.table.labels == r.table.labels
    assert r2.tau_tilting == r.tau_tilting
