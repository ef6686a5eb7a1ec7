from collections import Counter

import pytest

from abelian_cremona.groups import all_groups, cyclic, elementary, from_cyclic_factors, trivial_group
from abelian_cremona.partitions import Partition, lr_coefficient, lr_product
from abelian_cremona.verify import (
    CHECKS,
    ORACLE_LIMIT_ENV,
    ExplicitGroup,
    OracleBoundError,
    explicit_group,
    oracle_extensions,
    oracle_limit,
    oracle_lr_coefficient,
    oracle_lr_product,
    oracle_quotient_type,
    oracle_sub_quotient_pairs,
    oracle_subgroup_types,
    oracle_subgroups,
    run_check,
    run_suite,
)

Z = from_cyclic_factors


def test_oracle_subgroup_examples():
    assert oracle_subgroup_types(ExplicitGroup((4,))) == {trivial_group(), cyclic(2), cyclic(4)}
    assert oracle_subgroup_types(ExplicitGroup((2, 2))) == {trivial_group(), cyclic(2), elementary(2, 2)}
    assert len(oracle_subgroups(ExplicitGroup((2, 2)))) == 5
    E = ExplicitGroup((4, 2))
    assert len(oracle_subgroups(E)) == 8
    assert len(oracle_subgroup_types(E)) == 5


def test_oracle_quotient_examples():
    assert oracle_quotient_type(ExplicitGroup((4,)), [(2,)]) == cyclic(2)
    assert oracle_quotient_type(ExplicitGroup((2, 2)), [(1, 1)]) == cyclic(2)
    assert oracle_quotient_type(ExplicitGroup((4, 4)), [(2, 2)]) == Z([4, 2])
    assert oracle_quotient_type(ExplicitGroup((6,)), []) == cyclic(6)


def test_oracle_extension_examples():
    assert oracle_extensions(elementary(2, 2), cyclic(2)) == {elementary(2, 3), Z([4, 2])}


def test_sub_quotient_duality():
    for G in all_groups(64):
        if G.order == 1:
            continue
        pairs = oracle_sub_quotient_pairs(explicit_group(G))
        assert Counter(s for s, _ in pairs) == Counter(q for _, q in pairs), G
        assert all(s.order * q.order == G.order for s, q in pairs)


def test_oracle_lr_examples():
    assert oracle_lr_product(Partition((1,)), Partition((1,))) == {Partition((2,)): 1, Partition((1, 1)): 1}
    assert oracle_lr_coefficient((3, 2, 1), (2, 1), (2, 1)) == 2
    mu, nu = Partition((2, 1)), Partition((2,))
    assert oracle_lr_product(mu, nu) == lr_product(mu, nu)
    assert lr_coefficient((3, 1), (2,), (1, 1)) == oracle_lr_coefficient((3, 1), (2,), (1, 1)) == 1


def test_refusal_above_bound(monkeypatch):
    monkeypatch.delenv(ORACLE_LIMIT_ENV, raising=False)
    assert oracle_limit() == 64
    with pytest.raises(OracleBoundError, match="64"):
        oracle_subgroup_types(ExplicitGroup((128,)))
    with pytest.raises(OracleBoundError):
        run_check("fulton-oracle", bound=100)


def test_env_override(monkeypatch):
    monkeypatch.setenv(ORACLE_LIMIT_ENV, "128")
    assert oracle_limit() == 128
    assert len(oracle_subgroup_types(ExplicitGroup((128,)))) == 8
    monkeypatch.setenv(ORACLE_LIMIT_ENV, "1024")
    with pytest.raises(OracleBoundError, match="512"):
        oracle_limit()
    monkeypatch.setenv(ORACLE_LIMIT_ENV, "lots")
    with pytest.raises(OracleBoundError):
        oracle_limit()


def test_status_matches_counterexamples():
    for r in run_suite(["subgroup-criterion", "lr-paper-expansions", "rank-sharpness"]):
        assert r.passed is (not r.counterexamples)
        assert set(r.to_dict()) == {"check", "params", "status", "cases", "counterexamples", "notes", "seconds"}


@pytest.mark.parametrize("name", sorted(n for n, spec in CHECKS.items() if spec[3]))
def test_monotone_restriction(name):
    for bound in (16, 32):
        report = run_check(name, bound=bound)
        assert report.passed and report.cases > 0


def test_reproducible():
    def strip(r):
        d = r.to_dict()
        del d["seconds"]
        return d

    for name in ("cyclic-splitting", "lr-paper-expansions", "subgroup-criterion"):
        assert strip(run_check(name)) == strip(run_check(name))


def test_unknown_check():
    with pytest.raises(KeyError):
        run_check("no-such-check")
    with pytest.raises(TypeError):
        run_check("lr-oracle", bound=3)


def test_fulton_oracle_default():
    report = run_check("fulton-oracle")
    assert report.passed
    assert report.cases >= 300


def test_prop_cr1_cr2_default():
    assert run_check("prop-cr1-cr2").passed


def test_paper_expansions_single_note():
    report = run_check("lr-paper-expansions", grid=6)
    assert report.passed
    assert len(report.notes) == 1
    assert "[k+2,2,1]" in report.notes[0]


def test_suite_order_and_bound():
    reports = run_suite(["table1-closure", "cyclic-splitting"], bound=64)
    assert [r.check for r in reports] == ["cyclic-splitting", "table1-closure"]
    assert all(r.params["bound"] == 64 for r in reports)
