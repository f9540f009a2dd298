"""Tables, the four-correlator functional, marginals and the catalog."""

import json

import numpy as np
import pytest

import signalbox as sb
from conftest import dirichlet_mixture, random_table, strategy_table


def test_rejects_wrong_shape():
    with pytest.raises(sb.DomainError):
        sb.make_correlation(np.zeros((2, 2, 2)))
    with pytest.raises(sb.DomainError):
        sb.make_correlation([[0.5, 0.5], [0.5, 0.5]])


def test_rejects_negative_entries():
    p = np.full((2, 2, 2, 2), 0.25)
    p[0, 0, 0, 0] = -1e-3
    p[0, 0, 1, 1] = 0.25 + 1e-3
    with pytest.raises(sb.NegativeProbabilityError):
        sb.make_correlation(p)


def test_clamps_rounding_noise():
    p = np.full((2, 2, 2, 2), 0.25)
    p[0, 0] = [[-1e-12, 0.25], [0.25, 0.5 + 1e-12]]
    corr = sb.make_correlation(p)
    assert corr.p[0, 0, 0, 0] == 0.0
    assert corr.p.min() >= 0.0


def test_rejects_bad_normalization():
    p = np.full((2, 2, 2, 2), 0.25)
    p[1, 1] *= 1.01
    with pytest.raises(sb.NormalizationError):
        sb.make_correlation(p)


def test_table_is_read_only():
    corr = sb.pr_box()
    with pytest.raises(ValueError):
        corr.p[0, 0, 0, 0] = 0.9


def test_non_numeric_input():
    with pytest.raises(sb.DomainError):
        sb.make_correlation([[["a", "b"]]])


def test_pr_box_correlators():
    pr = sb.pr_box()
    assert pr.expectation(0, 0) == pytest.approx(1.0)
    assert pr.expectation(0, 1) == pytest.approx(1.0)
    assert pr.expectation(1, 0) == pytest.approx(-1.0)
    assert pr.expectation(1, 1) == pytest.approx(1.0)
    assert sb.signed_functional(pr) == pytest.approx(4.0)
    assert sb.functional_value(pr) == pytest.approx(4.0)
    assert sb.disturbance_cost(pr) == pytest.approx(1.0)


def test_expectation_rejects_bad_setting():
    with pytest.raises(sb.DomainError):
        sb.pr_box().expectation(2, 0)


def test_disturbance_cost_clips_at_zero():
    flat = sb.make_correlation(np.full((2, 2, 2, 2), 0.25))
    assert sb.functional_value(flat) == pytest.approx(0.0)
    assert sb.disturbance_cost(flat) == 0.0


def test_mix_weight_validation():
    tables = [sb.pr_box(), strategy_table("local_0_0")]
    with pytest.raises(sb.WeightError):
        sb.mix([0.6, 0.6], tables)
    with pytest.raises(sb.WeightError):
        sb.mix([1.2, -0.2], tables)
    with pytest.raises(sb.WeightError):
        sb.mix([1.0], tables)
    with pytest.raises(sb.WeightError):
        sb.mix([], [])


def test_mix_is_convex_combination():
    a = sb.pr_box()
    b = strategy_table("local_0_0")
    out = sb.mix([0.25, 0.75], [a, b])
    assert np.allclose(out.p, 0.25 * a.p + 0.75 * b.p)


def test_marginal_of_signaling_strategy():
    # Bob plays a AND (NOT b): at b=0 his outcome tracks alice's setting,
    # at b=1 it is stuck at label 0.
    table = strategy_table("signal_0_anb")
    assert sb.marginal(table, "bob", 0, 0)[0] == pytest.approx(1.0)
    assert sb.marginal(table, "bob", 0, 1)[0] == pytest.approx(0.0)
    assert sb.marginal(table, "bob", 1, 0)[0] == pytest.approx(1.0)
    assert sb.marginal(table, "bob", 1, 1)[0] == pytest.approx(1.0)
    for own in (0, 1):
        for other in (0, 1):
            assert sb.marginal(table, "alice", own, other)[0] == pytest.approx(1.0)


def test_marginal_rejects_bad_side():
    with pytest.raises(sb.DomainError):
        sb.marginal(sb.pr_box(), "carol", 0, 0)


def test_marginals_sum_to_one(rng):
    for _ in range(20):
        table = random_table(rng)
        for side in ("alice", "bob"):
            for own in (0, 1):
                for other in (0, 1):
                    total = float(sb.marginal(table, side, own, other).sum())
                    assert total == pytest.approx(1.0, abs=1e-12)


def test_signal_deltas_of_one_bit_strategy():
    deltas = sb.signaling_deltas(strategy_table("signal_0_anb"))
    assert deltas.to_bob_at_b0 == pytest.approx(1.0)
    assert deltas.to_bob_at_b1 == pytest.approx(0.0)
    assert deltas.to_alice_at_a0 == pytest.approx(0.0)
    assert deltas.to_alice_at_a1 == pytest.approx(0.0)
    assert deltas.max == pytest.approx(1.0)
    assert np.allclose(deltas.as_array(), [1.0, 0.0, 0.0, 0.0])


def test_pr_box_is_nonsignaling():
    assert sb.signaling_deltas(sb.pr_box()).max == pytest.approx(0.0, abs=1e-15)


def test_catalog_size_and_kinds():
    ids = sb.strategy_ids()
    assert len(ids) == 32
    assert len(set(ids)) == 32
    kinds = [sb.catalog(i).kind for i in ids]
    assert kinds.count(sb.StrategyKind.LOCAL) == 16
    assert kinds.count(sb.StrategyKind.ONE_BIT_VIOLATING) == 8
    assert kinds.count(sb.StrategyKind.ONE_BIT_NONVIOLATING) == 8
    assert ids == sb.FULL_BASIS


def test_catalog_rejects_unknown_id():
    with pytest.raises(sb.UnknownStrategyError):
        sb.catalog("signal_q_q")


def test_strategy_tables_are_deterministic():
    for ident in sb.strategy_ids():
        p = strategy_table(ident).p
        # one unit cell per setting pair
        assert np.array_equal(np.sort(p.reshape(4, 4), axis=1)[:, :3], np.zeros((4, 3)))
        assert np.allclose(p.reshape(4, 4).max(axis=1), 1.0)


def test_local_strategies_do_not_signal():
    for ident in sb.LOCAL_IDS:
        assert sb.signaling_deltas(strategy_table(ident)).max == 0.0


def test_functional_signs_by_kind():
    for ident in sb.PLUS_LOCAL_IDS:
        assert sb.signed_functional(strategy_table(ident)) == pytest.approx(2.0)
    minus = set(sb.LOCAL_IDS) - set(sb.PLUS_LOCAL_IDS)
    for ident in minus:
        assert sb.signed_functional(strategy_table(ident)) == pytest.approx(-2.0)
    for ident in sb.VIOLATING_IDS:
        assert sb.signed_functional(strategy_table(ident)) == pytest.approx(4.0)
    for ident in sb.NONVIOLATING_IDS:
        assert sb.functional_value(strategy_table(ident)) <= 2.0 + 1e-12


def test_violating_pairs_average_to_pr_box():
    pr = sb.pr_box()
    for first, second in sb.VIOLATING_PAIRS:
        avg = sb.mix([0.5, 0.5], [strategy_table(first), strategy_table(second)])
        assert np.array_equal(avg.p, pr.p)


def test_local_mixtures_respect_the_classical_ceiling(rng):
    """Random local mixtures stay at functional <= 2 with zero shifts."""
    for _ in range(60):
        table, _ = dirichlet_mixture(rng, sb.LOCAL_IDS, concentration=0.3)
        assert sb.functional_value(table) <= 2.0 + 1e-12
        assert sb.signaling_deltas(table).max <= 1e-12


def test_json_round_trip(tmp_path):
    table = sb.pr_box()
    payload = sb.to_json_dict(table)
    back = sb.from_json_dict(payload)
    assert np.array_equal(back.p, table.p)

    path = tmp_path / "table.json"
    sb.save_correlation(table, path)
    loaded = sb.load_correlation(path)
    assert np.array_equal(loaded.p, table.p)

    # deterministic serialization: saving again reproduces the bytes
    text = path.read_text()
    sb.save_correlation(loaded, path)
    assert path.read_text() == text
    assert text.endswith("\n")
    assert json.loads(text)["p"][0][0][0][0] == pytest.approx(0.5)


def test_from_json_dict_rejects_bad_payloads():
    with pytest.raises(sb.DomainError):
        sb.from_json_dict(["not", "a", "dict"])
    with pytest.raises(sb.DomainError):
        sb.from_json_dict({"q": []})
    with pytest.raises(sb.DomainError):
        sb.from_json_dict({"p": [[0.5]]})


def test_load_rejects_invalid_json(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    with pytest.raises(sb.DomainError):
        sb.load_correlation(path)


def test_error_hierarchy():
    assert issubclass(sb.NormalizationError, sb.SignalBoxError)
    assert issubclass(sb.NormalizationError, ValueError)
    assert issubclass(sb.UnknownStrategyError, KeyError)
    assert issubclass(sb.NoCrossoverError, ArithmeticError)
    assert issubclass(sb.InfeasibleError, sb.SignalBoxError)
