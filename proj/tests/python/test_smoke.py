import math

import pytest

import hbinterp as hb


@pytest.fixture
def cap():
    return hb.Patch(hb.Manifold.sphere(1.0), [0.0, 0.0, 1.0], 0.8)


def gaussian_nodes(cap, n, q, seed=42):
    chart = hb.Chart.for_patch(cap)
    f = hb.builtin("gaussian", 2)
    deltas = hb.MultiIndexSet.complete(2, q).indices()
    nodes = []
    for p in hb.sample_patch(cap, n, "quasi-uniform", seed):
        v = chart.forward(p)
        nodes.append(hb.HermiteNode(p, {tuple(b): f.derivative(v, b) for b in deltas}))
    return nodes


def test_geodesic_distance():
    m = hb.Manifold.sphere(1.0)
    assert m.geodesic_distance([0, 0, 1], [1, 0, 0]) == pytest.approx(math.pi / 2)
    t = hb.Manifold.torus([1.0])
    assert t.geodesic_distance([0.1], [0.9]) == pytest.approx(0.2)
    with pytest.raises(hb.Error, match="invalid-point"):
        m.geodesic_distance([0, 0, 1.5], [1, 0, 0])


def test_chart_round_trip(cap):
    chart = hb.Chart.for_patch(cap)
    assert chart.forward([0.0, 0.0, 1.0]) == [0.0, 0.0]
    assert chart.forward([1.0, 0.0, 0.0]) == pytest.approx([1.0, 0.0])
    for p in hb.sample_patch(cap, 25, "uniform-random", 1):
        back = chart.inverse(chart.forward(p))
        assert back == pytest.approx(p, abs=1e-12)


def test_sampling_is_deterministic(cap):
    a = hb.sample_patch(cap, 50, "quasi-uniform", 7)
    b = hb.sample_patch(cap, 50, "quasi-uniform", 7)
    assert a == b
    assert all(cap.contains(p) for p in a)


def test_interpolant_conditions(cap):
    nodes = gaussian_nodes(cap, 40, 1)
    chart = hb.Chart.for_patch(cap)
    h = hb.Interpolant.build(cap, chart, nodes, hb.WeightConfig.defaults_for_order(1))
    assert h.order_k == 1
    assert h.completeness_q == 1

    for node in nodes:
        assert h.evaluate(node.point) == node.data[(0, 0)]

    report = h.verify_conditions(1e-5)
    assert report.max_residual(0) == 0.0
    assert report.max_residual(1) <= 1e-6 * max(1.0, report.value_scale(1))

    weights = h.weights_at(hb.sample_patch(cap, 1, "uniform-random", 9)[0])
    assert all(w >= 0 for w in weights)
    assert sum(weights) == pytest.approx(1.0, abs=1e-12)


def test_polynomial_reproduction(cap):
    chart = hb.Chart.for_patch(cap)
    f = hb.builtin("linear", 2)
    deltas = hb.MultiIndexSet.complete(2, 1).indices()
    nodes = []
    for p in hb.sample_patch(cap, 60, "quasi-uniform", 3):
        v = chart.forward(p)
        nodes.append(hb.HermiteNode(p, {tuple(b): f.derivative(v, b) for b in deltas}))
    h = hb.Interpolant.build(cap, chart, nodes, hb.WeightConfig.defaults_for_order(1))
    for u in hb.sample_patch(cap, 200, "uniform-random", 4):
        assert h.evaluate(u) == pytest.approx(f(chart.forward(u)), abs=1e-10)


def test_localized_uncovered(cap):
    nodes = gaussian_nodes(cap, 10, 0)
    chart = hb.Chart.for_patch(cap)
    weights = hb.WeightConfig(mu=1.0, delta=0.01, bump_exponent=1)
    h = hb.Interpolant.build(cap, chart, nodes, weights, mode="localized")
    with pytest.raises(hb.UncoveredPointError):
        h.evaluate_batch(hb.sample_patch(cap, 100, "uniform-random", 5))


def test_node_file_round_trip(cap, tmp_path):
    nodes = gaussian_nodes(cap, 12, 1)
    weights = hb.WeightConfig.defaults_for_order(1)
    weights.delta = 0.5
    original = hb.NodeSet(
        cap.manifold, cap, hb.Chart.for_patch(cap), weights, "localized", nodes
    )
    path = tmp_path / "nodes.json"
    hb.write_nodes(path, original)
    loaded = hb.read_nodes(path)
    assert loaded.mode == "localized"
    assert loaded.weights.delta == 0.5
    assert [n.point for n in loaded.nodes] == [n.point for n in nodes]
    assert [n.data for n in loaded.nodes] == [n.data for n in nodes]
    h = loaded.build_interpolant()
    assert h.node_count == 12


def test_fill_and_separation(cap):
    nodes = hb.sample_patch(cap, 80, "quasi-uniform", 11)
    ref = hb.sample_patch(cap, 4000, "quasi-uniform", 12)
    h = hb.fill_distance(cap.manifold, nodes, ref)
    s = hb.separation_distance(cap.manifold, nodes)
    assert 0 < s < h < cap.geodesic_radius


def test_convergence_study(cap):
    f = hb.builtin("gaussian", 2)
    result = hb.convergence_study(
        f, cap, q=0, levels=3, seed=5, n0=40, eval_grid_n=400, reference_factor=40
    )
    records = result["records"]
    assert [r["n"] for r in records] == [40, 160, 640]
    assert records[-1]["max_error"] < records[0]["max_error"]
    assert not result["fit"]["skipped"]
    assert result["fit"]["slope"] > 0.5
    assert 0.5 < result["chart_lipschitz"] < 1.0
