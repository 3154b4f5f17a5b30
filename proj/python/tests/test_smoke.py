import pytest

import degseq


def triangle():
    return degseq.Graph(3, [(1, 2), (2, 3), (1, 3)])


def test_triangle_decreasing_costs():
    g = triangle()
    model = degseq.CostModel([[0, -1, -2]] * 3)
    report = degseq.solve(g, model)
    assert report.optimum == -6
    assert report.edges == [(1, 2), (1, 3), (2, 3)]
    assert report.degrees == [2, 2, 2]
    assert degseq.evaluate(model, g, report.edges) == -6


def test_matches_brute_force_on_generated_graphs():
    for seed in range(5):
        g = degseq.generate("gnp", 7, seed=seed, p=0.5)
        model = degseq.from_b_matching([1] * 7, 7)
        value, witness = degseq.brute_force_solve(g, model)
        assert degseq.solve(g, model).optimum == value
        assert degseq.evaluate(model, g, witness) == value


def test_odd_cycle_has_no_perfect_matching():
    c5 = degseq.generate("cycle", 5)
    assert degseq.solve(c5, degseq.from_b_matching([1] * 5, 5)).optimum == 1
    c6 = degseq.generate("cycle", 6)
    assert degseq.solve(c6, degseq.from_b_matching([1] * 6, 6)).optimum == 0


def test_cubic_gadget_on_k4():
    k4 = degseq.Graph(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)])
    assert degseq.cubic_subgraph_exists(k4)
    assert degseq.solve(k4, degseq.cubic_gadget(1, 4)).optimum == 0


def test_decomposition_round_trip():
    g = degseq.generate("ktree", 12, k=2, seed=3)
    td = degseq.min_fill_decompose(g)
    assert td.width == 2
    assert degseq.validate_td(g, td) == []
    nice = degseq.to_nice(td, g)
    assert degseq.validate_nice(g, nice, 2) == []
    n, parsed = degseq.parse_td_file(degseq.emit_td_file(td, g.n))
    assert n == g.n and parsed.bags == td.bags


def test_width_limit_and_bad_input():
    k5 = degseq.Graph(5, [(a, b) for a in range(1, 6) for b in range(a + 1, 6)])
    with pytest.raises(ValueError):
        degseq.solve(k5, degseq.from_b_matching([0] * 5, 5), max_width=2)
    with pytest.raises(ValueError):
        degseq.Graph(2, [(1, 1)])
