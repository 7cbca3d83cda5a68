import os
from fractions import Fraction

import pytest

import pypisg

DATA = os.environ.get("PISG_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def data(name):
    return os.path.join(DATA, name)


def test_load_and_round_trip():
    game = pypisg.load_game(data("example1.json"))
    assert game.num_states == 3
    assert game.controller(3) == "P2"
    assert game.num_actions(1, 1) == 2
    assert game.count_strategies(1) == 4
    assert pypisg.parse_game(game.to_json()) == game


def test_validation_error_carries_code():
    with pytest.raises(pypisg.PisgError) as info:
        pypisg.load_game(data("bad_row_sum.json"))
    assert info.value.code == "RowSumError"
    assert "state=1 action=1" in str(info.value)


def test_solve_example_1():
    report = pypisg.solve(pypisg.load_game(data("example1.json")))
    assert report["trace"]["termination"] == "Converged"
    assert abs(report["trace"]["history"][0]["objective_p1"] - 2.778) <= 1e-3
    assert report["f_star"] == [1, 1, 1]
    assert report["verification"]["passed"]
    # Stationary distribution (2/9, 1/3, 4/9) against rewards (5, 1, 3).
    exact = float(Fraction(2, 9) * 5 + Fraction(1, 3) * 1 + Fraction(4, 9) * 3)
    for v in report["value_exact"]:
        assert abs(v - exact) <= 1e-9


def test_enumerate_agrees_with_solve():
    game = pypisg.load_game(data("example2.json"))
    iterated = pypisg.solve(game)
    oracle = pypisg.enumerate(game)
    assert len(oracle["matrices"]) == 4
    for a, b in zip(iterated["value_exact"], oracle["value_exact"]):
        assert abs(a - b) <= 1e-6


def test_value_verify_simulate():
    game = pypisg.load_game(data("two_cycle.json"))
    assert pypisg.value(game, [1, 1], [1, 1]) == pytest.approx([0.5, 0.5])
    assert pypisg.verify(game, [1, 1], [1, 1])["passed"]
    mean = pypisg.simulate(game, [1, 1], [1, 1], start=1, horizon=1001, seed=3)
    assert abs(mean - 0.5) <= 1 / 1001
    with pytest.raises(pypisg.PisgError):
        pypisg.value(game, [2, 1], [1, 1])


def test_cesaro_limit_periodic():
    q = [[0.0, 1.0], [1.0, 0.0]]
    limit = pypisg.cesaro_limit(q)
    for row in limit:
        assert row == pytest.approx([0.5, 0.5])


def test_solve_lp():
    out = pypisg.solve_lp("max", [1, 2, 0], [[1, 1, 1], [1, 0, 0]], [4, 1])
    assert out["status"] == "Optimal"
    # x0 is pinned to 1, leaving x1 = 3.
    assert out["objective"] == pytest.approx(7.0)
    assert out["x"] == pytest.approx([1.0, 3.0, 0.0])
    assert pypisg.solve_lp("max", [1, 0], [[1, -1]], [1])["status"] == "Unbounded"


def test_random_game_is_seeded():
    assert pypisg.random_game(5) == pypisg.random_game(5)
