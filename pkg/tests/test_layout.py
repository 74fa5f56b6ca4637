"""Interaction-graph placement: fixture geometry, annealing, move batching."""

import numpy as np
import pytest

from goldens import (FIXTURE_ANNEAL_MAX_DISTANCE, FIXTURE_IDENTITY_MAX_DISTANCE,
                     SHUTTLE_MS_AT_DISTANCE_10)
from qarchsim.layout import (InteractionGraph, MoveBatch, Placement,
                             anneal_placement, fixture_graph,
                             group_translationally_symmetric,
                             identity_placement, shuttle_time)


def test_fixture_graph_shape():
    g = fixture_graph()
    assert g.num_nodes == 576
    assert len(g.edges) == 1332
    # Edges are canonical (a < b) and unique.
    assert all(a < b for a, b in g.edges)
    assert len(set(g.edges)) == len(g.edges)


def test_graph_validation_and_io(tmp_path):
    with pytest.raises(ValueError):
        InteractionGraph(3, ((0, 3),))
    with pytest.raises(ValueError):
        InteractionGraph(3, ((1, 1),))
    g = InteractionGraph.from_edges(4, [(2, 0), (0, 2), (1, 3)])
    assert g.edges == ((0, 2), (1, 3))
    path = tmp_path / "g.json"
    g.save(path)
    assert InteractionGraph.load(path) == g


def test_identity_placement_distance():
    g = fixture_graph()
    p = identity_placement(g, 24, 24)
    assert p.max_distance(g) == FIXTURE_IDENTITY_MAX_DISTANCE


def test_identity_placement_needs_room():
    g = fixture_graph()
    with pytest.raises(ValueError):
        identity_placement(g, 10, 10)


def test_placement_io(tmp_path):
    g = InteractionGraph.from_edges(4, [(0, 1), (2, 3)])
    p = identity_placement(g, 2, 2)
    path = tmp_path / "p.json"
    p.save(path)
    q = Placement.load(path)
    assert q.rows == 2 and q.cols == 2
    assert np.array_equal(q.positions, p.positions)


def test_anneal_improves_fixture():
    g = fixture_graph()
    p = anneal_placement(g, 24, 24, seed=0, sweeps=300)
    # Positions stay a permutation of the grid cells.
    cells = {tuple(row) for row in p.positions}
    assert len(cells) == g.num_nodes
    assert p.max_distance(g) <= FIXTURE_ANNEAL_MAX_DISTANCE
    assert p.max_distance(g) <= FIXTURE_IDENTITY_MAX_DISTANCE


def test_anneal_deterministic_per_seed():
    g = fixture_graph()
    a = anneal_placement(g, 24, 24, seed=3, sweeps=40)
    b = anneal_placement(g, 24, 24, seed=3, sweeps=40)
    assert np.array_equal(a.positions, b.positions)


def test_anneal_cold_start_recovers():
    # From a random scatter, even a short anneal should beat the scatter.
    g = fixture_graph()
    cold = anneal_placement(g, 24, 24, seed=1, sweeps=0, warm_start=False)
    annealed = anneal_placement(g, 24, 24, seed=1, sweeps=60, warm_start=False)
    assert annealed.max_distance(g) < cold.max_distance(g)


def test_shuttle_time_exact():
    assert shuttle_time(10) == SHUTTLE_MS_AT_DISTANCE_10
    assert shuttle_time(0) == 0.0
    assert shuttle_time(5) == 0.7
    with pytest.raises(ValueError):
        shuttle_time(-1)


def test_move_batching_by_displacement():
    moves = [((0, 0), (1, 0)), ((2, 3), (3, 3)), ((5, 5), (5, 6))]
    batches = group_translationally_symmetric(moves)
    assert [b.displacement for b in batches] == [(1, 0), (0, 1)]
    assert len(batches[0].moves) == 2
    assert len(batches[1].moves) == 1


def test_move_batching_chains_fly_together():
    moves = [((0, 0), (0, 1)), ((0, 1), (0, 2)), ((0, 2), (0, 3))]
    batches = group_translationally_symmetric(moves)
    assert len(batches) == 1
    assert len(batches[0].moves) == 3


def test_move_batching_defers_duplicate_destinations():
    moves = [((0, 0), (1, 0)), ((0, 0), (1, 0))]
    batches = group_translationally_symmetric(moves)
    assert len(batches) == 2
    assert all(len(b.moves) == 1 for b in batches)


def test_move_batching_tie_order():
    moves = [((4, 4), (5, 4)), ((1, 1), (1, 2))]
    batches = group_translationally_symmetric(moves)
    assert [b.displacement for b in batches] == [(0, 1), (1, 0)]
    assert all(isinstance(b, MoveBatch) for b in batches)
