"""Exact maximum weight independent set solver."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p5hom.graph import Graph
from p5hom.mwis import WeightedGraph, solve_mwis

from brute import brute_mwis


def test_frozen_small_cases():
    # path ends beat the middle: take {1, 4}
    wg = WeightedGraph(Graph.path(4), {1: Fraction(2), 2: Fraction(1),
                                       3: Fraction(1), 4: Fraction(2)})
    chosen, weight = solve_mwis(wg)
    assert weight == 4
    assert chosen == {1, 4}

    wg = WeightedGraph(Graph.cycle(5), {v: Fraction(1) for v in range(1, 6)})
    _, weight = solve_mwis(wg)
    assert weight == 2

    wg = WeightedGraph(Graph(3, []), {1: Fraction(1), 2: Fraction(2), 3: Fraction(3)})
    chosen, weight = solve_mwis(wg)
    assert chosen == {1, 2, 3} and weight == 6

    wg = WeightedGraph(Graph(0, []), {})
    assert solve_mwis(wg) == (frozenset(), 0)


def test_zero_weights_never_hurt():
    wg = WeightedGraph(Graph.complete(3), {1: Fraction(0), 2: Fraction(0),
                                           3: Fraction(0)})
    chosen, weight = solve_mwis(wg)
    assert weight == 0


def test_weighted_graph_validation():
    g = Graph(2, [(1, 2)])
    with pytest.raises(ValueError):
        WeightedGraph(g, {1: Fraction(1)})
    with pytest.raises(ValueError):
        WeightedGraph(g, {1: Fraction(-1), 2: Fraction(1)})


def test_exact_fractions_survive():
    g = Graph(3, [(1, 2), (2, 3)])
    wg = WeightedGraph(g, {1: Fraction(1, 3), 2: Fraction(1, 2), 3: Fraction(1, 6)})
    chosen, weight = solve_mwis(wg)
    assert weight == Fraction(1, 2)  # {1, 3} also gives 1/2; either is fine
    assert isinstance(weight, Fraction)


def random_weighted(seed: int):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    g = Graph(n, [
        (u, v)
        for u, v in itertools.combinations(range(1, n + 1), 2)
        if rng.random() < 0.45
    ])
    wt = {v: Fraction(rng.randint(0, 12), rng.randint(1, 4)) for v in g.vertices}
    return g, wt


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_matches_brute_force(seed):
    g, wt = random_weighted(seed)
    chosen, weight = solve_mwis(WeightedGraph(g, wt))
    assert weight == brute_mwis(g.n, g.edges(), wt)
    # the witness is an independent set with the claimed weight
    assert all(not g.has_edge(u, v) for u, v in itertools.combinations(sorted(chosen), 2))
    assert sum((wt[v] for v in chosen), Fraction(0)) == weight


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_deterministic(seed):
    g, wt = random_weighted(seed)
    wg = WeightedGraph(g, wt)
    assert solve_mwis(wg) == solve_mwis(wg)
