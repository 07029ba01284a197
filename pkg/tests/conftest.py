"""Shared graph fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's own traversal code: paths
are built left to right by scanning the raw edge list, so that agreement with
enumerate_paths / adjacency powers is a real cross-check.
"""

from __future__ import annotations

import random

import pytest

from suspquiver import Graph


def make_single_loop() -> Graph:
    return Graph(["v"], [("e", "v", "v")])


def make_two_loop() -> Graph:
    return Graph(["v"], [("e", "v", "v"), ("f", "v", "v")])


def make_three_cycle() -> Graph:
    return Graph(
        ["u", "v", "w"],
        [("a", "u", "v"), ("b", "v", "w"), ("c", "w", "u")],
    )


def make_cycle_plus_loop() -> Graph:
    return Graph(
        ["u", "v"],
        [("p", "u", "v"), ("q", "v", "u"), ("l", "u", "u")],
    )


def make_single_edge() -> Graph:
    """u -> v; has a sink and a source."""
    return Graph(["u", "v"], [("e", "u", "v")])


def random_no_sink_source_graph(seed: int, max_vertices: int = 5, max_edges: int = 6) -> Graph:
    """A seeded random graph with no sinks and no sources.

    A Hamiltonian cycle guarantees every vertex both emits and receives;
    random extra edges are layered on top.
    """
    rng = random.Random(seed)
    nv = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(nv)]
    edges = [(f"c{i}", vs[i], vs[(i + 1) % nv]) for i in range(nv)]
    for j in range(rng.randint(0, max(0, max_edges - nv))):
        edges.append((f"x{j}", rng.choice(vs), rng.choice(vs)))
    return Graph(vs, edges)


def brute_paths(g: Graph, n: int, src=None, rng=None) -> list[tuple[str, ...]]:
    """All length-n edge-id sequences composable via s(mu_i) = r(mu_{i+1}),
    optionally filtered by s(mu) = src and r(mu) = rng, sorted."""
    if n == 0:
        return [
            (v,)
            for v in sorted(g.vertices)
            if src in (None, v) and rng in (None, v)
        ]
    seqs: list[tuple] = [()]
    for _ in range(n):
        seqs = [
            s + (e,)
            for s in seqs
            for e in g.edges
            if not s or s[-1].src == e.dst
        ]
    out = [
        tuple(e.id for e in s)
        for s in seqs
        if (rng is None or s[0].dst == rng) and (src is None or s[-1].src == src)
    ]
    out.sort()
    return out


def normal_form_closure(g: Graph, m: int, denominator: int = 6, max_len: int = 4):
    """Union-find closure of the generating relations on (mu, t) pairs.

    Pairs are (mu, t) with |mu| <= max_len, t = j/denominator in [0,1), and
    t + m <= |mu|.  Generating relations: dropping an unused trailing edge,
    and (for t = 0) trimming to the leading m-window; both leave the class
    unchanged.  Returns a dict mapping each pair to its class representative.
    """
    from fractions import Fraction

    from suspquiver import enumerate_paths

    pairs = []
    for length in range(max_len + 1):
        for mu in enumerate_paths(g, length):
            for j in range(denominator):
                t = Fraction(j, denominator)
                if t + m <= length:
                    pairs.append((mu, t))
    parent = {i: i for i in range(len(pairs))}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    index = {(mu.edge_ids or ("@", mu.anchor), t): i for i, (mu, t) in enumerate(pairs)}

    def key(mu, t):
        return (mu.edge_ids or ("@", mu.anchor), t)

    for i, (mu, t) in enumerate(pairs):
        k = int(t)
        # drop an unused trailing edge
        if len(mu) > 0 and t + m <= len(mu) - 1:
            union(i, index[key(mu.window(0, len(mu) - 1), t)])
        # drop an unused leading edge (only reachable when t >= 1)
        if k >= 1:
            union(i, index[key(mu.window(1, len(mu)), t - 1)])
    return {pairs[i]: find(i) for i in range(len(pairs))}


@pytest.fixture
def single_loop() -> Graph:
    return make_single_loop()


@pytest.fixture
def two_loop() -> Graph:
    return make_two_loop()


@pytest.fixture
def three_cycle() -> Graph:
    return make_three_cycle()


@pytest.fixture
def cycle_plus_loop() -> Graph:
    return make_cycle_plus_loop()


@pytest.fixture
def single_edge() -> Graph:
    return make_single_edge()
