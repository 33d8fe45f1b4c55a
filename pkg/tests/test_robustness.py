# License: BSD 3 clause
"""
Tests for the exact robustness checkers and the edge-removal property of
robust graphs.
"""

import networkx as nx
from nose.tools import eq_, ok_, raises

from resopt.analysis import verify_rooted_after_removal
from resopt.dynamics import PreconditionError
from resopt.graph import (Graph,
                          SizeGuardError,
                          check_size_guard,
                          complete,
                          cycle,
                          empty,
                          fig1,
                          fig3,
                          grow_r_robust,
                          is_r_robust,
                          is_rs_robust,
                          max_robustness,
                          robustness_report,
                          star)

from tests.utils import brute_force_rs_robust


def _two_cliques():
    return Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)],
                 directed=False)


def _reachable(g, S, r):
    return {i for i in S if len(set(g.in_neighbors(i)) - S) >= r}


def _is_violating_pair(g, r, s, S1, S2):
    S1, S2 = set(S1), set(S2)
    X1, X2 = _reachable(g, S1, r), _reachable(g, S2, r)
    return (bool(S1) and bool(S2) and not S1 & S2 and X1 != S1 and X2 != S2 and
            len(X1) + len(X2) < s)


def test_fig1_robustness():
    g = fig1()
    ok_(is_r_robust(g, 2)[0])
    holds, witness = is_r_robust(g, 3)
    ok_(not holds)
    ok_(_is_violating_pair(g, 3, 1, *witness))
    eq_(is_rs_robust(g, 2, 2), (True, None))
    eq_(max_robustness(g), 2)


def test_complete_graph_robustness():
    eq_(max_robustness(complete(5)), 3)
    eq_(max_robustness(complete(4)), 2)
    ok_(not is_r_robust(complete(5), 4)[0])


def test_two_cliques_witness():
    g = _two_cliques()
    ok_(is_r_robust(g, 1)[0])
    eq_(max_robustness(g), 1)
    holds, witness = is_rs_robust(g, 2, 2)
    ok_(not holds)
    eq_(witness, (frozenset([0, 1]), frozenset([3, 4])))


def test_fig3_is_two_two_robust():
    ok_(is_rs_robust(fig3(3), 2, 2)[0])


def test_disconnected_graphs_are_not_robust():
    ok_(not is_r_robust(empty(3), 1)[0])
    eq_(max_robustness(empty(3)), 0)
    ok_(not is_r_robust(star(5), 2)[0])


def test_trivial_cases():
    eq_(is_rs_robust(empty(1), 3, 2), (True, None))
    eq_(max_robustness(empty(1)), 0)
    ok_(is_rs_robust(empty(4), 0, 1)[0])


def test_rs_robustness_is_monotone_in_s():
    g = cycle(6, chords=[(0, 3)])
    for r in range(1, 4):
        previous = True
        for s in range(1, 5):
            holds = is_rs_robust(g, r, s)[0]
            ok_(previous or not holds)
            previous = holds


@raises(ValueError)
def test_negative_r():
    is_rs_robust(fig1(), -1, 1)


@raises(ValueError)
def test_zero_s():
    is_rs_robust(fig1(), 1, 0)


@raises(SizeGuardError)
def test_size_guard():
    is_r_robust(empty(17), 1)


def test_size_guard_override():
    check_size_guard(fig1(), guard=5)
    check_size_guard(fig1(), force=True, guard=3)


@raises(SizeGuardError)
def test_size_guard_limit():
    check_size_guard(fig1(), guard=4)


def test_robustness_report():
    report = robustness_report(fig1(), [2, 3], [(2, 2)])
    eq_(report.r_max, 2)
    eq_(sorted(report.rs_table), [(2, 1), (2, 2), (3, 1)])
    ok_(report.rs_table[(2, 1)][0])
    ok_(not report.rs_table[(3, 1)][0])


def check_against_enumeration(g, r, s):
    holds, witness = is_rs_robust(g, r, s)
    eq_(holds, brute_force_rs_robust(g, r, s))
    if not holds:
        ok_(_is_violating_pair(g, r, s, *witness))


def test_checker_matches_enumeration():
    for seed in range(8):
        n = 4 + seed % 3
        undirected = Graph.from_networkx(nx.gnp_random_graph(n, 0.6, seed=seed))
        directed = Graph.from_networkx(nx.gnp_random_graph(n, 0.5, seed=seed,
                                                           directed=True))
        for g in (undirected, directed):
            for r in range(1, 3):
                for s in range(1, 3):
                    yield check_against_enumeration, g, r, s


def check_rooted_after_removal(n, r, seed):
    g = grow_r_robust(n, r, seed=seed)
    ok_(is_r_robust(g, r)[0])
    ok_(verify_rooted_after_removal(g, r, trials=200, seed=seed))


def test_rooted_after_removal():
    for k in range(20):
        r = 2 + k % 2
        n = 2 * r + 1 + k % (12 - 2 * r)
        yield check_rooted_after_removal, n, r, k


@raises(PreconditionError)
def test_removal_needs_robust_graph():
    verify_rooted_after_removal(star(5), 2)
