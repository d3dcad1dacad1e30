import itertools
import random

import pytest

from oracles import all_graphs, naive_tww, oracle_replay, random_graph
from twwtop.errors import BudgetExceeded, ValidationError
from twwtop.exact import canonical_form, exact_tww, find_twins, greedy_sequence, to_adj
from twwtop.trigraph import Trigraph, apply_sequence


def witness_width(g, result):
    steps = [(s.left, s.right, s.merged) for s in result.witness]
    width, left = oracle_replay(g.vertices, g.black, g.red, steps)
    assert left <= 1
    return width


def cycle(n):
    return Trigraph(range(n), [(i, (i + 1) % n) for i in range(n)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Trigraph(range(10), outer + spokes + inner)


def test_cliques_have_width_zero():
    for n in range(1, 8):
        g = Trigraph(range(n), itertools.combinations(range(n), 2))
        r = exact_tww(g)
        assert r.value == 0
        assert witness_width(g, r) == 0


def test_small_named_graphs():
    p4 = Trigraph(range(4), [(0, 1), (1, 2), (2, 3)])
    assert exact_tww(p4).value == 1
    assert exact_tww(cycle(5)).value == 2
    assert exact_tww(petersen()).value == 4


def test_initial_red_degree_is_a_lower_bound():
    star = Trigraph(range(5), red=[(0, i) for i in range(1, 5)])
    assert exact_tww(star).value == 4


def test_agrees_with_enumeration_on_all_small_graphs():
    for n in range(1, 6):
        for edges in all_graphs(n):
            g = Trigraph(range(n), edges)
            r = exact_tww(g)
            assert r.value == naive_tww(range(n), edges), sorted(edges)
            assert witness_width(g, r) == r.value


def test_agrees_with_enumeration_on_small_trigraphs():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(2, 5)
        black, red = set(), set()
        for e in itertools.combinations(range(n), 2):
            x = rng.random()
            if x < 0.3:
                black.add(e)
            elif x < 0.5:
                red.add(e)
        g = Trigraph(range(n), black, red)
        assert exact_tww(g).value == naive_tww(range(n), black, red)


def test_induced_subgraphs_never_have_larger_width():
    rng = random.Random(13)
    for _ in range(200):
        n = rng.randint(4, 9)
        g = Trigraph(range(n), random_graph(rng, n, rng.uniform(0.2, 0.7)))
        keep = rng.sample(range(n), rng.randint(2, n))
        h = Trigraph(keep, [e for e in g.black if e[0] in keep and e[1] in keep])
        rg, rh = exact_tww(g), exact_tww(h)
        assert rh.value <= rg.value
        assert witness_width(g, rg) == rg.value
        assert witness_width(h, rh) == rh.value


def test_canonical_form_is_relabelling_invariant():
    rng = random.Random(4)
    for _ in range(50):
        n = rng.randint(3, 8)
        black = random_graph(rng, n, 0.4)
        red = {e for e in random_graph(rng, n, 0.2) if e not in black}
        perm = list(range(n))
        rng.shuffle(perm)
        g = Trigraph(range(n), black, red)
        h = Trigraph(range(n), [(perm[a], perm[b]) for a, b in black],
                     [(perm[a], perm[b]) for a, b in red])
        assert canonical_form(to_adj(g)) == canonical_form(to_adj(h))


def test_canonical_form_separates_colours():
    black = Trigraph(range(3), [(0, 1)])
    red = Trigraph(range(3), red=[(0, 1)])
    assert canonical_form(to_adj(black)) != canonical_form(to_adj(red))


def test_find_twins():
    g = Trigraph(range(4), [(0, 2), (1, 2), (2, 3)])
    assert find_twins(to_adj(g)) in {(0, 1), (0, 3), (1, 3)}
    assert find_twins(to_adj(Trigraph(range(4), [(0, 1), (1, 2), (2, 3)]))) is None


def test_greedy_is_an_upper_bound():
    rng = random.Random(8)
    for _ in range(30):
        g = Trigraph(range(8), random_graph(rng, 8, 0.4))
        width, steps = greedy_sequence(g)
        assert width >= exact_tww(g).value
        assert oracle_replay(g.vertices, g.black, g.red, steps)[0] == width


def test_upper_hint():
    g = petersen()
    assert exact_tww(g, upper_hint=4).value == 4
    with pytest.raises(BudgetExceeded) as info:
        exact_tww(g, upper_hint=3)
    assert info.value.upper_bound >= 4
    assert apply_sequence(g, info.value.witness).width == info.value.upper_bound


def test_node_budget():
    g = Trigraph(range(11), random_graph(random.Random(3), 11, 0.5))
    assert exact_tww(g).nodes_explored > 3
    with pytest.raises(BudgetExceeded) as info:
        exact_tww(g, max_nodes=3)
    assert apply_sequence(g, info.value.witness).full


def test_vertex_cap():
    with pytest.raises(ValidationError):
        exact_tww(Trigraph(range(13)), max_vertices=12)


def test_twelve_vertex_graph_solves():
    g = Trigraph(range(12), random_graph(random.Random(1), 12, 0.35))
    r = exact_tww(g)
    assert witness_width(g, r) == r.value
