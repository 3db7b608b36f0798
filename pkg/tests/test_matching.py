import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bchrome.matching import (
    BipartiteInstance,
    PerfectMatchingError,
    hall_violator,
    lemma2_hypotheses_hold,
    max_matching,
    perfect_matching_or_fail,
)


def brute_max_matching(p, q, edges):
    adj = [[j for (i, j) in sorted(edges) if i == u] for u in range(p)]

    def best(u, used):
        if u == p:
            return 0
        skip = best(u + 1, used)
        take = max((1 + best(u + 1, used | {v}) for v in adj[u] if v not in used), default=0)
        return max(skip, take)

    return best(0, frozenset())


def neighbourhood(inst, subset):
    return {j for i, j in inst.edges if i in subset}


def instance(p, q, edges, u_star=None, v_star=None):
    return BipartiteInstance.build(range(p), range(q), edges, u_star, v_star)


def is_valid_matching(inst, m):
    lefts = [i for i, _ in m.pairs]
    rights = [j for _, j in m.pairs]
    return (
        len(set(lefts)) == len(lefts)
        and len(set(rights)) == len(rights)
        and all(pair in inst.edges for pair in m.pairs)
    )


def test_complete_3x3():
    inst = instance(3, 3, [(i, j) for i in range(3) for j in range(3)])
    m = max_matching(inst)
    assert m.size == 3 and is_valid_matching(inst, m)


def test_two_left_one_right():
    assert max_matching(instance(2, 1, [(0, 0), (1, 0)])).size == 1


def test_instance_validation():
    with pytest.raises(ValueError):
        instance(2, 2, [(0, 2)])
    with pytest.raises(ValueError):
        instance(2, 2, [(0, 1)], u_star=3)


def test_max_matching_against_enumeration():
    rng = random.Random(99)
    for _ in range(200):
        p, q = rng.randint(0, 7), rng.randint(0, 7)
        dens = rng.random()
        edges = [(i, j) for i in range(p) for j in range(q) if rng.random() < dens]
        inst = instance(p, q, edges)
        m = max_matching(inst)
        assert is_valid_matching(inst, m)
        assert m.size == brute_max_matching(p, q, edges)


def test_max_matching_deterministic():
    inst = instance(4, 4, [(0, 1), (0, 2), (1, 1), (2, 3), (3, 0), (3, 2)])
    assert max_matching(inst) == max_matching(inst)


def test_lemma2_checker_examples():
    full = [(i, j) for i in range(4) for j in range(4) if (i + j) % 4 < 2]
    assert lemma2_hypotheses_hold(instance(4, 4, full))

    isolated = [(i, j) for i in range(1, 4) for j in range(4)]
    assert not lemma2_hypotheses_hold(instance(4, 4, isolated))

    # u* = left 0 of degree 1; every other vertex degree >= 2
    edges = [(0, 0), (1, 0), (1, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]
    inst = instance(4, 4, edges, u_star=0)
    assert inst.left_degrees()[0] == 1
    assert lemma2_hypotheses_hold(inst)
    assert not lemma2_hypotheses_hold(instance(4, 4, edges))


def test_lemma2_checker_requires_balance():
    assert not lemma2_hypotheses_hold(instance(2, 3, [(i, j) for i in range(2) for j in range(3)]))


def test_lemma2_exceptional_vertex_needs_an_edge():
    edges = [(i, j) for i in range(1, 3) for j in range(3)]
    assert not lemma2_hypotheses_hold(instance(3, 3, edges, u_star=0))


def test_hall_violation():
    inst = instance(2, 2, [(0, 0), (1, 0)])
    with pytest.raises(PerfectMatchingError) as info:
        perfect_matching_or_fail(inst)
    assert info.value.witness == frozenset({0, 1})
    assert info.value.matching.size == 1


def test_identity_instance():
    inst = instance(5, 5, [(i, i) for i in range(5)])
    assert perfect_matching_or_fail(inst).pairs == tuple((i, i) for i in range(5))


def test_unbalanced_perfect_matching_is_an_error():
    with pytest.raises(ValueError):
        perfect_matching_or_fail(instance(2, 3, [(0, 0)]))


def random_lemma2_instance(rng):
    """Instance with every non-exceptional vertex at degree >= ceil(p/2)."""
    p = rng.randint(2, 12)
    u_star = rng.randrange(p) if rng.random() < 0.5 else None
    v_star = rng.randrange(p) if rng.random() < 0.5 else None
    half = (p + 1) // 2
    edges = set()
    for i in range(p):
        k = rng.randint(1, 2) if i == u_star else rng.randint(half, p)
        edges.update((i, j) for j in rng.sample(range(p), k))
    for j in range(p):
        have = sum(1 for i in range(p) if (i, j) in edges)
        target = rng.randint(1, 2) if j == v_star else half
        missing = [i for i in range(p) if (i, j) not in edges and i != u_star]
        rng.shuffle(missing)
        for i in missing[: max(0, target - have)]:
            edges.add((i, j))
    return instance(p, p, edges, u_star, v_star)


def test_lemma2_property_random_1000():
    rng = random.Random(2)
    accepted = with_star = 0
    while accepted < 1000:
        inst = random_lemma2_instance(rng)
        if not lemma2_hypotheses_hold(inst):
            continue
        accepted += 1
        with_star += inst.u_star is not None or inst.v_star is not None
        m = perfect_matching_or_fail(inst)
        assert m.size == len(inst.left) and is_valid_matching(inst, m)
    assert with_star > 300


@st.composite
def bipartite(draw, max_p=7):
    p = draw(st.integers(1, max_p))
    q = draw(st.integers(1, max_p))
    mask = draw(st.lists(st.booleans(), min_size=p * q, max_size=p * q))
    edges = [(i, j) for i in range(p) for j in range(q) if mask[i * q + j]]
    u = draw(st.one_of(st.none(), st.integers(0, p - 1)))
    v = draw(st.one_of(st.none(), st.integers(0, q - 1)))
    return instance(p, q, edges, u, v)


@settings(max_examples=300, deadline=None)
@given(bipartite())
def test_lemma2_property_hypothesis(inst):
    if lemma2_hypotheses_hold(inst):
        assert perfect_matching_or_fail(inst).size == len(inst.left)


@settings(max_examples=300, deadline=None)
@given(bipartite())
def test_hall_witness_is_sound(inst):
    if len(inst.left) != len(inst.right):
        return
    try:
        perfect_matching_or_fail(inst)
    except PerfectMatchingError as exc:
        s = exc.witness
        assert len(neighbourhood(inst, s)) < len(s)
        assert s == hall_violator(inst, exc.matching)
