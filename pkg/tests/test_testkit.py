import pytest

from strandshift.diagrams import (
    compose,
    equal,
    from_forest_pair,
    identity_diagram,
    invert,
    reduce,
    validate_strand_diagram,
)
from strandshift.forest import compose_pairs, expand_regular, identity_pair, invert_pair, validate_forest_pair
from strandshift.graphs import validate_graph
from strandshift.testkit import (
    GeneratorConfig,
    brute_conjugate,
    enumerate_forests,
    random_element,
    random_graph,
    semantic_equal,
)


def test_semantic_equal_expansion_invariant(fig1, base_bg, sigma):
    expanded = expand_regular(fig1, sigma, 2)
    assert semantic_equal(fig1, sigma, expanded, depth=4)


def test_semantic_equal_detects_sigma(fig1, base_bg, sigma):
    assert not semantic_equal(fig1, sigma, identity_pair(fig1, base_bg), depth=3)


def test_semantic_equal_inverse_product(fig1, base_bg, sigma):
    prod = compose_pairs(fig1, sigma, invert_pair(sigma))
    assert semantic_equal(fig1, prod, identity_pair(fig1, base_bg), depth=5)


def test_semantic_equal_depth_precondition(fig1, base_bg, sigma):
    with pytest.raises(ValueError):
        semantic_equal(fig1, sigma, identity_pair(fig1, base_bg), depth=0)


def test_random_element_deterministic_and_valid(fig1, base_bg):
    a = random_element(fig1, base_bg, GeneratorConfig(seed=42))
    b = random_element(fig1, base_bg, GeneratorConfig(seed=42))
    assert a == b
    for seed in range(50):
        fp = random_element(fig1, base_bg, GeneratorConfig(seed=seed, growth_steps=3))
        validate_forest_pair(fig1, fp)
        d = reduce(from_forest_pair(fig1, fp))
        assert validate_strand_diagram(d, fig1) == []


def test_enumerate_forests_counts(fig1, base_bg):
    forests = enumerate_forests(fig1, base_bg, 1)
    # trivial forest plus one expansion at either root
    assert len(forests) == 3


def test_brute_conjugate_finds_identity(fig1, base_bg, sigma):
    d = from_forest_pair(fig1, sigma)
    h = brute_conjugate(fig1, d, d, size_bound=0)
    assert h is not None
    assert equal(compose(compose(h, d), invert(h)), d)


def test_brute_conjugate_finds_planted(fig1, base_bg, sigma):
    d = from_forest_pair(fig1, sigma)
    planted = from_forest_pair(
        fig1, random_element(fig1, base_bg, GeneratorConfig(seed=5, growth_steps=1))
    )
    g = reduce(compose(compose(planted, d), invert(planted)))
    h = brute_conjugate(fig1, d, g, size_bound=1)
    assert h is not None
    assert equal(compose(compose(h, g), invert(h)), d)


def test_brute_conjugate_bounded_no(fig1, base_bg, sigma):
    d = from_forest_pair(fig1, sigma)
    assert brute_conjugate(fig1, identity_diagram(base_bg), d, size_bound=1) is None


def test_brute_conjugate_agrees_with_pipeline(fig1, base_bg):
    from strandshift.conjugacy import is_conjugate

    for seed in range(6):
        f = from_forest_pair(
            fig1, random_element(fig1, base_bg, GeneratorConfig(seed=seed, growth_steps=1))
        )
        g = from_forest_pair(
            fig1, random_element(fig1, base_bg, GeneratorConfig(seed=seed + 60, growth_steps=1))
        )
        h = brute_conjugate(fig1, f, g, size_bound=1)
        if h is not None:
            assert is_conjugate(f, g, fig1).conjugate


def test_random_graph_normalized(fig1):
    for seed in range(30):
        g, base = random_graph(GeneratorConfig(seed=seed, max_vertices=5))
        assert validate_graph(g) == []
        assert base and all(y in g.vertices for y in base)


def test_semantic_grounding_on_random_graphs():
    from strandshift.diagrams import equal as diagram_equal

    for gseed in range(5):
        g, base = random_graph(GeneratorConfig(seed=gseed, max_vertices=4))
        for seed in range(40):
            f = random_element(g, base, GeneratorConfig(seed=seed, growth_steps=2))
            other = random_element(g, base, GeneratorConfig(seed=seed + 800, growth_steps=2))
            depth = max(len(w.edges) for w in f.domain_leaves + other.domain_leaves)
            assert diagram_equal(
                from_forest_pair(g, f), from_forest_pair(g, other)
            ) == semantic_equal(g, f, other, depth=depth)


def test_semantic_equal_respects_isolated_points(fig1, base_bg):
    # over an isolated color, deeper range words pin the same point: the
    # element sending the isolated cylinder one loop-step deeper is trivial
    from strandshift.forest import ForestPair
    from strandshift.graphs import PathWord
    from strandshift.diagrams import identity_diagram

    fp = ForestPair(
        (PathWord(0, ("1",)), PathWord(0, ("2",)), PathWord(1)),
        (PathWord(0, ("1",)), PathWord(0, ("2", "0")), PathWord(1)),
        base_bg,
    )
    assert semantic_equal(fig1, fp, identity_pair(fig1, base_bg), depth=3)
    assert equal(from_forest_pair(fig1, fp), identity_diagram(base_bg))
    # and a genuinely deeper map on a branching color is still caught
    swap = ForestPair(
        (PathWord(0, ("1",)), PathWord(0, ("2",)), PathWord(1)),
        (PathWord(1), PathWord(0, ("2",)), PathWord(0, ("1",))),
        base_bg,
    )
    assert not semantic_equal(fig1, swap, identity_pair(fig1, base_bg), depth=3)
