import random

import pytest

from strandshift.forest import (
    ForestPair,
    apply_to_word,
    compose_pairs,
    expand_degenerate,
    expand_regular,
    identity_pair,
    invert_pair,
    validate_forest_pair,
)
from strandshift.graphs import PathWord, enumerate_words
from strandshift.testkit import GeneratorConfig, random_element


def test_sigma_validates(fig1, sigma):
    validate_forest_pair(fig1, sigma)


def test_color_violation_names_leaf(fig1, base_bg):
    bad = ForestPair(
        (PathWord(0, ("1",)), PathWord(0, ("2",)), PathWord(1)),
        (PathWord(0, ("2",)), PathWord(0, ("1",)), PathWord(1)),  # G leaf paired with R leaf
        base_bg,
    )
    with pytest.raises(ValueError, match="leaf 0"):
        validate_forest_pair(fig1, bad)


def test_incomplete_forest_rejected(fig1, base_bg):
    bad = ForestPair(
        (PathWord(0, ("1",)), PathWord(1)),  # missing sibling B2
        (PathWord(0, ("1",)), PathWord(1)),
        base_bg,
    )
    with pytest.raises(ValueError, match="incomplete"):
        validate_forest_pair(fig1, bad)


def test_apply_to_word_examples(fig1, sigma, base_bg):
    assert apply_to_word(fig1, sigma, PathWord(0, ("1", "3"))) == PathWord(1, ("3", "3"))
    assert apply_to_word(fig1, sigma, PathWord(0, ("2", "0"))) == PathWord(1, ("4", "2", "0"))
    ident = identity_pair(fig1, base_bg)
    for w in enumerate_words(fig1, base_bg, 3):
        assert apply_to_word(fig1, ident, w) == w


def test_apply_to_word_too_short(fig1, sigma):
    with pytest.raises(KeyError):
        apply_to_word(fig1, sigma, PathWord(0))


def test_regular_expansion_of_identity(fig1, base_bg):
    fp = expand_regular(fig1, identity_pair(fig1, base_bg), 0)
    assert fp.domain_leaves == (PathWord(0, ("1",)), PathWord(0, ("2",)), PathWord(1))
    assert fp.range_leaves == fp.domain_leaves


def test_regular_expansions_commute(fig1, base_bg, sigma):
    # expanding two distinct leaves in either order gives the same pair
    a = expand_regular(fig1, expand_regular(fig1, sigma, 0), 3)
    b = expand_regular(fig1, expand_regular(fig1, sigma, 2), 0)
    # order the leaf pairs to compare as sets
    assert sorted(zip(a.domain_leaves, a.range_leaves)) == sorted(
        zip(b.domain_leaves, b.range_leaves)
    )


def test_degenerate_expansion_shortens_isolated_leaf(fig1, base_bg):
    # B2 is R-colored with a single self-loop, so leaf B2.0 can shorten to B2
    fp = ForestPair(
        (PathWord(0, ("1",)), PathWord(0, ("2", "0")), PathWord(1)),
        (PathWord(0, ("1",)), PathWord(0, ("2", "0")), PathWord(1)),
        base_bg,
    )
    validate_forest_pair(fig1, fp)
    out = expand_degenerate(fig1, fp, "domain", 1)
    assert out.domain_leaves[1] == PathWord(0, ("2",))
    assert out.range_leaves[1] == PathWord(0, ("2", "0"))


def test_degenerate_expansion_requires_isolated(fig1, base_bg, sigma):
    with pytest.raises(ValueError):
        expand_degenerate(fig1, sigma, "domain", 0)  # B1's parent B is not isolated


def test_expansion_preserves_semantics(fig1, base_bg):
    rng = random.Random(3)
    for seed in range(30):
        fp = random_element(fig1, base_bg, GeneratorConfig(seed=seed, growth_steps=2))
        index = rng.randrange(len(fp.domain_leaves))
        fp2 = expand_regular(fig1, fp, index)
        depth = max(len(w.edges) for w in fp2.domain_leaves)
        for w in enumerate_words(fig1, base_bg, depth + 1):
            if len(w.edges) < depth:
                continue
            assert apply_to_word(fig1, fp, w) == apply_to_word(fig1, fp2, w)


def test_compose_with_inverse_is_identity_semantically(fig1, base_bg, sigma):
    from strandshift.testkit import semantic_equal

    prod = compose_pairs(fig1, sigma, invert_pair(sigma))
    assert semantic_equal(fig1, prod, identity_pair(fig1, base_bg), depth=5)


def test_compose_matches_word_application(fig1, base_bg):
    for seed in range(20):
        f = random_element(fig1, base_bg, GeneratorConfig(seed=seed, growth_steps=2))
        h = random_element(fig1, base_bg, GeneratorConfig(seed=seed + 500, growth_steps=2))
        prod = compose_pairs(fig1, f, h)
        depth = 6
        for w in enumerate_words(fig1, base_bg, depth):
            if len(w.edges) != depth:
                continue
            assert apply_to_word(fig1, prod, w) == apply_to_word(
                fig1, h, apply_to_word(fig1, f, w)
            )


def test_compose_through_isolated_cylinder(fig1, base_bg):
    # range leaf stops at B2 while the other factor's domain needs B2.0;
    # the common refinement forces a 1-ary caret through the isolated cylinder
    f = ForestPair(
        (PathWord(0, ("1",)), PathWord(0, ("2",)), PathWord(1)),
        (PathWord(0, ("1",)), PathWord(0, ("2",)), PathWord(1)),
        base_bg,
    )
    h = ForestPair(
        (PathWord(0, ("1",)), PathWord(0, ("2", "0")), PathWord(1)),
        (PathWord(0, ("1",)), PathWord(0, ("2", "0")), PathWord(1)),
        base_bg,
    )
    prod = compose_pairs(fig1, f, h)
    from strandshift.testkit import semantic_equal

    assert semantic_equal(fig1, prod, identity_pair(fig1, base_bg), depth=4)
