import random

import pytest

from strandshift.diagrams import (
    _Builder,
    canonical_key,
    compose,
    decompose_generators,
    equal,
    from_forest_pair,
    identity_diagram,
    invert,
    is_group_element,
    is_reduced,
    merge_diagram,
    permutation_diagram,
    reduce,
    reduce_with_log,
    split_diagram,
    to_forest_pair,
    validate_strand_diagram,
)
from strandshift.errors import SignatureMismatch
from strandshift.forest import ForestPair, identity_pair
from strandshift.graphs import PathWord
from strandshift.testkit import GeneratorConfig, random_element


def build_sigma_expected():
    """The worked-example diagram, wired point by point."""
    b = _Builder()
    u1, u2 = b.point("B"), b.point("G")
    sB, sG = b.point("B"), b.point("G")
    mG4, mG = b.point("B"), b.point("G")
    w1, w2 = b.point("B"), b.point("G")
    b.strand("B", u1, sB)
    b.strand("G", u2, sG)
    b.strand("G", sB, mG)  # B1 -> G3: first in-slot of the G merge
    b.strand("G", sG, mG4)  # G3 -> G41
    b.strand("R", sB, mG4)  # B2 -> G42
    b.strand("B", sG, w1)  # G4 -> B
    b.strand("B", mG4, mG)
    b.strand("G", mG, w2)
    return b.build([u1, u2], [w1, w2])


def build_sigma_split_sources():
    """Same element drawn with split-sources and a merge-sink instead of univalent endpoints."""
    b = _Builder()
    sB, sG = b.point("B"), b.point("G")
    mG4, mG = b.point("B"), b.point("G")
    tB = b.point("B")
    b.strand("G", sB, mG)
    b.strand("G", sG, mG4)
    b.strand("R", sB, mG4)
    b.strand("B", sG, tB)
    b.strand("B", mG4, mG)
    return b.build([sB, sG], [tB, mG])


def build_sigma_squared_expected():
    """Reduced square of the worked element, wired point by point."""
    b = _Builder()
    u1, u2 = b.point("B"), b.point("G")
    sB, sG, sB2 = b.point("B"), b.point("G"), b.point("B")
    mG4, mG4b, mGp = b.point("B"), b.point("B"), b.point("G")
    w1, w2 = b.point("B"), b.point("G")
    b.strand("B", u1, sB)
    b.strand("G", u2, sG)
    b.strand("G", sB, mG4b)
    b.strand("G", sG, mG4)
    b.strand("R", sB, mG4)
    b.strand("B", sG, sB2)
    b.strand("G", sB2, mGp)
    b.strand("R", sB2, mG4b)
    b.strand("B", mG4, w1)
    b.strand("B", mG4b, mGp)
    b.strand("G", mGp, w2)
    return b.build([u1, u2], [w1, w2])


def test_validate_paper_style_diagram(fig1):
    assert validate_strand_diagram(build_sigma_split_sources(), fig1) == []


def test_validate_single_strand(fig1):
    assert validate_strand_diagram(identity_diagram(("B",)), fig1) == []


def test_validate_rejects_swapped_split_colors(fig1):
    b = _Builder()
    src, v = b.point("B"), b.point("B")
    t1, t2 = b.point("R"), b.point("G")
    b.strand("B", src, v)
    b.strand("R", v, t1)  # out-slot order must be (G, R) for a B split
    b.strand("G", v, t2)
    d = b.build([src], [t1, t2])
    report = validate_strand_diagram(d, fig1)
    assert any("split out-colors" in line for line in report)


def test_validate_rejects_bad_degrees(fig1):
    b = _Builder()
    p, q = b.point("B"), b.point("B")
    r, s = b.point("G"), b.point("G")
    b.strand("B", p, q)
    b.strand("B", p, q)  # q has in-degree 2 and out-degree 2: no kind
    b.strand("G", q, r)
    b.strand("G", q, s)
    d = b.build([p], [r, s])
    report = validate_strand_diagram(d, fig1)
    assert any("match no kind" in line for line in report)


def test_validate_detects_cycle(fig1):
    b = _Builder()
    p, q = b.point("R"), b.point("R")
    b.strand("R", p, q)
    b.strand("R", q, p)
    d = b.build([], [])
    assert any("cycle" in line for line in validate_strand_diagram(d, fig1))


def test_from_forest_pair_matches_picture(fig1, sigma):
    assert canonical_key(from_forest_pair(fig1, sigma)) == canonical_key(build_sigma_expected())


def test_from_forest_pair_identity_and_permutation(fig1, base_bg):
    assert canonical_key(from_forest_pair(fig1, identity_pair(fig1, base_bg))) == canonical_key(
        identity_diagram(base_bg)
    )
    swap = ForestPair((PathWord(0), PathWord(1)), (PathWord(1), PathWord(0)), ("G", "G"))
    assert canonical_key(from_forest_pair(fig1, swap)) == canonical_key(
        permutation_diagram(("G", "G"), [1, 0])
    )


def test_to_forest_pair_round_trips(fig1, base_bg, sigma):
    for fp in (
        sigma,
        identity_pair(fig1, base_bg),
        ForestPair((PathWord(0), PathWord(1)), (PathWord(1), PathWord(0)), ("G", "G")),
    ):
        d = from_forest_pair(fig1, fp)
        back = to_forest_pair(fig1, d)
        assert sorted(zip(back.domain_leaves, back.range_leaves)) == sorted(
            zip(fp.domain_leaves, fp.range_leaves)
        )
        assert canonical_key(from_forest_pair(fig1, back)) == canonical_key(d)


def test_to_forest_pair_rejects_unreduced_and_mismatched(fig1, sigma):
    d = from_forest_pair(fig1, sigma)
    with pytest.raises(ValueError):
        to_forest_pair(fig1, compose(d, d))  # composite has a type 2 redex
    caret = split_diagram(("B",), 0, ("G", "R"))
    with pytest.raises(SignatureMismatch):
        to_forest_pair(fig1, caret)


def test_composition_square_reduces_to_picture(fig1, sigma):
    d = from_forest_pair(fig1, sigma)
    square = compose(d, d)
    red, log = reduce_with_log(square)
    assert log == [2]
    assert canonical_key(red) == canonical_key(build_sigma_squared_expected())


def test_compose_signature_mismatch(fig1):
    with pytest.raises(SignatureMismatch):
        compose(identity_diagram(("B",)), identity_diagram(("G",)))


def test_identity_and_inverse_laws(fig1, base_bg, sigma):
    d = from_forest_pair(fig1, sigma)
    ident = identity_diagram(base_bg)
    assert equal(compose(d, ident), d)
    assert equal(compose(ident, d), d)
    assert equal(compose(d, invert(d)), ident)
    assert equal(compose(invert(d), d), ident)


def test_invert_is_involution(fig1, base_bg, sigma):
    d = from_forest_pair(fig1, sigma)
    assert canonical_key(invert(invert(d))) == canonical_key(d)
    ident = identity_diagram(base_bg)
    assert canonical_key(invert(ident)) == canonical_key(ident)
    caret = split_diagram(("B", "G"), 0, ("G", "R"))
    assert canonical_key(invert(caret)) == canonical_key(
        merge_diagram(("B", "G"), 0, ("G", "R"))
    )


def test_type0_reduction_from_unary_caret(fig1, base_bg, sigma):
    # same element with the isolated R cylinder written one level deeper:
    # the unary node becomes a degenerate point, removed by a type 0 step
    deeper = ForestPair(
        (PathWord(0, ("1",)), PathWord(0, ("2", "0")), PathWord(1, ("3",)), PathWord(1, ("4",))),
        sigma.range_leaves,
        base_bg,
    )
    d = from_forest_pair(fig1, deeper)
    red, log = reduce_with_log(d)
    assert log == [0]
    assert canonical_key(red) == canonical_key(from_forest_pair(fig1, sigma))


def test_reduce_is_fixpoint_on_reduced(fig1, sigma):
    d = from_forest_pair(fig1, sigma)
    assert is_reduced(d)
    red, log = reduce_with_log(d)
    assert log == [] and canonical_key(red) == canonical_key(d)


def test_equal_examples(fig1, base_bg, sigma):
    d = from_forest_pair(fig1, sigma)
    assert equal(d, reduce(compose(d, identity_diagram(base_bg))))
    assert equal(compose(d, invert(d)), identity_diagram(base_bg))
    assert not equal(d, identity_diagram(base_bg))


def test_normal_form_unique_under_random_orders(fig1, base_bg):
    rngs = [random.Random(s) for s in range(5)]
    for seed in range(40):
        f = random_element(fig1, base_bg, GeneratorConfig(seed=seed, growth_steps=2))
        h = random_element(fig1, base_bg, GeneratorConfig(seed=seed + 700, growth_steps=2))
        d = compose(from_forest_pair(fig1, f), from_forest_pair(fig1, h))
        baseline = canonical_key(reduce(d))
        for rng in rngs:
            assert canonical_key(reduce(d, rng=rng)) == baseline


def test_reductions_preserve_signature(fig1, base_bg):
    for seed in range(20):
        f = random_element(fig1, base_bg, GeneratorConfig(seed=seed, growth_steps=2))
        h = random_element(fig1, base_bg, GeneratorConfig(seed=seed + 900, growth_steps=2))
        d = compose(from_forest_pair(fig1, f), invert(from_forest_pair(fig1, h)))
        r = reduce(d)
        assert r.domain() == d.domain() and r.range() == d.range()


def test_associativity_up_to_equivalence(fig1, base_bg):
    for seed in range(10):
        a, b, c = (
            from_forest_pair(
                fig1, random_element(fig1, base_bg, GeneratorConfig(seed=seed + off, growth_steps=2))
            )
            for off in (0, 100, 200)
        )
        assert equal(compose(compose(a, b), c), compose(a, compose(b, c)))


def test_decompose_generators_shapes(fig1, base_bg, sigma):
    d = from_forest_pair(fig1, sigma)
    pieces = decompose_generators(d)
    kinds = []
    for p in pieces:
        splits = sum(1 for q in p.point_color if len(p.out_slots[q]) >= 2)
        merges = sum(1 for q in p.point_color if len(p.in_slots[q]) >= 2)
        kinds.append("split" if splits else "merge" if merges else "perm")
    assert kinds == ["split", "perm", "merge", "merge"]
    assert sum(1 for q in pieces[0].point_color if len(pieces[0].out_slots[q]) >= 2) == 2

    recomposed = pieces[0]
    for p in pieces[1:]:
        recomposed = compose(recomposed, p)
    assert equal(recomposed, d)

    ident_pieces = decompose_generators(identity_diagram(base_bg))
    assert len(ident_pieces) == 1 and equal(ident_pieces[0], identity_diagram(base_bg))

    caret = split_diagram(("B",), 0, ("G", "R"))
    caret_pieces = decompose_generators(caret)
    assert len(caret_pieces) == 1 and equal(caret_pieces[0], caret)


def test_decompose_generators_random(fig1, base_bg):
    for seed in range(10):
        d = from_forest_pair(
            fig1, random_element(fig1, base_bg, GeneratorConfig(seed=seed, growth_steps=3))
        )
        pieces = decompose_generators(d)
        recomposed = pieces[0]
        for p in pieces[1:]:
            recomposed = compose(recomposed, p)
        assert equal(recomposed, d)


def test_is_group_element(fig1, base_bg, sigma):
    d = from_forest_pair(fig1, sigma)
    assert is_group_element(d, base_bg)
    assert not is_group_element(split_diagram(("B",), 0, ("G", "R")), ("B",))
    assert not is_group_element(permutation_diagram(("B", "G"), [1, 0]), ("B", "G"))
