"""Forest pair diagrams: pairs of complete rooted subforests with a leaf bijection.

A group element is a triple (domain forest, bijection, range forest); both
forests are finite complete rooted subforests of the forest of paths and the
bijection pairs leaves of equal color.  We store only the two leaf sequences:
index i of the domain sequence is paired with index i of the range sequence,
and each sequence determines its forest (the prefix closure).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    BaseTuple,
    PathWord,
    ShiftGraph,
    children,
    color_of_word,
    is_isolated_cylinder,
    is_valid_word,
)


@dataclass(frozen=True)
class ForestPair:
    domain_leaves: tuple  # tuple[PathWord, ...]
    range_leaves: tuple
    base: BaseTuple

    def __len__(self):
        return len(self.domain_leaves)


def _check_leaf_forest(g: ShiftGraph, base: BaseTuple, leaves, side: str):
    """Leaves must be valid words forming the leaf set of a complete rooted subforest."""
    seen = set()
    for w in leaves:
        if not is_valid_word(g, base, w):
            raise ValueError(f"{side} leaf {w} is not a path of the graph")
        if w in seen:
            raise ValueError(f"{side} leaf {w} repeated")
        seen.add(w)
    # Prefix-antichain: no leaf is a prefix of another.
    for w in leaves:
        for p_len in range(len(w.edges)):
            if PathWord(w.root, w.edges[:p_len]) in seen:
                raise ValueError(f"{side} leaves are not an antichain at {w}")
    # Completeness: every proper prefix of a leaf has all its children present,
    # each either a leaf or a prefix of one.
    prefixes = set()
    for w in leaves:
        for p_len in range(len(w.edges)):
            prefixes.add(PathWord(w.root, w.edges[:p_len]))
    covered = set(prefixes) | seen
    for p in prefixes:
        for c in children(g, base, p):
            if c not in covered:
                raise ValueError(f"{side} forest incomplete below {p}: missing child {c}")
    # Rooted: every base position carries at least one leaf.
    roots = {w.root for w in leaves}
    if roots != set(range(len(base))):
        raise ValueError(f"{side} forest does not cover every root")


def validate_forest_pair(g: ShiftGraph, fp: ForestPair) -> None:
    """Raise ValueError unless fp is a well-formed color-preserving pair."""
    if len(fp.domain_leaves) != len(fp.range_leaves):
        raise ValueError("leaf sequences differ in length")
    _check_leaf_forest(g, fp.base, fp.domain_leaves, "domain")
    _check_leaf_forest(g, fp.base, fp.range_leaves, "range")
    for i, (d, r) in enumerate(zip(fp.domain_leaves, fp.range_leaves)):
        cd = color_of_word(g, fp.base, d)
        cr = color_of_word(g, fp.base, r)
        if cd != cr:
            raise ValueError(f"pairing not color-preserving at leaf {i}: {cd} vs {cr}")


def identity_pair(g: ShiftGraph, base: BaseTuple) -> ForestPair:
    roots = tuple(PathWord(i) for i in range(len(base)))
    return ForestPair(roots, roots, base)


def invert_pair(fp: ForestPair) -> ForestPair:
    return ForestPair(fp.range_leaves, fp.domain_leaves, fp.base)


def apply_to_word(g: ShiftGraph, fp: ForestPair, w: PathWord) -> PathWord:
    """Apply the represented homeomorphism to a finite path.

    Replaces the unique domain-leaf prefix of w by its paired range leaf.
    Raises KeyError when w is too short to have a leaf prefix; callers extend
    the word and retry.
    """
    for d, r in zip(fp.domain_leaves, fp.range_leaves):
        if d.is_prefix_of(w):
            return PathWord(r.root, r.edges + w.edges[len(d.edges) :])
    raise KeyError(f"no domain leaf is a prefix of {w}; extend the word")


def expand_regular(g: ShiftGraph, fp: ForestPair, index: int) -> ForestPair:
    """Replace domain leaf `index` and its partner by their full carets.

    The caret shape is forced by the leaf color; the new child leaves are
    paired edge-for-edge, so the represented homeomorphism is unchanged.
    """
    if not (0 <= index < len(fp.domain_leaves)):
        raise IndexError("leaf index out of range")
    d = fp.domain_leaves[index]
    r = fp.range_leaves[index]
    color = color_of_word(g, fp.base, d)
    new_d = list(fp.domain_leaves[:index])
    new_r = list(fp.range_leaves[:index])
    for e in g.out_order[color]:
        new_d.append(d.child(e))
        new_r.append(r.child(e))
    new_d.extend(fp.domain_leaves[index + 1 :])
    new_r.extend(fp.range_leaves[index + 1 :])
    return ForestPair(tuple(new_d), tuple(new_r), fp.base)


def expand_degenerate(g: ShiftGraph, fp: ForestPair, side: str, index: int) -> ForestPair:
    """Shorten one leaf `pe` to `p` on one side only.

    Legal exactly when the cylinder at p is an isolated point (p's color has a
    single self-loop), in which case the cylinders of p and pe coincide and
    the represented homeomorphism is unchanged.
    """
    leaves = {"domain": fp.domain_leaves, "range": fp.range_leaves}[side]
    if not (0 <= index < len(leaves)):
        raise IndexError("leaf index out of range")
    w = leaves[index]
    if not w.edges:
        raise ValueError("root leaf cannot be shortened")
    p = PathWord(w.root, w.edges[:-1])
    if not is_isolated_cylinder(g, fp.base, p):
        raise ValueError(f"cylinder at {p} is not an isolated point")
    new = leaves[:index] + (p,) + leaves[index + 1 :]
    if side == "domain":
        return ForestPair(new, fp.range_leaves, fp.base)
    return ForestPair(fp.domain_leaves, new, fp.base)


def _forest_union(g: ShiftGraph, base: BaseTuple, a, b) -> list:
    """Leaves of the union-closure of two complete rooted subforests.

    The union of the node sets is again complete and rooted; its leaves are
    the nodes with no child in the union.
    """
    nodes = set()
    for leaves in (a, b):
        for w in leaves:
            for p_len in range(len(w.edges) + 1):
                nodes.add(PathWord(w.root, w.edges[:p_len]))
    leaves = [w for w in nodes if not any(c in nodes for c in children(g, base, w))]
    leaves.sort(key=lambda w: (w.root, w.edges))
    return leaves


def _expand_side_to(g: ShiftGraph, fp: ForestPair, target_leaves, side: str) -> ForestPair:
    """Regular-expand fp until the given side's forest contains the target forest."""
    target = set(target_leaves)
    while True:
        leaves = fp.range_leaves if side == "range" else fp.domain_leaves
        todo = None
        for i, w in enumerate(leaves):
            if w not in target:
                todo = i  # a proper prefix of some target leaf; expand it
                break
        if todo is None:
            return fp
        fp = expand_regular(g, fp, todo)


def compose_pairs(g: ShiftGraph, f: ForestPair, h: ForestPair) -> ForestPair:
    """Composite pair: f applied first, then h.

    Both pairs are expanded until f's range forest and h's domain forest agree
    with their union-closure E, then leaves are matched through E by word.
    """
    if f.base != h.base:
        raise ValueError("pairs over different bases")
    common = _forest_union(g, f.base, f.range_leaves, h.domain_leaves)
    f2 = _expand_side_to(g, f, common, "range")
    h2 = _expand_side_to(g, h, common, "domain")
    h_map = dict(zip(h2.domain_leaves, h2.range_leaves))
    return ForestPair(
        f2.domain_leaves,
        tuple(h_map[w] for w in f2.range_leaves),
        f.base,
    )
