"""Independent oracles and seeded generators grounding the test suite.

Nothing here reuses the reduction or conjugacy machinery it is meant to
check: semantic equality evaluates homeomorphisms word by word, conjugator
search enumerates candidate elements outright, and the generators build
forest pairs directly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .diagrams import compose, equal, from_forest_pair, invert
from .forest import ForestPair, apply_to_word
from .graphs import PathWord, ShiftGraph, color_of_word, normalize_graph, validate_graph


@dataclass
class GeneratorConfig:
    seed: int = 0
    growth_steps: int = 3
    max_word_depth: int = 8
    max_vertices: int = 4
    max_out_degree: int = 3


def _exact_words(g: ShiftGraph, base, depth: int):
    words = [PathWord(i) for i in range(len(base))]
    for _ in range(depth):
        words = [w.child(e) for w in words for e in g.out_order[color_of_word(g, base, w)]]
    return words


def point_form(g: ShiftGraph, w: PathWord) -> PathWord:
    """Shortest word denoting the same point set as w.

    A trailing self-loop edge at a color whose out-star is that single loop
    pins the same isolated point as its prefix, so such edges carry no
    information and are stripped.  Words over branching colors are returned
    unchanged.
    """
    edges = list(w.edges)
    while edges:
        e = edges[-1]
        c = g.term(e)
        if g.init(e) == c and g.is_isolated_color(c):
            edges.pop()
        else:
            break
    return PathWord(w.root, tuple(edges))


def semantic_equal(g: ShiftGraph, f1: ForestPair, f2: ForestPair, depth: int) -> bool:
    """Compare the represented homeomorphisms on every word of the given length.

    At depth at least both maximum leaf lengths, prefix replacement is fully
    determined on length-`depth` words, so agreement there is agreement
    everywhere.  Image words are compared as points: two images that differ
    only by trailing steps around an isolated cylinder's loop denote the same
    point and must not count as a difference.
    """
    need = max(
        [len(w.edges) for w in f1.domain_leaves + f2.domain_leaves] or [0]
    )
    if depth < need:
        raise ValueError(f"depth {depth} below maximum leaf length {need}")
    if f1.base != f2.base:
        return False
    for w in _exact_words(g, f1.base, depth):
        u = point_form(g, apply_to_word(g, f1, w))
        v = point_form(g, apply_to_word(g, f2, w))
        if u != v:
            return False
    return True


def enumerate_forests(g: ShiftGraph, base, max_expansions: int):
    """All complete rooted subforest leaf tuples with at most the given expansions."""
    roots = tuple(PathWord(i) for i in range(len(base)))
    seen = {roots}
    frontier = [roots]
    out = [roots]
    for _ in range(max_expansions):
        nxt = []
        for leaves in frontier:
            for i, w in enumerate(leaves):
                color = color_of_word(g, base, w)
                kids = tuple(w.child(e) for e in g.out_order[color])
                expanded = leaves[:i] + kids + leaves[i + 1 :]
                key = tuple(sorted(expanded, key=lambda x: (x.root, x.edges)))
                if key not in seen:
                    seen.add(key)
                    nxt.append(expanded)
                    out.append(expanded)
        frontier = nxt
    return out


def _color_bijections(g, base, domain_leaves, range_leaves):
    """Pairings of range leaves matching domain colors positionally."""
    by_color = {}
    for i, w in enumerate(range_leaves):
        by_color.setdefault(color_of_word(g, base, w), []).append(i)
    slots = [color_of_word(g, base, w) for w in domain_leaves]
    counts = {}
    for c in slots:
        counts[c] = counts.get(c, 0) + 1
    if any(len(by_color.get(c, [])) != n for c, n in counts.items()) or len(
        domain_leaves
    ) != len(range_leaves):
        return
    perms = [itertools.permutations(by_color[c]) for c in sorted(counts)]
    order = sorted(counts)
    for combo in itertools.product(*perms):
        assign = {c: list(p) for c, p in zip(order, combo)}
        used = {c: 0 for c in order}
        result = []
        for c in slots:
            result.append(range_leaves[assign[c][used[c]]])
            used[c] += 1
        yield tuple(result)


def brute_conjugate(g: ShiftGraph, f, target, size_bound: int = 2):
    """First forest pair h with h target h^-1 = f, by exhaustive enumeration.

    Sound for yes; a None only says no conjugator exists within the bound.
    """
    base = f.domain()
    forests = enumerate_forests(g, base, size_bound)
    for fd in forests:
        for fr in forests:
            for paired in _color_bijections(g, base, fd, fr):
                h = from_forest_pair(g, ForestPair(fd, paired, base))
                if equal(compose(compose(h, target), invert(h)), f):
                    return h
    return None


def random_element(g: ShiftGraph, base, cfg: GeneratorConfig = None, rng=None) -> ForestPair:
    """Seeded random forest pair with a random color-preserving leaf bijection.

    Both forests grow by expanding a random leaf of the same color, which
    keeps the leaf color multisets equal by construction; the bijection then
    shuffles within color classes.
    """
    cfg = cfg or GeneratorConfig()
    rng = rng or random.Random(cfg.seed)
    dom = [PathWord(i) for i in range(len(base))]
    ran = [PathWord(i) for i in range(len(base))]
    for _ in range(cfg.growth_steps):
        colors = sorted({color_of_word(g, base, w) for w in dom})
        color = rng.choice(colors)
        for side in (dom, ran):
            idxs = [i for i, w in enumerate(side) if color_of_word(g, base, w) == color]
            i = rng.choice(idxs)
            w = side[i]
            side[i : i + 1] = [w.child(e) for e in g.out_order[color]]
    by_color = {}
    for i, w in enumerate(ran):
        by_color.setdefault(color_of_word(g, base, w), []).append(i)
    for idxs in by_color.values():
        rng.shuffle(idxs)
    used = {c: 0 for c in by_color}
    paired = []
    for w in dom:
        c = color_of_word(g, base, w)
        paired.append(ran[by_color[c][used[c]]])
        used[c] += 1
    return ForestPair(tuple(dom), tuple(paired), tuple(base))


def random_graph(cfg: GeneratorConfig = None, rng=None):
    """Seeded random normalized graph plus a random nonempty base."""
    cfg = cfg or GeneratorConfig()
    rng = rng or random.Random(cfg.seed)
    while True:
        n = rng.randint(1, cfg.max_vertices)
        vertices = [f"V{i}" for i in range(n)]
        edges = {}
        order = {v: [] for v in vertices}
        eid = 0
        for v in vertices:
            degree = rng.randint(1, cfg.max_out_degree)
            if degree == 1:
                targets = [v]  # out-degree 1 forces a self-loop
            else:
                targets = [rng.choice(vertices) for _ in range(degree)]
            for t in targets:
                edges[f"e{eid}"] = (v, t)
                order[v].append(f"e{eid}")
                eid += 1
        g = ShiftGraph(vertices, edges, order)
        if validate_graph(g):
            continue
        g, _, _ = normalize_graph(g, ())
        if validate_graph(g):
            continue
        base = tuple(rng.choice(g.vertices) for _ in range(rng.randint(1, 3)))
        return g, base
