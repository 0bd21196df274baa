"""Strand diagrams: acyclic colored multigraphs with slot orders, and their calculus.

A diagram is a finite acyclic graph whose points are univalent sources,
univalent sinks, splits, merges or degenerate points.  The rotation system is
stored as ordered slot lists: out-slot j of a c-colored split carries the
color of the j-th outgoing edge of c (in the graph's fixed edge order), and
in-slot j of a c-colored merge mirrors that.  Given the point kinds, the slot
lists are equivalent to cyclic rotations (split: (in, out_1..out_k), merge:
(out, in_k..in_1)).

Every diagram produced by this module carries one univalent source per domain
position and one univalent sink per range position.  The validator still
accepts split-sources and merge-sinks (they are legitimate diagrams), but the
normalized form is what makes closing along a base line a bijection, so the
constructors never emit them.
"""

from __future__ import annotations

import itertools
from collections import deque

from .errors import SignatureMismatch
from .forest import ForestPair, validate_forest_pair
from .graphs import PathWord, ShiftGraph


class StrandDiagram:
    """Immutable-by-convention diagram value.

    point_color/strand_color: id -> vertex id; strand_from/strand_to:
    strand id -> point id; in_slots/out_slots: point id -> tuple of strand
    ids; sources/sinks: ordered point id tuples.
    """

    __slots__ = (
        "point_color",
        "strand_color",
        "strand_from",
        "strand_to",
        "in_slots",
        "out_slots",
        "sources",
        "sinks",
        "_key",
    )

    def __init__(self, point_color, strand_color, strand_from, strand_to, in_slots, out_slots, sources, sinks):
        self.point_color = dict(point_color)
        self.strand_color = dict(strand_color)
        self.strand_from = dict(strand_from)
        self.strand_to = dict(strand_to)
        self.in_slots = {p: tuple(v) for p, v in in_slots.items()}
        self.out_slots = {p: tuple(v) for p, v in out_slots.items()}
        self.sources = tuple(sources)
        self.sinks = tuple(sinks)
        self._key = None
        _check_structure(self)

    def domain(self) -> tuple:
        return tuple(self.point_color[p] for p in self.sources)

    def range(self) -> tuple:
        return tuple(self.point_color[p] for p in self.sinks)

    def n_points(self) -> int:
        return len(self.point_color)

    def __repr__(self):
        return (
            f"StrandDiagram({len(self.point_color)} points, "
            f"{len(self.strand_color)} strands, {self.domain()}->{self.range()})"
        )


def _check_structure(d) -> None:
    """Cheap internal consistency checks shared by open and closed diagrams."""
    for s, p in d.strand_from.items():
        assert p in d.point_color and s in d.out_slots[p], f"strand {s} origin broken"
    for s, p in d.strand_to.items():
        assert p in d.point_color and s in d.in_slots[p], f"strand {s} target broken"
    for p in d.point_color:
        for s in d.out_slots[p]:
            assert d.strand_from[s] == p
        for s in d.in_slots[p]:
            assert d.strand_to[s] == p


def kind_of(d, p) -> str:
    ind = len(d.in_slots[p])
    outd = len(d.out_slots[p])
    if ind == 0 and outd == 1:
        return "source"
    if ind == 1 and outd == 0:
        return "sink"
    if ind == 0 and outd >= 2:
        return "split-source"
    if ind >= 2 and outd == 0:
        return "merge-sink"
    if ind == 1 and outd >= 2:
        return "split"
    if ind >= 2 and outd == 1:
        return "merge"
    if ind == 1 and outd == 1:
        return "degenerate"
    return "invalid"


def validate_strand_diagram(d: StrandDiagram, g: ShiftGraph) -> list:
    """Report every violated diagram condition; empty report iff valid.

    Checks acyclicity, the split/merge/degenerate local color conditions
    against the graph's ordered out-stars, the degree classification of every
    point, agreement of univalent endpoints with their strand color, and that
    the source/sink orders list exactly the in-degree-0/out-degree-0 points.
    """
    report = []
    # Kahn's algorithm for acyclicity.
    indeg = {p: len(d.in_slots[p]) for p in d.point_color}
    queue = deque(p for p, k in indeg.items() if k == 0)
    seen = 0
    while queue:
        p = queue.popleft()
        seen += 1
        for s in d.out_slots[p]:
            q = d.strand_to[s]
            indeg[q] -= 1
            if indeg[q] == 0:
                queue.append(q)
    if seen != len(d.point_color):
        report.append("diagram contains a directed cycle")

    for p in sorted(d.point_color):
        color = d.point_color[p]
        kind = kind_of(d, p)
        if color not in g.out_order:
            report.append(f"point {p}: color {color} is not a vertex")
            continue
        if kind == "invalid":
            report.append(
                f"point {p}: degrees ({len(d.in_slots[p])},{len(d.out_slots[p])}) match no kind"
            )
            continue
        if kind in ("split", "split-source"):
            want = g.child_colors(color)
            got = tuple(d.strand_color[s] for s in d.out_slots[p])
            if got != want:
                report.append(f"point {p}: split out-colors {got}, expected {want}")
            if kind == "split" and d.strand_color[d.in_slots[p][0]] != color:
                report.append(f"point {p}: split in-strand color differs from point color")
        elif kind in ("merge", "merge-sink"):
            want = g.child_colors(color)
            got = tuple(d.strand_color[s] for s in d.in_slots[p])
            if got != want:
                report.append(f"point {p}: merge in-colors {got}, expected {want}")
            if kind == "merge" and d.strand_color[d.out_slots[p][0]] != color:
                report.append(f"point {p}: merge out-strand color differs from point color")
        elif kind == "degenerate":
            sin = d.strand_color[d.in_slots[p][0]]
            sout = d.strand_color[d.out_slots[p][0]]
            if not (sin == sout == color):
                report.append(f"point {p}: degenerate colors disagree")
            if not g.is_isolated_color(color):
                report.append(f"point {p}: degenerate color {color} has no single self-loop")
        elif kind == "source":
            if d.strand_color[d.out_slots[p][0]] != color:
                report.append(f"point {p}: source color differs from its strand")
        elif kind == "sink":
            if d.strand_color[d.in_slots[p][0]] != color:
                report.append(f"point {p}: sink color differs from its strand")

    real_sources = {p for p in d.point_color if not d.in_slots[p]}
    real_sinks = {p for p in d.point_color if not d.out_slots[p]}
    if set(d.sources) != real_sources or len(set(d.sources)) != len(d.sources):
        report.append("source order does not list exactly the in-degree-0 points")
    if set(d.sinks) != real_sinks or len(set(d.sinks)) != len(d.sinks):
        report.append("sink order does not list exactly the out-degree-0 points")
    return report


# ---------------------------------------------------------------------------
# canonical serialization

def canonical_order(d: StrandDiagram) -> dict:
    """Point id -> canonical index, by BFS from sources in order, out-slots in order."""
    order = {}
    queue = deque()
    for p in d.sources:
        order[p] = len(order)
        queue.append(p)
    while queue:
        p = queue.popleft()
        for s in d.out_slots[p]:
            q = d.strand_to[s]
            if q not in order:
                order[q] = len(order)
                queue.append(q)
    if len(order) != len(d.point_color):
        raise ValueError("diagram has points unreachable from its sources")
    return order


def canonical_key(d: StrandDiagram) -> tuple:
    """Total invariant of the diagram up to relabeling.

    Two diagrams are isomorphic by a color-, slot- and endpoint-order-
    preserving isomorphism iff their keys are equal.
    """
    if d._key is not None:
        return d._key
    order = canonical_order(d)
    by_rank = sorted(d.point_color, key=order.__getitem__)
    records = []
    for p in by_rank:
        outs = []
        for s in d.out_slots[p]:
            q = d.strand_to[s]
            outs.append((d.strand_color[s], order[q], d.in_slots[q].index(s)))
        records.append((d.point_color[p], tuple(outs)))
    key = (len(d.sources), tuple(records), tuple(order[p] for p in d.sinks))
    d._key = key
    return key


# ---------------------------------------------------------------------------
# constructors

class _Builder:
    def __init__(self):
        self.point_color = {}
        self.strand_color = {}
        self.strand_from = {}
        self.strand_to = {}
        self.in_slots = {}
        self.out_slots = {}
        self._next = 0

    def fresh(self):
        self._next += 1
        return self._next - 1

    def point(self, color):
        p = self.fresh()
        self.point_color[p] = color
        self.in_slots[p] = []
        self.out_slots[p] = []
        return p

    def strand(self, color, origin=None, target=None):
        s = self.fresh()
        self.strand_color[s] = color
        if origin is not None:
            self.attach_origin(s, origin)
        if target is not None:
            self.attach_target(s, target)
        return s

    def attach_origin(self, s, p):
        self.strand_from[s] = p
        self.out_slots[p].append(s)

    def attach_target(self, s, p):
        self.strand_to[s] = p
        self.in_slots[p].append(s)

    def build(self, sources, sinks) -> StrandDiagram:
        return StrandDiagram(
            self.point_color,
            self.strand_color,
            self.strand_from,
            self.strand_to,
            self.in_slots,
            self.out_slots,
            sources,
            sinks,
        )


def identity_diagram(colors) -> StrandDiagram:
    b = _Builder()
    sources, sinks = [], []
    for c in colors:
        src = b.point(c)
        snk = b.point(c)
        b.strand(c, src, snk)
        sources.append(src)
        sinks.append(snk)
    return b.build(sources, sinks)


def permutation_diagram(domain_colors, mapping) -> StrandDiagram:
    """Straight strands only: source j is wired to sink mapping[j]."""
    n = len(domain_colors)
    if sorted(mapping) != list(range(n)):
        raise ValueError("mapping is not a permutation")
    b = _Builder()
    sources = [b.point(c) for c in domain_colors]
    range_colors = [None] * n
    for j in range(n):
        range_colors[mapping[j]] = domain_colors[j]
    sinks = [b.point(c) for c in range_colors]
    for j in range(n):
        b.strand(domain_colors[j], sources[j], sinks[mapping[j]])
    return b.build(sources, sinks)


def multi_split_diagram(domain_colors, splits: dict) -> StrandDiagram:
    """One layer of splits: `splits` maps position -> tuple of child colors.

    Positions not mentioned pass straight through.  The range is the domain
    with each split position replaced by its children, in order.
    """
    b = _Builder()
    sources = [b.point(c) for c in domain_colors]
    sinks = []
    for j, c in enumerate(domain_colors):
        if j in splits:
            kids = splits[j]
            v = b.point(c)
            b.strand(c, sources[j], v)
            for kc in kids:
                snk = b.point(kc)
                b.strand(kc, v, snk)
                sinks.append(snk)
        else:
            snk = b.point(c)
            b.strand(c, sources[j], snk)
            sinks.append(snk)
    return b.build(sources, sinks)


def split_diagram(domain_colors, position, child_colors) -> StrandDiagram:
    return multi_split_diagram(domain_colors, {position: tuple(child_colors)})


def merge_diagram(range_colors, position, child_colors) -> StrandDiagram:
    """Merges the block of `child_colors` at `position` (of the domain) into one point."""
    return invert(split_diagram(range_colors, position, child_colors))


def from_forest_pair(g: ShiftGraph, fp: ForestPair) -> StrandDiagram:
    """Glue the range forest upside-down under the domain forest.

    Internal forest nodes with k >= 2 children become splits (merges on the
    range side); nodes with a single child become degenerate points; leaf i
    of the domain forest is glued to leaf i of the range forest.
    """
    validate_forest_pair(g, fp)
    b = _Builder()
    base = fp.base

    def forest_children(leaves):
        nodes = {}
        leafset = set(leaves)
        for w in leaves:
            for plen in range(len(w.edges)):
                nodes.setdefault(PathWord(w.root, w.edges[:plen]), True)
        internal = set(nodes)

        def kids(w):
            color = _word_color(g, base, w)
            return [w.child(e) for e in g.out_order[color]]

        return internal, leafset, kids

    d_internal, d_leaves, d_kids = forest_children(fp.domain_leaves)
    r_internal, r_leaves, r_kids = forest_children(fp.range_leaves)

    d_strand = {}

    def build_domain(w):
        color = _word_color(g, base, w)
        s = b.strand(color)
        d_strand[w] = s
        if w in d_internal:
            p = b.point(color)
            b.attach_target(s, p)
            for c in d_kids(w):
                cs = build_domain(c)
                b.strand_from[cs] = p
                b.out_slots[p].append(cs)
        return s

    r_strand = {}

    def build_range(w):
        color = _word_color(g, base, w)
        s = b.strand(color)
        r_strand[w] = s
        if w in r_internal:
            p = b.point(color)
            b.attach_origin(s, p)
            for c in r_kids(w):
                cs = build_range(c)
                b.strand_to[cs] = p
                b.in_slots[p].append(cs)
        return s

    sources, sinks = [], []
    for i, color in enumerate(base):
        src = b.point(color)
        sources.append(src)
        s = build_domain(PathWord(i))
        b.attach_origin(s, src)
    for i, color in enumerate(base):
        snk = b.point(color)
        sinks.append(snk)
        t = build_range(PathWord(i))
        b.attach_target(t, snk)

    # Glue leaf i of the domain forest to leaf i of the range forest: the two
    # dangling strands fuse, keeping the domain-side id.
    for dw, rw in zip(fp.domain_leaves, fp.range_leaves):
        s, t = d_strand[dw], r_strand[rw]
        target = b.strand_to[t]
        b.strand_to[s] = target
        slots = b.in_slots[target]
        slots[slots.index(t)] = s
        del b.strand_to[t]
        del b.strand_color[t]
    return b.build(sources, sinks)


def _word_color(g, base, w: PathWord):
    return g.term(w.edges[-1]) if w.edges else base[w.root]


# ---------------------------------------------------------------------------
# groupoid operations

def compose(a: StrandDiagram, b: StrandDiagram) -> StrandDiagram:
    """Concatenate: a's i-th sink is spliced onto b's i-th source. Not reduced."""
    if a.range() != b.domain():
        raise SignatureMismatch(f"range {a.range()} != domain {b.domain()}")
    offset = 1 + max(
        itertools.chain(a.point_color, a.strand_color, [0]),
    )
    pc = dict(a.point_color)
    sc = dict(a.strand_color)
    sf = dict(a.strand_from)
    st = dict(a.strand_to)
    ins = {p: list(v) for p, v in a.in_slots.items()}
    outs = {p: list(v) for p, v in a.out_slots.items()}
    for p, c in b.point_color.items():
        pc[p + offset] = c
        ins[p + offset] = [s + offset for s in b.in_slots[p]]
        outs[p + offset] = [s + offset for s in b.out_slots[p]]
    for s, c in b.strand_color.items():
        sc[s + offset] = c
        sf[s + offset] = b.strand_from[s] + offset
        st[s + offset] = b.strand_to[s] + offset

    for snk, src in zip(a.sinks, (p + offset for p in b.sources)):
        s_a = ins[snk][0]
        s_b = outs[src][0]
        target = st[s_b]
        st[s_a] = target
        slots = ins[target]
        slots[slots.index(s_b)] = s_a
        for table, key in ((pc, snk), (pc, src), (sc, s_b)):
            del table[key]
        del ins[snk], outs[snk], ins[src], outs[src]
        del sf[s_b], st[s_b]
    return StrandDiagram(pc, sc, sf, st, ins, outs, a.sources, tuple(p + offset for p in b.sinks))


def invert(d: StrandDiagram) -> StrandDiagram:
    """Flip upside-down: strand directions reverse, splits become merges."""
    return StrandDiagram(
        d.point_color,
        d.strand_color,
        d.strand_to,
        d.strand_from,
        d.out_slots,
        d.in_slots,
        d.sinks,
        d.sources,
    )


# ---------------------------------------------------------------------------
# reductions

def find_redexes(d, skip=frozenset()) -> list:
    """All type 0/1/2 redexes; points in `skip` (base points) never participate.

    Returns (type, primary point, payload) triples:
      type 0 -- payload is the degenerate point,
      type 1 -- payload (v, w): split v whose out-strands are exactly the
                in-strands of merge w, slot by slot,
      type 2 -- payload (v, w): merge v whose out-strand feeds split w.
    """
    redexes = []
    for p in d.point_color:
        if p in skip:
            continue
        ind = len(d.in_slots[p])
        outd = len(d.out_slots[p])
        if ind == 1 and outd == 1:
            redexes.append((0, p, p))
        elif ind == 1 and outd >= 2:  # split: candidate type 1
            w = d.strand_to[d.out_slots[p][0]]
            if (
                w not in skip
                and len(d.in_slots[w]) == outd
                and len(d.out_slots[w]) == 1
                and d.point_color[w] == d.point_color[p]
                and d.out_slots[p] == d.in_slots[w]
            ):
                redexes.append((1, p, (p, w)))
        elif ind >= 2 and outd == 1:  # merge: candidate type 2
            w = d.strand_to[d.out_slots[p][0]]
            if (
                w not in skip
                and len(d.in_slots[w]) == 1
                and len(d.out_slots[w]) >= 2
                and d.point_color[w] == d.point_color[p]
            ):
                redexes.append((2, p, (p, w)))
    return redexes


def _copy_tables(d):
    return (
        dict(d.point_color),
        dict(d.strand_color),
        dict(d.strand_from),
        dict(d.strand_to),
        {p: list(v) for p, v in d.in_slots.items()},
        {p: list(v) for p, v in d.out_slots.items()},
    )


def apply_redex(d, redex):
    """Raw tables of d with one redex applied; shared by open and closed diagrams."""
    rtype, _, payload = redex
    pc, sc, sf, st, ins, outs = _copy_tables(d)

    def drop_point(p):
        del pc[p], ins[p], outs[p]

    def drop_strand(s):
        del sc[s], sf[s], st[s]

    def retarget(s, target, replacing):
        # strand s now ends where `replacing` ended
        st[s] = target
        slots = ins[target]
        slots[slots.index(replacing)] = s

    if rtype == 0:
        p = payload
        s_in = ins[p][0]
        s_out = outs[p][0]
        assert s_in != s_out, "self-loop degenerate point in an acyclic diagram"
        retarget(s_in, st[s_out], s_out)
        drop_point(p)
        drop_strand(s_out)
    elif rtype == 1:
        v, w = payload
        s_in = ins[v][0]
        s_out = outs[w][0]
        for s in outs[v]:
            drop_strand(s)
        retarget(s_in, st[s_out], s_out)
        drop_strand(s_out)
        drop_point(v)
        drop_point(w)
    else:
        v, w = payload
        joining = outs[v][0]
        pairs = list(zip(list(ins[v]), list(outs[w])))
        drop_point(v)
        drop_point(w)
        drop_strand(joining)
        for s_j, t_j in pairs:
            retarget(s_j, st[t_j], t_j)
            drop_strand(t_j)
    return pc, sc, sf, st, ins, outs


def reduce_with_log(d: StrandDiagram, rng=None):
    """Reduce to the unique irreducible form, logging each step's type.

    Redexes are picked lowest-canonical-point first with type 0 before 1
    before 2; pass `rng` to randomize the choice instead (the result is the
    same diagram either way, which the test suite checks).
    """
    log = []
    while True:
        redexes = find_redexes(d)
        if not redexes:
            return d, log
        if rng is None:
            order = canonical_order(d)
            redexes.sort(key=lambda r: (r[0], order[r[1]]))
            chosen = redexes[0]
        else:
            chosen = redexes[rng.randrange(len(redexes))]
        log.append(chosen[0])
        pc, sc, sf, st, ins, outs = apply_redex(d, chosen)
        d = StrandDiagram(pc, sc, sf, st, ins, outs, d.sources, d.sinks)


def reduce(d: StrandDiagram, rng=None) -> StrandDiagram:
    return reduce_with_log(d, rng)[0]


def is_reduced(d: StrandDiagram) -> bool:
    return not find_redexes(d)


def equal(a: StrandDiagram, b: StrandDiagram) -> bool:
    """Equality of the represented groupoid elements."""
    if a.domain() != b.domain() or a.range() != b.range():
        return False
    return canonical_key(reduce(a)) == canonical_key(reduce(b))


def is_group_element(d: StrandDiagram, base) -> bool:
    return d.domain() == tuple(base) == d.range()


# ---------------------------------------------------------------------------
# cutting a reduced diagram back into a forest pair

def to_forest_pair(g: ShiftGraph, d: StrandDiagram) -> ForestPair:
    """Cut a reduced diagram with equal domain and range into its forest pair.

    In a reduced diagram no strand runs from a merge to a split, so the
    splits form the domain forest, the merges form the range forest, and the
    strands between the two layers are the glued leaves.  Leaves are listed
    in the planar (slot-lexicographic) order of the domain forest.
    """
    if d.domain() != d.range():
        raise SignatureMismatch("domain and range differ; not a group element")
    if not is_reduced(d):
        raise ValueError("diagram is not reduced; reduce() it first")
    base = d.domain()

    glue_domain = {}

    def down(strand, word):
        q = d.strand_to[strand]
        if len(d.out_slots[q]) >= 2 and len(d.in_slots[q]) == 1:
            color = d.point_color[q]
            for s, e in zip(d.out_slots[q], g.out_order[color]):
                down(s, word.child(e))
        else:
            glue_domain[strand] = word

    glue_range = {}

    def up(strand, word):
        p = d.strand_from[strand]
        if len(d.in_slots[p]) >= 2 and len(d.out_slots[p]) == 1:
            color = d.point_color[p]
            for s, e in zip(d.in_slots[p], g.out_order[color]):
                up(s, word.child(e))
        else:
            glue_range[strand] = word

    for i, src in enumerate(d.sources):
        down(d.out_slots[src][0], PathWord(i))
    for i, snk in enumerate(d.sinks):
        up(d.in_slots[snk][0], PathWord(i))
    assert set(glue_domain) == set(glue_range), "cut layers disagree"

    def slot_key(w):
        eidx = []
        at = base[w.root]
        for e in w.edges:
            eidx.append(g.out_order[at].index(e))
            at = g.term(e)
        return (w.root, tuple(eidx))

    strands = sorted(glue_domain, key=lambda s: slot_key(glue_domain[s]))
    return ForestPair(
        tuple(glue_domain[s] for s in strands),
        tuple(glue_range[s] for s in strands),
        tuple(base),
    )


# ---------------------------------------------------------------------------
# slicing into generators

def decompose_generators(d: StrandDiagram) -> list:
    """Slice reduce(d) into split diagrams, a permutation diagram and merge diagrams.

    The composition of the returned diagrams reduces back to reduce(d).  The
    permutation layer is omitted when it is the identity, unless it is the
    only layer.
    """
    r = reduce(d)
    top = [d_out for p in r.sources for d_out in r.out_slots[p]]

    def is_split(q):
        return len(r.out_slots[q]) >= 2 and len(r.in_slots[q]) == 1

    def is_merge(q):
        return len(r.in_slots[q]) >= 2 and len(r.out_slots[q]) == 1

    split_layers = []
    frontier = list(top)
    while True:
        splits = {}
        for j, s in enumerate(frontier):
            q = r.strand_to[s]
            if is_split(q):
                splits[j] = q
        if not splits:
            break
        colors = [r.strand_color[s] for s in frontier]
        split_layers.append(
            multi_split_diagram(
                colors,
                {j: tuple(r.strand_color[t] for t in r.out_slots[q]) for j, q in splits.items()},
            )
        )
        nxt = []
        for j, s in enumerate(frontier):
            if j in splits:
                nxt.extend(r.out_slots[splits[j]])
            else:
                nxt.append(s)
        frontier = nxt

    merge_layers = []
    bottom = [r.in_slots[p][0] for p in r.sinks]
    mfrontier = list(bottom)
    while True:
        merges = {}
        for j, s in enumerate(mfrontier):
            q = r.strand_from[s]
            if is_merge(q):
                merges[j] = q
        if not merges:
            break
        colors = [r.strand_color[s] for s in mfrontier]
        merge_layers.append(
            invert(
                multi_split_diagram(
                    colors,
                    {j: tuple(r.strand_color[t] for t in r.in_slots[q]) for j, q in merges.items()},
                )
            )
        )
        nxt = []
        for j, s in enumerate(mfrontier):
            if j in merges:
                nxt.extend(r.in_slots[merges[j]])
            else:
                nxt.append(s)
        mfrontier = nxt
    merge_layers.reverse()

    # Both frontiers now hold exactly the glue strands; the middle layer
    # permutes the split frontier onto the merge frontier.
    assert set(frontier) == set(mfrontier)
    mapping = [mfrontier.index(s) for s in frontier]
    pieces = list(split_layers)
    if mapping != list(range(len(mapping))) or not (split_layers or merge_layers):
        pieces.append(permutation_diagram([r.strand_color[s] for s in frontier], mapping))
    pieces.extend(merge_layers)
    return pieces
