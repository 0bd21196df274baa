"""The loops semigroup: finitely presented stages and their word problem.

Loops are generators L(c, n) for a color c and winding n; every vertex whose
out-star is not a single self-loop contributes, per winding, one relation
equating the sum of its ordered children's loops with its own loop.  Stage N
keeps the generators with winding <= N; relations never mix windings, so the
stages filter the full semigroup.

The word problem is decided through the free commutative monoid: both sides
of every relation are nonzero, so the monoid congruence restricted to nonzero
vectors is the semigroup congruence.  Congruence equality is decided by
completing the pure-difference binomial rewriting system (Buchberger on
binomials under a graded lexicographic order) and comparing normal forms; an
independent bidirectional search over relation applications cross-checks it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import LimitExceeded
from .graphs import ShiftGraph

DEFAULT_MAX_RULES = 20000


@dataclass
class Presentation:
    graph: ShiftGraph
    max_winding: int
    gens: tuple  # ordered ((color, n), ...), grading ties broken by (n, vertex position)
    relations: tuple  # ((u, v), ...) exponent-vector pairs, both sides nonzero
    relation_info: tuple = ()  # (vertex, winding) per relation
    _rules: list = field(default=None, repr=False, compare=False)

    def index(self, color, n) -> int:
        return self.gens.index((color, n))

    def vector(self, loops: dict) -> tuple:
        """Exponent vector of a loop multiset {(color, winding): count}."""
        vec = [0] * len(self.gens)
        for (color, n), count in loops.items():
            if count < 0:
                raise ValueError("negative loop count")
            if count:
                vec[self.index(color, n)] += count
        return tuple(vec)

    def loops(self, vec) -> dict:
        return {self.gens[i]: x for i, x in enumerate(vec) if x}


def presentation_from_graph(g: ShiftGraph, n_max: int) -> Presentation:
    """Stage-N presentation: one generator and at most one relation per (color, winding).

    Vertices whose out-star is a single self-loop would contribute the trivial
    relation L(c,n) = L(c,n); those are dropped.
    """
    if n_max < 1:
        raise ValueError("the filtration starts at winding 1")
    gens = tuple((c, n) for n in range(1, n_max + 1) for c in g.vertices)
    pos = {cn: i for i, cn in enumerate(gens)}
    relations = []
    info = []
    for v in g.vertices:
        if g.is_isolated_color(v):
            continue
        kids = g.child_colors(v)
        for n in range(1, n_max + 1):
            u = [0] * len(gens)
            for c in kids:
                u[pos[(c, n)]] += 1
            w = [0] * len(gens)
            w[pos[(v, n)]] = 1
            relations.append((tuple(u), tuple(w)))
            info.append((v, n))
    return Presentation(g, n_max, gens, tuple(relations), tuple(info))


def max_winding(loops: dict) -> int:
    """Largest winding with a positive count; loop parts are never empty here."""
    windings = [n for (_, n), count in loops.items() if count > 0]
    if not windings:
        raise ValueError("empty loop multiset has no winding")
    return max(windings)


# ---------------------------------------------------------------------------
# binomial completion

def _key(m: tuple):
    return (sum(m), m)


def _orient(a: tuple, b: tuple):
    if _key(a) > _key(b):
        return (a, b)
    if _key(b) > _key(a):
        return (b, a)
    return None


def _divides(u: tuple, m: tuple) -> bool:
    return all(x <= y for x, y in zip(u, m))


def _normal_form(m: tuple, rules) -> tuple:
    changed = True
    while changed:
        changed = False
        for u, v in rules:
            if _divides(u, m):
                m = tuple(x - a + b for x, a, b in zip(m, u, v))
                changed = True
    return m


def completed_rules(p: Presentation, max_rules: int = DEFAULT_MAX_RULES) -> list:
    """Confluent rewriting rules for the congruence, cached on the presentation.

    Buchberger completion stays inside pure-difference binomials: the S-pair
    of two rules at the lcm of their leads reduces to two normal forms whose
    oriented difference, when nonzero, is a new rule.  Pairs with disjoint
    lead supports resolve automatically and are skipped.
    """
    if p._rules is not None:
        return p._rules
    rules = []
    for a, b in p.relations:
        o = _orient(a, b)
        if o:
            rules.append(o)
    pending = list(itertools.combinations(range(len(rules)), 2))
    while pending:
        i, j = pending.pop()
        u1, v1 = rules[i]
        u2, v2 = rules[j]
        lcm = tuple(max(a, b) for a, b in zip(u1, u2))
        if all(a + b == c for a, b, c in zip(u1, u2, lcm)):
            continue  # disjoint leads resolve trivially
        s1 = _normal_form(tuple(c - a + b for c, a, b in zip(lcm, u1, v1)), rules)
        s2 = _normal_form(tuple(c - a + b for c, a, b in zip(lcm, u2, v2)), rules)
        if s1 == s2:
            continue
        o = _orient(s1, s2)
        assert o is not None
        rules.append(o)
        if len(rules) > max_rules:
            raise LimitExceeded("semigroup-completion", f"more than {max_rules} rules")
        pending.extend((t, len(rules) - 1) for t in range(len(rules) - 1))
    p._rules = rules
    return rules


def decide_equal(a: tuple, b: tuple, p: Presentation, max_rules: int = DEFAULT_MAX_RULES) -> bool:
    """Whether two nonzero vectors are congruent in stage max_winding."""
    for vec in (a, b):
        if len(vec) != len(p.gens):
            raise ValueError("vector length does not match the presentation")
        if not any(vec):
            raise ValueError("the semigroup has no identity; vectors must be nonzero")
    rules = completed_rules(p, max_rules)
    return _normal_form(a, rules) == _normal_form(b, rules)


# ---------------------------------------------------------------------------
# independent oracle

def bfs_equal(a: tuple, b: tuple, p: Presentation, cap: int) -> str:
    """Bidirectional search applying relations both ways, degree-capped.

    Returns "equal" (always sound) or "not-equal-within-cap" (sound only as a
    statement about derivations whose intermediate degrees stay <= cap).
    """
    if cap < max(sum(a), sum(b)):
        raise ValueError("cap below the degree of an input")
    if a == b:
        return "equal"
    steps = []
    for u, v in p.relations:
        steps.append((u, v))
        steps.append((v, u))

    def neighbors(m):
        for u, v in steps:
            if _divides(u, m):
                n = tuple(x - c + d for x, c, d in zip(m, u, v))
                if sum(n) <= cap:
                    yield n

    front_a, front_b = {a}, {b}
    seen_a, seen_b = {a}, {b}
    while front_a and front_b:
        if len(front_a) > len(front_b):
            front_a, front_b = front_b, front_a
            seen_a, seen_b = seen_b, seen_a
        nxt = set()
        for m in front_a:
            for n in neighbors(m):
                if n in seen_b:
                    return "equal"
                if n not in seen_a:
                    seen_a.add(n)
                    nxt.add(n)
        front_a = nxt
    return "not-equal-within-cap"


def bfs_path(a: tuple, b: tuple, p: Presentation, cap: int):
    """A relation-application path from a to b within the degree cap, or None.

    Each step is (relation index, +1 | -1): +1 rewrites children-sum to parent
    (a type 3 reduction on the diagram side), -1 the inverse expansion.
    """
    if cap < max(sum(a), sum(b)):
        raise ValueError("cap below the degree of an input")
    if a == b:
        return []
    parents = {a: None}
    frontier = [a]
    while frontier:
        nxt = []
        for m in frontier:
            for ridx, (u, v) in enumerate(p.relations):
                for lhs, rhs, sign in ((u, v, +1), (v, u, -1)):
                    if _divides(lhs, m):
                        n = tuple(x - c + d for x, c, d in zip(m, lhs, rhs))
                        if sum(n) <= cap and n not in parents:
                            parents[n] = (m, ridx, sign)
                            if n == b:
                                path = []
                                cur = n
                                while parents[cur] is not None:
                                    prev, r, s = parents[cur]
                                    path.append((r, s))
                                    cur = prev
                                path.reverse()
                                return path
                            nxt.append(n)
        frontier = nxt
    return None


def enumerate_class(a: tuple, p: Presentation, cap: int, limit: int = 100000) -> set:
    """Every vector congruent to `a` reachable without exceeding degree `cap`.

    When the true congruence class has all degrees <= cap this is the exact
    class, which upgrades "not-equal-within-cap" to a proof of inequality.
    """
    steps = []
    for u, v in p.relations:
        steps.append((u, v))
        steps.append((v, u))
    seen = {a}
    frontier = [a]
    while frontier:
        m = frontier.pop()
        for u, v in steps:
            if _divides(u, m):
                n = tuple(x - c + d for x, c, d in zip(m, u, v))
                if sum(n) <= cap and n not in seen:
                    seen.add(n)
                    frontier.append(n)
                    if len(seen) > limit:
                        raise LimitExceeded("class-enumeration", "class too large")
    return seen


def dump_presentation(p: Presentation) -> str:
    """One relation per line, generators printed L(color,n)."""
    lines = []
    for u, v in p.relations:
        left = "+".join(
            "+".join([f"L({c},{n})"] * u[i]) for i, (c, n) in enumerate(p.gens) if u[i]
        )
        right = "+".join(
            "+".join([f"L({c},{n})"] * v[i]) for i, (c, n) in enumerate(p.gens) if v[i]
        )
        lines.append(f"{left}={right}")
    return "\n".join(lines)
