"""Cycle-rewriting engine for trivalent diagrams.

Every rule replaces a closed k-cycle of vertices (a bubble, triangle, square,
pentagon) by a linear combination of diagrams on the same k external legs,
with strictly fewer vertices.  Applying rules until no cycle of a handled
length remains therefore terminates: vertex count drops by at least two per
step, and stripping free loops multiplies the coefficient by the loop value.

Signs are transported through canonical forms.  A matched cycle fragment and
the reference cycle pattern are isomorphic rings, so their canonical keys
agree; the product of their canonical signs says whether the match is the
pattern or its negative, and the replacement is scaled accordingly.  Vertex
self-loops need no rule at all: such diagrams are isomorphic to their own
negatives, so linear combinations drop them on insertion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagrams import (
    BOUND,
    VERT,
    Diagram,
    LinearCombo,
    canonicalize,
    cycle_diagram,
    glue,
    random_diagram,
)
from .scalars import DeltaPoly


class Irreducible(Exception):
    """Raised when a closed diagram does not reduce to a scalar."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"diagram did not reduce to a scalar: {residual!r}")


class Rule:
    """Rewrite rule for the k-cycle: pattern = cycle_diagram(k), replacement
    a LinearCombo on k pins (pin i = the leg at cycle vertex i)."""

    def __init__(self, name, cycle_length, replacement):
        if replacement.n_boundary != cycle_length:
            raise ValueError("replacement boundary must match the cycle length")
        for rep, _ in replacement.items():
            if rep.n_vertices > cycle_length - 2:
                raise ValueError(
                    f"rule {name}: replacement term with {rep.n_vertices} vertices "
                    f"would break termination"
                )
        self.name = name
        self.cycle_length = cycle_length
        self.replacement = replacement
        pattern = canonicalize(cycle_diagram(cycle_length))
        self.pattern_key = pattern.key
        self.pattern_sign = pattern.sign

    @classmethod
    def from_relation(cls, name, lhs, rhs):
        """Build a rule from a relation lhs = rhs where lhs is any diagram
        shaped like a k-ring (possibly with other slot orders)."""
        k = lhs.n_vertices
        c_lhs = canonicalize(lhs)
        c_pat = canonicalize(cycle_diagram(k))
        if c_lhs.key != c_pat.key:
            raise ValueError(f"rule {name}: left side is not a {k}-cycle")
        # cycle_pattern = (pattern_sign * lhs_sign) * lhs = ... * rhs
        return cls(name, k, rhs * (c_lhs.sign * c_pat.sign))

    def __repr__(self):
        return f"Rule({self.name}, k={self.cycle_length}, {len(self.replacement)} terms)"


class RuleSet:
    """A named set of cycle rules plus the value of a free loop."""

    def __init__(self, name, loop_value, rules):
        self.name = name
        self.loop_value = (
            loop_value if isinstance(loop_value, DeltaPoly) else DeltaPoly.const(loop_value)
        )
        self.rules = {}
        for rule in rules:
            if rule.cycle_length in self.rules:
                raise ValueError(f"two rules for {rule.cycle_length}-cycles")
            self.rules[rule.cycle_length] = rule
        self.lengths = tuple(sorted(self.rules))
        self._cache = {}

    def without(self, cycle_length):
        """Copy of this rule set with one rule removed (for probes)."""
        kept = [r for k, r in self.rules.items() if k != cycle_length]
        return RuleSet(f"{self.name}-minus-{cycle_length}", self.loop_value, kept)

    def with_rule(self, rule):
        """Copy with one rule replaced (for negative controls)."""
        kept = [r for k, r in self.rules.items() if k != rule.cycle_length] + [rule]
        return RuleSet(f"{self.name}-modified", self.loop_value, kept)

    def __repr__(self):
        return f"RuleSet({self.name}, loop={self.loop_value!r}, lengths={self.lengths})"


# -- redex search ----------------------------------------------------------


def _edges_between(d):
    between = {}
    for e in d.edges:
        a, b = sorted(e)
        if a[0] == VERT and b[0] == VERT and a[1] != b[1]:
            between.setdefault(frozenset((a[1], b[1])), []).append((a, b))
    for lst in between.values():
        lst.sort()
    return between


def find_redexes(d, lengths):
    """All cycle redexes of the given lengths, deterministically ordered.

    A redex is (k, vertex tuple, edge tuple): the vertices in cyclic order
    and the specific edges joining consecutive ones.
    """
    between = _edges_between(d)
    neighbors = {v: set() for v in d.vertices}
    for pair in between:
        v, w = tuple(pair)
        neighbors[v].add(w)
        neighbors[w].add(v)
    neighbors = {v: sorted(ws) for v, ws in neighbors.items()}
    out = []
    for k in sorted(lengths):
        if k == 2:
            for pair in sorted(between, key=lambda p: tuple(sorted(p))):
                lst = between[pair]
                if len(lst) >= 2:
                    v, w = sorted(pair)
                    out.append((2, (v, w), (lst[0], lst[1])))
            continue
        found = []

        def dfs(path):
            if len(path) == k:
                if path[0] in neighbors[path[-1]] and path[1] < path[-1]:
                    found.append(tuple(path))
                return
            for w in neighbors[path[-1]]:
                if w > path[0] and w not in path:
                    dfs(path + [w])

        for v0 in sorted(d.vertices):
            dfs([v0])
        for cyc in found:
            edges = tuple(
                between[frozenset((cyc[i], cyc[(i + 1) % k]))][0] for i in range(k)
            )
            out.append((k, cyc, edges))
    return out


def find_first_redex(d, lengths):
    redexes = find_redexes(d, lengths)
    return redexes[0] if redexes else None


# -- rule application --------------------------------------------------------


def _excise(d, redex):
    """Split d into (host-with-holes, ring fragment) at a cycle redex.

    The fragment keeps the cycle vertices with their original slot orders and
    wires each external dart to a fresh pin, in cycle order.  The host gets
    matching temporary pins n..n+k-1; chords between cycle vertices become
    pin-to-pin edges of the host.
    """
    k, cyc, cyc_edges = redex
    cyc_set = set(cyc)
    cyc_edge_set = {frozenset(e) for e in cyc_edges}
    used_darts = {ep for e in cyc_edges for ep in e}
    ext_dart = []
    for v in cyc:
        ext = [(VERT, v, s) for s in range(3) if (VERT, v, s) not in used_darts]
        if len(ext) != 1:
            raise ValueError("not a simple cycle redex")
        ext_dart.append(ext[0])
    fragment = Diagram(
        k,
        cyc,
        list(cyc_edges) + [(ext_dart[i], (BOUND, i)) for i in range(k)],
    )
    n = d.n_boundary
    tmp = {ext_dart[i]: (BOUND, n + i) for i in range(k)}
    hole_edges = []
    for e in d.edges:
        if frozenset(e) in cyc_edge_set:
            continue
        a, b = tuple(e)
        a2 = tmp.get(a, a)
        b2 = tmp.get(b, b)
        for ep in (a2, b2):
            if ep[0] == VERT and ep[1] in cyc_set:
                raise AssertionError("edge still touches an excised vertex")
        hole_edges.append((a2, b2))
    holes = Diagram(n + k, [v for v in d.vertices if v not in cyc_set], hole_edges, d.free_loops)
    return holes, fragment


def apply_rule(d, rules, redex):
    """One rewrite step at the given redex.  Returns a LinearCombo."""
    k = redex[0]
    rule = rules.rules[k]
    holes, fragment = _excise(d, redex)
    c_frag = canonicalize(fragment)
    if c_frag.key != rule.pattern_key:
        raise ValueError("redex does not match the rule pattern")
    sigma = c_frag.sign * rule.pattern_sign
    n = d.n_boundary
    out = LinearCombo.zero(n)
    for term, poly in rule.replacement.items():
        glued = glue(holes, term, [(n + i, i) for i in range(k)])
        out = out + LinearCombo.of(glued, poly * sigma)
    return out


# -- normalization -----------------------------------------------------------


def normalize(x, rules):
    """Fully reduce a Diagram or LinearCombo; returns a LinearCombo.

    Deterministic: always rewrites the least redex of the canonical
    representative.  Memoized per rule set and canonical key.
    """
    combo = LinearCombo.of(x) if isinstance(x, Diagram) else x
    out = LinearCombo.zero(combo.n_boundary)
    for rep, poly in combo.items():
        out = out + poly * _nf(rep, rules)
    return out


def _nf(d, rules):
    key = canonicalize(d).key
    cached = rules._cache.get(key)
    if cached is not None:
        return cached
    if d.free_loops:
        stripped = Diagram(d.n_boundary, d.vertices, d.edges, 0)
        res = (rules.loop_value ** d.free_loops) * normalize(stripped, rules)
    else:
        redex = find_first_redex(d, rules.lengths)
        if redex is None:
            res = LinearCombo.of(d)
        else:
            res = normalize(apply_rule(d, rules, redex), rules)
    rules._cache[key] = res
    return res


def evaluate_closed(x, rules):
    """Reduce a closed diagram to its scalar value as a DeltaPoly.

    Raises Irreducible if vertices survive normalization (possible for the
    generic rules on graphs of girth above four).
    """
    nb = x.n_boundary
    if nb != 0:
        raise ValueError("evaluate_closed needs a closed diagram")
    nf = normalize(x, rules)
    if nf.is_zero():
        return DeltaPoly.zero()
    items = nf.items()
    if len(items) == 1:
        rep, poly = items[0]
        if rep.n_vertices == 0 and rep.free_loops == 0:
            return poly
    raise Irreducible(nf)


# -- confluence probing --------------------------------------------------------


@dataclass
class ProbeReport:
    trials: int
    checked: int
    mismatches: list = field(default_factory=list)

    @property
    def confluent(self):
        return not self.mismatches

    def __bool__(self):
        return self.confluent


def confluence_probe(rules, size_bound=8, trials=200, seed=0):
    """Random local-confluence search.

    For each sampled diagram, rewrite once at every available redex, fully
    normalize each reduct, and compare against the deterministic normal form.
    Any disagreement is recorded with the offending diagram.

    Sampling covers closed diagrams and boundaries up to three.  Four-leg
    diagrams are deliberately excluded: reduced four-leg combinations are
    canonical only modulo the defining four-point identity (and its leg
    permutations), which no local cycle rule can orient, so two reduction
    orders may legitimately land on representatives differing by that
    identity.  Soundness on four-leg diagrams is checked against the
    concrete tensor oracle instead (see evaluate_concrete).

    A clean report is evidence of unique normal forms; mismatches are
    reported honestly and need interpretation.  For the delta = 7 set they
    would signal a missing or wrong rule.  For the generic set they are
    expected: reduction orders can disagree by combinations that vanish at
    every admissible dimension (see generic_rules).
    """
    rng = random.Random(seed)
    checked = 0
    mismatches = []
    for _ in range(trials):
        d = random_diagram(
            rng,
            n_boundary=rng.choice([0, 1, 2, 3]),
            max_vertices=size_bound,
            allow_loops=False,
        )
        if canonicalize(d).sign == 0:
            continue
        redexes = find_redexes(d, rules.lengths)
        if not redexes:
            continue
        checked += 1
        baseline = normalize(d, rules)
        for redex in redexes:
            nf = normalize(apply_rule(d, rules, redex), rules)
            if nf != baseline:
                mismatches.append(
                    {
                        "diagram": d.to_json(),
                        "redex": [redex[0], list(redex[1])],
                        "rule": rules.rules[redex[0]].name,
                    }
                )
                break
    return ProbeReport(trials=trials, checked=checked, mismatches=mismatches)
