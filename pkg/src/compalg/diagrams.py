"""Trivalent diagrams with boundary, and exact linear combinations of them.

A diagram is a perfect matching on endpoint slots: every boundary pin and
every vertex slot is covered by exactly one edge.  Vertices carry a cyclic
order on their three slots; an odd permutation of the slots flips the sign of
the diagram, rotations are free.  Crossings are not data: a diagram is an
abstract graph, not a planar picture.

Canonical forms: `canonicalize` returns stable bytes identifying the diagram
up to isomorphism (fixing the boundary pointwise), together with the sign
relating the input to the canonical representative.  Diagrams that are
isomorphic to minus themselves (anything with a vertex self-loop, for
instance) get sign 0; they are dropped from linear combinations, which makes
the "self-loop equals zero" rule automatic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import count

from .scalars import DeltaPoly

BOUND = "b"
VERT = "v"


class MalformedDiagram(ValueError):
    pass


def _pin(i):
    return (BOUND, i)


def _slot(v, s):
    return (VERT, v, s)


class Diagram:
    """Immutable trivalent diagram.

    vertices: frozenset of integer ids (each has slots 0, 1, 2)
    edges: frozenset of frozensets of two endpoints; endpoint = ("b", i) or
    ("v", id, slot)
    free_loops: number of closed loops with no vertices on them
    """

    __slots__ = ("n_boundary", "vertices", "edges", "free_loops", "_hash")

    def __init__(self, n_boundary, vertices, edges, free_loops=0):
        object.__setattr__(self, "n_boundary", int(n_boundary))
        object.__setattr__(self, "vertices", frozenset(vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in edges))
        object.__setattr__(self, "free_loops", int(free_loops))
        object.__setattr__(self, "_hash", None)
        self._validate()

    def __setattr__(self, *_):
        raise AttributeError("Diagram is immutable")

    def _validate(self):
        if self.n_boundary < 0 or self.free_loops < 0:
            raise MalformedDiagram("negative counts")
        need = {_pin(i) for i in range(self.n_boundary)}
        for v in self.vertices:
            for s in range(3):
                need.add(_slot(v, s))
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise MalformedDiagram(f"edge {set(e)} does not join two distinct endpoints")
            for ep in e:
                if ep not in need:
                    raise MalformedDiagram(f"unknown endpoint {ep}")
                if ep in seen:
                    raise MalformedDiagram(f"endpoint {ep} used twice")
                seen.add(ep)
        if seen != need:
            raise MalformedDiagram(f"uncovered endpoints: {sorted(need - seen)}")

    def __eq__(self, other):
        return (
            isinstance(other, Diagram)
            and self.n_boundary == other.n_boundary
            and self.free_loops == other.free_loops
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.n_boundary, self.free_loops, self.vertices, self.edges))
            )
        return self._hash

    @property
    def n_vertices(self):
        return len(self.vertices)

    def partner(self, endpoint):
        for e in self.edges:
            if endpoint in e:
                (other,) = e - {endpoint}
                return other
        raise KeyError(endpoint)

    def partner_map(self):
        m = {}
        for e in self.edges:
            a, b = sorted(e)
            m[a] = b
            m[b] = a
        return m

    def __repr__(self):
        return (
            f"Diagram(boundary={self.n_boundary}, vertices={sorted(self.vertices)}, "
            f"edges={sorted(tuple(sorted(e)) for e in self.edges)}, loops={self.free_loops})"
        )

    # -- serialization ----------------------------------------------------

    def to_json(self):
        order = {v: i for i, v in enumerate(sorted(self.vertices))}

        def ep_json(ep):
            if ep[0] == BOUND:
                return ["b", ep[1]]
            return ["v", order[ep[1]], ep[2]]

        pm = self.partner_map()
        vertices = [
            [ep_json(pm[_slot(v, s)]) for s in range(3)] for v in sorted(self.vertices)
        ]
        edges = sorted(sorted([ep_json(a), ep_json(b)]) for a, b in map(sorted, self.edges))
        return {
            "n_boundary": self.n_boundary,
            "vertices": vertices,
            "edges": edges,
            "free_loops": self.free_loops,
        }

    @classmethod
    def from_json(cls, data):
        try:
            n_boundary = data["n_boundary"]
            raw_edges = data["edges"]
            free_loops = data.get("free_loops", 0)
        except (TypeError, KeyError) as exc:
            raise MalformedDiagram(f"missing field: {exc}")

        def ep_parse(ep):
            if not isinstance(ep, (list, tuple)) or not ep:
                raise MalformedDiagram(f"bad endpoint {ep!r}")
            if ep[0] == "b" and len(ep) == 2:
                return _pin(int(ep[1]))
            if ep[0] == "v" and len(ep) == 3:
                return _slot(int(ep[1]), int(ep[2]))
            raise MalformedDiagram(f"bad endpoint {ep!r}")

        edges = [frozenset({ep_parse(a), ep_parse(b)}) for a, b in raw_edges]
        vertices = {ep[1] for e in edges for ep in e if ep[0] == VERT}
        d = cls(n_boundary, vertices, edges, free_loops)
        if "vertices" in data:
            pm = d.partner_map()
            order = sorted(vertices)
            if len(data["vertices"]) != len(order):
                raise MalformedDiagram("vertex adjacency list has wrong length")
            for idx, slots in zip(order, data["vertices"]):
                for s, far in enumerate(slots):
                    if pm[_slot(idx, s)] != ep_parse(far):
                        raise MalformedDiagram(
                            f"vertex list disagrees with edges at vertex {idx} slot {s}"
                        )
        return d

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text):
        return cls.from_json(json.loads(text))


# -- small builders -----------------------------------------------------------


def empty_diagram():
    return Diagram(0, (), ())


def loop_diagram(k=1):
    return Diagram(0, (), (), free_loops=k)


def edge_diagram():
    return Diagram(2, (), [(_pin(0), _pin(1))])


def vertex_diagram():
    """One vertex, slot i wired to boundary pin i."""
    return Diagram(3, [0], [(_slot(0, s), _pin(s)) for s in range(3)])


def pairing_diagram(n, pairs):
    return Diagram(n, (), [(_pin(i), _pin(j)) for i, j in pairs])


def cycle_diagram(k):
    """The k-cycle redex: vertices 0..k-1 in a ring, pin i on vertex i.

    Slot convention per vertex: slot 0 to the pin, slot 1 forward around the
    ring, slot 2 backward.  k = 2 gives the bubble (a double edge), k = 1
    would be a self-loop.
    """
    if k == 1:
        return Diagram(1, [0], [(_slot(0, 0), _pin(0)), (_slot(0, 1), _slot(0, 2))])
    edges = []
    for i in range(k):
        edges.append((_slot(i, 0), _pin(i)))
        edges.append((_slot(i, 1), _slot((i + 1) % k, 2)))
    return Diagram(k, range(k), edges)


# -- surgery -------------------------------------------------------------------


def relabel_vertices(d, mapping):
    def m(ep):
        return _slot(mapping[ep[1]], ep[2]) if ep[0] == VERT else ep

    return Diagram(
        d.n_boundary,
        [mapping[v] for v in d.vertices],
        [(m(a), m(b)) for a, b in map(tuple, d.edges)],
        d.free_loops,
    )


def permute_boundary(d, perm):
    """Pin i of the input becomes pin perm[i] of the output."""
    if sorted(perm) != list(range(d.n_boundary)):
        raise ValueError("not a permutation of the boundary")

    def m(ep):
        return _pin(perm[ep[1]]) if ep[0] == BOUND else ep

    return Diagram(d.n_boundary, d.vertices, [(m(a), m(b)) for a, b in map(tuple, d.edges)], d.free_loops)


def rotate_boundary(d, shift=1):
    """Quarter-turn style relabeling: pin i becomes pin (i + shift) mod n."""
    n = d.n_boundary
    return permute_boundary(d, [(i + shift) % n for i in range(n)])


def disjoint_union(d1, d2):
    """d2's pins are appended after d1's; d2's vertices get fresh ids."""
    offset = 1 + max(d1.vertices, default=-1) - min(d2.vertices, default=0)
    mapping = {v: v + offset for v in d2.vertices}

    def m(ep):
        if ep[0] == BOUND:
            return _pin(ep[1] + d1.n_boundary)
        return _slot(mapping[ep[1]], ep[2])

    edges = list(map(tuple, d1.edges)) + [(m(a), m(b)) for a, b in map(tuple, d2.edges)]
    return Diagram(
        d1.n_boundary + d2.n_boundary,
        list(d1.vertices) + list(mapping.values()),
        edges,
        d1.free_loops + d2.free_loops,
    )


def contract_pins(d, pairs):
    """Splice the boundary pins in each (i, j) pair together, deleting them.

    Chains of pin-to-pin edges collapse transitively; a cycle of spliced pins
    becomes a free loop.  Remaining pins are renumbered in increasing order.
    """
    pins = set()
    for i, j in pairs:
        if i == j:
            raise ValueError("cannot contract a pin with itself")
        for t in (i, j):
            if not (0 <= t < d.n_boundary) or t in pins:
                raise ValueError(f"bad or repeated pin {t}")
            pins.add(t)
    mate = {}
    for i, j in pairs:
        mate[_pin(i)] = _pin(j)
        mate[_pin(j)] = _pin(i)
    pm = d.partner_map()
    loops = d.free_loops
    contracted = set(mate)
    new_edges = [
        (a, b)
        for a, b in map(tuple, d.edges)
        if a not in contracted and b not in contracted
    ]
    # open chains: walk partner -> mate -> partner from a surviving endpoint
    # until another surviving endpoint; every spliced pin en route is used up
    used = set()
    ends_done = set()
    for e in d.edges:
        for start in tuple(e):
            if start in contracted or start in ends_done:
                continue
            cur = pm[start]
            if cur not in contracted:
                continue
            while cur in contracted:
                used.add(cur)
                cur = mate[cur]
                used.add(cur)
                cur = pm[cur]
            new_edges.append((start, cur))
            ends_done.add(start)
            ends_done.add(cur)
    # what remains of the spliced pins forms closed cycles: count them
    remaining = contracted - used
    while remaining:
        p0 = remaining.pop()
        cur = p0
        while True:
            q = pm[cur]
            remaining.discard(q)
            if q == p0:
                break
            cur = mate[q]
            if cur == p0:
                break
            remaining.discard(cur)
        loops += 1
    survivors = [i for i in range(d.n_boundary) if i not in pins]
    renumber = {old: new for new, old in enumerate(survivors)}

    def m(ep):
        return _pin(renumber[ep[1]]) if ep[0] == BOUND else ep

    return Diagram(
        len(survivors), d.vertices, [(m(a), m(b)) for a, b in new_edges], loops
    )


def glue(d1, d2, pairs):
    """Disjoint union, then splice pin a of d1 to pin b of d2 for (a, b) in
    pairs.  Surviving pins keep d1-then-d2 order."""
    u = disjoint_union(d1, d2)
    return contract_pins(u, [(a, d1.n_boundary + b) for a, b in pairs])


def random_diagram(rng, n_boundary=None, max_vertices=8, allow_loops=True):
    """A random diagram: uniform perfect matching on pins and slots."""
    if n_boundary is None:
        n_boundary = rng.choice([0, 1, 2, 3, 4])
    for _ in range(100):
        nv = rng.randint(0, max_vertices)
        if (3 * nv + n_boundary) % 2 == 0:
            break
    else:
        nv = n_boundary % 2  # 3v + b even <=> v + b even
    endpoints = [_pin(i) for i in range(n_boundary)]
    for v in range(nv):
        endpoints.extend(_slot(v, s) for s in range(3))
    rng.shuffle(endpoints)
    edges = [(endpoints[i], endpoints[i + 1]) for i in range(0, len(endpoints), 2)]
    loops = rng.choice([0, 0, 0, 1]) if allow_loops else 0
    return Diagram(n_boundary, range(nv), edges, loops)


# -- canonical forms -----------------------------------------------------------


class CanonicalDiagram:
    """Stable identity of a diagram: canonical bytes, the sign relating the
    input to the canonical representative, and that representative."""

    __slots__ = ("key", "sign", "rep")

    def __init__(self, key, sign, rep):
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, *_):
        raise AttributeError("CanonicalDiagram is immutable")

    def __eq__(self, other):
        return isinstance(other, CanonicalDiagram) and self.key == other.key and self.sign == other.sign

    def __hash__(self):
        return hash((self.key, self.sign))

    def __repr__(self):
        return f"CanonicalDiagram(sign={self.sign}, key={self.key!r})"


def _parity(perm):
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def _refine(colors, adj):
    """Stable partition refinement: color by (old color, multiset of far colors)."""
    while True:
        keys = {}
        for v, far in adj.items():
            far_colors = tuple(sorted(("p", f[1]) if f[0] == BOUND else ("c", colors[f[1]]) for f in far))
            keys[v] = (colors[v], far_colors)
        order = sorted(set(keys.values()))
        new = {v: order.index(k) for v, k in keys.items()}
        if new == colors:
            return colors
        colors = new


def _component_labelings(verts, adj):
    """All canonical label orders from individualization-refinement."""
    init = {v: 0 for v in verts}
    init = _refine(init, adj)
    results = []

    def rec(colors):
        classes = {}
        for v in sorted(verts):
            classes.setdefault(colors[v], []).append(v)
        for c in sorted(classes):
            cell = classes[c]
            if len(cell) > 1:
                for v in cell:
                    branched = dict(colors)
                    branched[v] = -1  # provisional top color, re-normalized by refine
                    rec(_refine(branched, adj))
                return
        order = sorted(verts, key=lambda v: colors[v])
        results.append({v: i for i, v in enumerate(order)})

    rec(init)
    return results


def _labeled_code(verts, pm, labeling):
    """Edge code and sign for one complete labeling of a component.

    Returns (code, sign) where code is a sorted tuple of endpoint-pair codes
    and sign is 0 when the component contains a vertex self-loop.
    """
    # position assignment per vertex
    position = {}
    sign_zero = False
    parity_sign = 1
    pair_groups = {}
    for v in sorted(verts, key=lambda t: labeling[t]):
        darts = [pm[_slot(v, s)] for s in range(3)]

        def far_key(far):
            return (0, far[1]) if far[0] == BOUND else (1, labeling[far[1]])

        keys = [far_key(f) for f in darts]
        blocks = {}
        for s in range(3):
            blocks.setdefault(keys[s], []).append(s)
        pos = {}
        nxt = 0
        for k in sorted(blocks):
            block = blocks[k]
            if len(block) == 1:
                pos[block[0]] = nxt
                nxt += 1
            else:
                far = darts[block[0]]
                if far[0] == VERT and far[1] == v:
                    # self-loop: the two assignments differ by a transposition
                    sign_zero = True
                    for s in block:
                        pos[s] = nxt
                        nxt += 1
                else:
                    w = far[1]
                    pair_groups.setdefault(frozenset({v, w}), {})[v] = (block, list(range(nxt, nxt + len(block))))
                    nxt += len(block)
        position[v] = pos
    # multi-edge groups: order the parallel edges by raw slot on the side with
    # the lower label, then hand out positions on both sides in that order.
    # This pairs ascending positions with ascending positions, which is the
    # byte-minimal realization; alternative choices differ by simultaneous
    # even permutations, so the sign is well defined.
    for key_pair, sides in pair_groups.items():
        v, w = sorted(key_pair, key=lambda t: labeling[t])
        vblock, vpos = sides[v]
        _, wpos = sides[w]
        for i, s in enumerate(sorted(vblock)):
            position[v][s] = vpos[i]
            far = pm[_slot(v, s)]
            position[w][far[2]] = wpos[i]
    for v in verts:
        perm = [position[v][s] for s in range(3)]
        parity_sign *= _parity(perm)

    def ep_code(ep):
        if ep[0] == BOUND:
            return (0, ep[1])
        return (1, labeling[ep[1]], position[ep[1]][ep[2]])

    code = []
    done = set()
    for v in verts:
        for s in range(3):
            ep = _slot(v, s)
            if ep in done:
                continue
            far = pm[ep]
            done.add(ep)
            done.add(far)
            code.append(tuple(sorted((ep_code(ep), ep_code(far)))))
    code.sort()
    return tuple(code), (0 if sign_zero else parity_sign)


def _canonicalize_component(verts, pm):
    adj = {v: [pm[_slot(v, s)] for s in range(3)] for v in verts}
    best_code = None
    best_signs = set()
    for labeling in _component_labelings(verts, adj):
        code, sign = _labeled_code(verts, pm, labeling)
        if best_code is None or code < best_code:
            best_code, best_signs = code, {sign}
        elif code == best_code:
            best_signs.add(sign)
    if 0 in best_signs or len(best_signs) > 1:
        sign = 0
    else:
        (sign,) = best_signs
    return best_code, sign


_canon_cache = {}


def canonicalize(d):
    """Canonical bytes, sign, and representative of a diagram.

    The sign satisfies: input diagram = sign * representative (as tensors),
    and is 0 exactly when the diagram is isomorphic to its own negative.
    """
    cached = _canon_cache.get(d)
    if cached is not None:
        return cached
    pm = d.partner_map()
    # split into vertex components
    parent = {v: v for v in d.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in d.edges:
        a, b = tuple(e)
        if a[0] == VERT and b[0] == VERT:
            ra, rb = find(a[1]), find(b[1])
            if ra != rb:
                parent[ra] = rb
    comps = {}
    for v in d.vertices:
        comps.setdefault(find(v), set()).add(v)
    bb_edges = sorted(
        tuple(sorted(((0, a[1]), (0, b[1]))))
        for a, b in map(tuple, d.edges)
        if a[0] == BOUND and b[0] == BOUND
    )
    pieces = []
    total_sign = 1
    for root in comps:
        code, sign = _canonicalize_component(comps[root], pm)
        if sign == 0:
            total_sign = 0
        total_sign *= sign
        pieces.append(code)
    pieces.sort()
    # assemble global representative with vertex ids offset per component
    rep_edges = [((BOUND, i), (BOUND, j)) for (_, i), (_, j) in bb_edges]
    offset = 0
    global_code = list(bb_edges)
    for code in pieces:
        size = len({c[1] for pair in code for c in pair if c[0] == 1})

        def shift(c):
            return (1, c[1] + offset, c[2]) if c[0] == 1 else c

        for pa, pb in code:
            ga, gb = shift(pa), shift(pb)
            global_code.append(tuple(sorted((ga, gb))))
            rep_edges.append(
                (
                    _pin(ga[1]) if ga[0] == 0 else _slot(ga[1], ga[2]),
                    _pin(gb[1]) if gb[0] == 0 else _slot(gb[1], gb[2]),
                )
            )
        offset += size
    global_code.sort()
    key = repr((d.n_boundary, d.free_loops, offset, tuple(global_code))).encode("ascii")
    rep = Diagram(d.n_boundary, range(offset), rep_edges, d.free_loops)
    result = CanonicalDiagram(key, total_sign, rep)
    _canon_cache[d] = result
    return result


# -- linear combinations -------------------------------------------------------


class LinearCombo:
    """Finite linear combination of diagrams with DeltaPoly coefficients.

    Terms are keyed by canonical bytes; antisymmetry signs and zero diagrams
    are handled on insertion.  Instances are immutable by convention: all
    arithmetic returns new objects.
    """

    __slots__ = ("n_boundary", "terms")

    def __init__(self, n_boundary, terms=None):
        object.__setattr__(self, "n_boundary", n_boundary)
        object.__setattr__(self, "terms", dict(terms or {}))

    def __setattr__(self, *_):
        raise AttributeError("LinearCombo is immutable; use arithmetic ops")

    @classmethod
    def zero(cls, n_boundary):
        return cls(n_boundary)

    @classmethod
    def from_terms(cls, n_boundary, pairs):
        acc = {}
        for diagram, coeff in pairs:
            _accumulate(acc, n_boundary, diagram, coeff)
        return cls(n_boundary, _strip(acc))

    @classmethod
    def of(cls, diagram, coeff=1):
        return cls.from_terms(diagram.n_boundary, [(diagram, coeff)])

    def items(self):
        """(representative Diagram, DeltaPoly) pairs in canonical key order."""
        return [(rep, poly) for _, (rep, poly) in sorted(self.terms.items())]

    def coefficient(self, diagram):
        """Coefficient of a diagram (sign-adjusted), as a DeltaPoly."""
        c = canonicalize(diagram)
        if c.sign == 0 or c.key not in self.terms:
            return DeltaPoly.zero()
        return self.terms[c.key][1] * c.sign

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _binop(self, other, flip):
        if not isinstance(other, LinearCombo):
            return NotImplemented
        if other.n_boundary != self.n_boundary:
            raise ValueError("boundary mismatch")
        acc = {k: (rep, poly) for k, (rep, poly) in self.terms.items()}
        for k, (rep, poly) in other.terms.items():
            cur = acc.get(k)
            newpoly = (cur[1] if cur else DeltaPoly.zero()) + (-poly if flip else poly)
            acc[k] = (rep, newpoly)
        return LinearCombo(self.n_boundary, _strip(acc))

    def __add__(self, other):
        return self._binop(other, False)

    def __sub__(self, other):
        return self._binop(other, True)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        s = scalar if isinstance(scalar, DeltaPoly) else DeltaPoly.const(scalar)
        if s.is_zero():
            return LinearCombo(self.n_boundary)
        return LinearCombo(
            self.n_boundary, {k: (rep, poly * s) for k, (rep, poly) in self.terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinearCombo):
            return NotImplemented
        return self.n_boundary == other.n_boundary and {
            k: p for k, (_, p) in self.terms.items()
        } == {k: p for k, (_, p) in other.terms.items()}

    def __hash__(self):
        return hash((self.n_boundary, frozenset((k, p) for k, (_, p) in self.terms.items())))

    def map_diagrams(self, f):
        """Apply a diagram-to-diagram map to every term (e.g. a boundary
        relabeling) and re-canonicalize."""
        out = {}
        nb = None
        for rep, poly in self.items():
            nd = f(rep)
            nb = nd.n_boundary
            _accumulate(out, nb, nd, poly)
        if nb is None:
            nb = self.n_boundary
        return LinearCombo(nb, _strip(out))

    def subs_delta(self, value):
        """Evaluate every coefficient at a numeric delta."""
        out = {}
        for k, (rep, poly) in self.terms.items():
            v = poly(value)
            if v:
                out[k] = (rep, DeltaPoly.const(v))
        return LinearCombo(self.n_boundary, out)

    def map_coefficients(self, f):
        """Apply a polynomial-to-polynomial map to every coefficient."""
        out = {}
        for k, (rep, poly) in self.terms.items():
            q = f(poly)
            if not q.is_zero():
                out[k] = (rep, q)
        return LinearCombo(self.n_boundary, out)

    def __repr__(self):
        if not self.terms:
            return "LinearCombo(0)"
        bits = [f"({poly!r})*{rep!r}" for rep, poly in self.items()]
        return "LinearCombo[" + " + ".join(bits) + "]"


def _accumulate(acc, n_boundary, diagram, coeff):
    if diagram.n_boundary != n_boundary:
        raise ValueError("boundary mismatch in linear combination")
    poly = coeff if isinstance(coeff, DeltaPoly) else DeltaPoly.const(coeff)
    if poly.is_zero():
        return
    c = canonicalize(diagram)
    if c.sign == 0:
        return
    cur = acc.get(c.key)
    total = (cur[1] if cur else DeltaPoly.zero()) + poly * c.sign
    acc[c.key] = (c.rep, total)


def _strip(acc):
    return {k: (rep, poly) for k, (rep, poly) in acc.items() if not poly.is_zero()}


def diagram_from_json(data):
    return Diagram.from_json(data)


def diagram_to_json(d):
    return d.to_json()


def combo_to_json(combo):
    """Stable serialization of a LinearCombo: terms sorted by canonical key."""
    terms = sorted(combo.terms.items(), key=lambda kv: kv[0])
    return {
        "n_boundary": combo.n_boundary,
        "terms": [[rep.to_json(), poly.to_json()] for _, (rep, poly) in terms],
    }


def combo_from_json(data):
    return LinearCombo.from_terms(
        data["n_boundary"],
        [(Diagram.from_json(d), DeltaPoly.from_json(p)) for d, p in data["terms"]],
    )
