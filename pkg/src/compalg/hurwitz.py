"""Mechanical classification of vector product algebras by diagram rewriting.

Everything here is computed, not tabulated.  The single input is the
four-leg identity satisfied by any vector product (``fund_relation``),
together with vertex antisymmetry and the loop value, both of which are
built into the diagram layer.  Capping and gluing that one relation
produces the two-cycle, three-cycle and four-cycle reduction rules and the
crossed-tree exchange identity; comparing the square reduction with its
quarter-turn produces a residual identity every coefficient of which is
divisible by (delta - 7).  Splitting on that factor, then repeating the
game inside each branch, yields exactly the dimensions 0, 1, 3 and 7.

The derived coefficient tables are checked against frozen expected values;
any disagreement raises DerivationMismatch.  The module also packages the
rules into the two standard rule sets: the generic one (coefficients in
Q[delta]) and the delta = 7 one, which gains a five-cycle rule and
reduces every closed diagram to a rational scalar.
"""

from fractions import Fraction

from .scalars import DeltaPoly
from .diagrams import (
    BOUND,
    VERT,
    Diagram,
    LinearCombo,
    canonicalize,
    contract_pins,
    cycle_diagram,
    edge_diagram,
    glue,
    pairing_diagram,
    permute_boundary,
    rotate_boundary,
    vertex_diagram,
)
from .rewrite import Rule, RuleSet, normalize
from .linalg import rref


class DerivationMismatch(Exception):
    """The recomputed reduction differs from the frozen expected table."""


def _b(i):
    return (BOUND, i)


def _v(vid, slot):
    return (VERT, vid, slot)


# -- reference diagrams ------------------------------------------------------


def tree4(p0, p1, p2, p3):
    """Two vertices joined by an edge, legs to pins (p0,p1) and (p2,p3).

    The slot orders are part of the definition: the first vertex reads
    (p0, p1, internal), the second (internal, p2, p3).  All coefficient
    tables below are stated relative to this choice.
    """
    return Diagram(4, [0, 1], [
        (_v(0, 0), _b(p0)), (_v(0, 1), _b(p1)), (_v(0, 2), _v(1, 0)),
        (_v(1, 1), _b(p2)), (_v(1, 2), _b(p3)),
    ])


def reference_diagrams():
    """The named small diagrams every table in this module refers to.

    The ``hur.N`` labels are the contract names for these diagrams; the
    assignment is pinned (up to relabeling) by the coefficient checks in
    derive_hurwitz.
    """
    return {
        "hur.4": vertex_diagram(),
        "hur.5": tree4(0, 1, 2, 3),
        "hur.6": tree4(1, 2, 3, 0),
        "hur.7": pairing_diagram(4, [(0, 2), (1, 3)]),
        "hur.8": pairing_diagram(4, [(1, 2), (3, 0)]),
        "hur.9": pairing_diagram(4, [(0, 1), (2, 3)]),
        "hur.26": tree4(0, 2, 3, 1),
        "hur.32": cycle_diagram(4),
    }


def fund_relation():
    """The defining four-leg identity of a vector product, as a combination
    that is identically zero: hur.5 + hur.6 - 2 hur.7 + hur.8 + hur.9.

    Concretely this is the expansion of a double product into inner
    products; the tests confirm it evaluates to the zero tensor on the
    imaginary quaternions, octonions and split octonions.
    """
    ref = reference_diagrams()
    return LinearCombo.from_terms(4, [
        (ref["hur.5"], 1), (ref["hur.6"], 1), (ref["hur.7"], -2),
        (ref["hur.8"], 1), (ref["hur.9"], 1),
    ])


# -- frozen expected tables ---------------------------------------------------
#
# Coefficients are DeltaPoly lists, lowest degree first.

_EXPECTED = {
    "bubble": {"edge": DeltaPoly([1, -1])},                       # (1 - delta)
    "triangle": {"hur.4": DeltaPoly([-4, 1])},                    # (delta - 4)
    "hx": {"hur.5": DeltaPoly([1]), "hur.7": DeltaPoly([-1]),
           "hur.8": DeltaPoly([2]), "hur.9": DeltaPoly([-1])},
    "sq1": {"hur.5": DeltaPoly([6, -1]), "hur.6": DeltaPoly([-1]),
            "hur.7": DeltaPoly([-2]), "hur.8": DeltaPoly([4]),
            "hur.9": DeltaPoly([-3, 1])},
    "sq2": {"hur.5": DeltaPoly([-1]), "hur.6": DeltaPoly([6, -1]),
            "hur.7": DeltaPoly([-2]), "hur.8": DeltaPoly([-3, 1]),
            "hur.9": DeltaPoly([4])},
    # miracle / (delta - 7)
    "associativity": {"hur.5": DeltaPoly([-1]), "hur.6": DeltaPoly([1]),
                      "hur.8": DeltaPoly([-1]), "hur.9": DeltaPoly([1])},
}


# -- derivation helpers -------------------------------------------------------


def _extract_rule(name, relation, k):
    """Solve a vanishing combination for its unique k-ring term.

    The relation must contain exactly one term whose canonical form is the
    k-cycle, with constant coefficient +-1; the returned rule replaces the
    ring by minus the rest (suitably signed), and the returned combination
    is that right-hand side.
    """
    pattern = canonicalize(cycle_diagram(k))
    hits = [(rep, poly) for rep, poly in relation.items()
            if canonicalize(rep).key == pattern.key]
    if len(hits) != 1:
        raise DerivationMismatch(f"{name}: expected one {k}-ring term, found {len(hits)}")
    rep, c = hits[0]
    if c.degree != 0 or c(0) not in (1, -1):
        raise DerivationMismatch(f"{name}: ring coefficient {c!r} is not a unit")
    rhs = (relation - LinearCombo.of(rep, c)) * (-c(0))
    rule = Rule.from_relation(name, rep, rhs)
    # rule.replacement restates rhs relative to the ring as drawn
    # (cycle_diagram(k)); that is the form all tables are quoted in.
    return rule, rule.replacement


def _substitute(combo, lhs, rhs):
    """Replace every occurrence of the diagram lhs in combo by the
    combination rhs (valid when lhs = rhs is a known identity)."""
    c = combo.coefficient(lhs)
    if c.is_zero():
        return combo
    return combo - LinearCombo.of(lhs, c) + rhs * c


def _check_table(name, combo, expected, ref):
    """Compare a derived combination against a frozen {label: poly} table."""
    lookup = {canonicalize(d).key: label for label, d in ref.items()}
    lookup[canonicalize(edge_diagram()).key] = "edge"
    seen = set()
    for rep, _ in combo.items():
        label = lookup.get(canonicalize(rep).key)
        if label is None or label not in expected:
            raise DerivationMismatch(f"{name}: unexpected term {rep!r}")
        seen.add(label)
    if seen != set(expected):
        raise DerivationMismatch(
            f"{name}: term set {sorted(seen)} differs from expected {sorted(expected)}")
    for label, poly in expected.items():
        d = ref[label] if label in ref else edge_diagram()
        got = combo.coefficient(d)
        if got != poly:
            raise DerivationMismatch(
                f"{name}: coefficient of {label} is {got!r}, expected {poly!r}")


_DERIVATION = None


class Derivation:
    """Everything the cascade produces, in one immutable bundle.

    ``relations`` holds the reduction right-hand sides keyed by name;
    ``vanishing`` the raw derived combinations that are identically zero;
    ``rules`` the three generic rewrite rules; ``reference`` the named
    diagrams the tables are stated over.
    """

    __slots__ = ("relations", "vanishing", "rules", "reference")

    def __init__(self, relations, vanishing, rules, reference):
        self.relations = relations
        self.vanishing = vanishing
        self.rules = rules
        self.reference = reference


def _derive():
    """Run the full cascade once and check every table.  Cached."""
    global _DERIVATION
    if _DERIVATION is not None:
        return _DERIVATION

    delta = DeltaPoly.delta()
    ref = reference_diagrams()
    fund = fund_relation()
    h5, h6, h7 = ref["hur.5"], ref["hur.6"], ref["hur.7"]
    h8, h9, h26 = ref["hur.8"], ref["hur.9"], ref["hur.26"]

    # two-cycle: join two neighbouring legs of the identity.  The free loop
    # produced by the pairing terms is worth delta, which normalize (with no
    # rules at all) already accounts for.
    no_rules = RuleSet("plain", delta, [])
    bubble_rel = normalize(
        fund.map_diagrams(lambda d: contract_pins(d, [(1, 2)])), no_rules)
    bubble_rule, bubble_rhs = _extract_rule("bubble", bubble_rel, 2)
    only_bubble = RuleSet("bubble-only", delta, [bubble_rule])

    # three-cycle: cap two neighbouring legs with a vertex, reduce the
    # two-cycles that appear, and solve for the triangle.
    tri_rel = normalize(
        fund.map_diagrams(lambda d: glue(d, vertex_diagram(), [(1, 0), (2, 1)])),
        only_bubble)
    triangle_rule, triangle_rhs = _extract_rule("triangle", tri_rel, 3)
    cycle_rules = RuleSet("bubble+triangle", delta, [bubble_rule, triangle_rule])

    # crossed tree: the identity with its first two legs exchanged contains
    # the crossed tree exactly once; solve for it.
    hx_rel = fund.map_diagrams(lambda d: permute_boundary(d, [1, 0, 2, 3]))
    c26 = hx_rel.coefficient(h26)
    if c26.degree != 0 or c26(0) not in (1, -1):
        raise DerivationMismatch(f"hx: crossed-tree coefficient {c26!r} is not a unit")
    hx_rhs = (hx_rel - LinearCombo.of(h26, c26)) * (-c26(0))

    # four-cycle: glue a two-vertex ladder onto two neighbouring legs of the
    # identity, which closes a ring through the identity's two trees.  The
    # boundary transposition fixes the frame in which the ring reads 0,1,2,3.
    ladder = Diagram(4, [0, 1], [
        (_v(0, 0), _b(2)), (_v(0, 1), _b(0)), (_v(0, 2), _v(1, 1)),
        (_v(1, 0), _b(3)), (_v(1, 2), _b(1)),
    ])
    sq_rel = fund.map_diagrams(lambda d: glue(d, ladder, [(1, 0), (2, 1)]))
    sq_rel = sq_rel.map_diagrams(lambda d: permute_boundary(d, [1, 0, 2, 3]))
    sq_rel = normalize(sq_rel, cycle_rules)
    sq1_rel = _substitute(sq_rel, h26, hx_rhs)
    sq1_rule, sq1_rhs = _extract_rule("square", sq1_rel, 4)

    # the quarter-turn of the finished square relation stays inside the
    # five-diagram basis and gives the second square table.
    sq2_rel = sq1_rel.map_diagrams(lambda d: rotate_boundary(d, 1))
    if not sq2_rel.coefficient(h26).is_zero():
        raise DerivationMismatch("sq2: quarter-turn left a crossed tree behind")
    _, sq2_rhs = _extract_rule("square", sq2_rel, 4)

    # both tables reduce the same square, so their difference vanishes; the
    # point of the whole computation is that it vanishes with a factor of
    # (delta - 7) in every coefficient.
    miracle = sq1_rhs - sq2_rhs

    _check_table("bubble", bubble_rhs, _EXPECTED["bubble"], ref)
    _check_table("triangle", triangle_rhs, _EXPECTED["triangle"], ref)
    _check_table("hx", hx_rhs, _EXPECTED["hx"], ref)
    _check_table("sq1", sq1_rhs, _EXPECTED["sq1"], ref)
    _check_table("sq2", sq2_rhs, _EXPECTED["sq2"], ref)

    assoc = miracle.map_coefficients(lambda p: p.divide_linear(7))
    _check_table("miracle/(delta-7)", assoc, _EXPECTED["associativity"], ref)

    relations = {
        "bubble": bubble_rhs,
        "triangle": triangle_rhs,
        "hx": hx_rhs,
        "sq1": sq1_rhs,
        "sq2": sq2_rhs,
        "miracle": miracle,
        "associativity": assoc,
    }
    vanishing = {
        "bubble": bubble_rel,
        "triangle": tri_rel,
        "hx": hx_rel,
        "sq1": sq1_rel,
        "sq2": sq2_rel,
        "miracle": miracle,
    }
    rules = {
        "bubble": bubble_rule,
        "triangle": triangle_rule,
        "square": sq1_rule,
    }
    _DERIVATION = Derivation(relations, vanishing, rules, ref)
    return _DERIVATION


def derive_hurwitz():
    """Recompute the square reductions from the defining identity.

    Returns a dict with the reduction right-hand sides ``sq1`` and ``sq2``
    (both on the five-diagram basis), their difference ``miracle``, and the
    intermediate tables ``bubble``, ``triangle`` and ``hx``.  Raises
    DerivationMismatch if any coefficient differs from the frozen tables.
    """
    deriv = _derive()
    return dict(deriv.relations)


# -- rule sets ----------------------------------------------------------------

_GENERIC = None
_G2 = None


def generic_rules():
    """Reduction rules valid for every delta: bubble, triangle, square.

    Coefficients live in Q[delta]; a free loop is worth delta.  Girth-five
    graphs are irreducible here, and four-leg reduced combinations are
    canonical only modulo the defining identity and its leg permutations.

    Closed diagrams below ten vertices always reduce to a scalar, but the
    polynomial depends on the reduction order: two orders can disagree by
    a multiple of delta(delta-1)(delta-3)(delta-7), which vanishes at
    every dimension where a vector product actually exists.  The values
    at delta in {0, 1, 3, 7} are the invariant content; normalize picks
    its redexes deterministically, so repeated runs agree.
    """
    global _GENERIC
    if _GENERIC is None:
        deriv = _derive()
        _GENERIC = RuleSet("generic", DeltaPoly.delta(), [
            deriv.rules["bubble"], deriv.rules["triangle"], deriv.rules["square"],
        ])
    return _GENERIC


def g2_rules():
    """The delta = 7 rule set: bubble, triangle, crossing-free square, and a
    mechanically derived five-cycle rule.

    The square rule is the generic one at delta = 7 minus the defining
    identity, which removes its crossed-pairing term.  The pentagon rule is
    obtained the same way as the square: glue a three-vertex ladder onto
    the identity, close the five-ring, reduce with the smaller rules, and
    solve.  Every closed diagram with at most ten vertices has a cycle of
    length at most five, so this set reduces any such diagram to a rational
    scalar.
    """
    global _G2
    if _G2 is None:
        deriv = _derive()
        seven = DeltaPoly([7])
        fund7 = fund_relation().subs_delta(7)
        bubble7 = Rule("bubble", 2, deriv.rules["bubble"].replacement.subs_delta(7))
        triangle7 = Rule("triangle", 3, deriv.rules["triangle"].replacement.subs_delta(7))
        sq3_rhs = deriv.relations["sq1"].subs_delta(7) - fund7
        square7 = Rule.from_relation("square", cycle_diagram(4), sq3_rhs)
        small = RuleSet("g2-small", seven, [bubble7, triangle7, square7])

        ladder3 = Diagram(5, [0, 1, 2], [
            (_v(0, 0), _b(2)), (_v(0, 1), _b(0)), (_v(0, 2), _v(1, 1)),
            (_v(1, 0), _b(3)), (_v(1, 2), _v(2, 1)),
            (_v(2, 0), _b(4)), (_v(2, 2), _b(1)),
        ])
        pent_rel = fund7.map_diagrams(lambda d: glue(d, ladder3, [(1, 0), (2, 1)]))
        pent_rel = pent_rel.map_diagrams(lambda d: permute_boundary(d, [0, 4, 1, 2, 3]))
        pent_rel = normalize(pent_rel, small)
        pentagon, _ = _extract_rule("pentagon", pent_rel, 5)
        _G2 = RuleSet("g2", seven, [bubble7, triangle7, square7, pentagon])
    return _G2


# -- the four-case classification ----------------------------------------------


class CaseSplit:
    """One step of the case analysis: a derived relation of the form
    (delta - root) * quotient = 0, so either delta equals root or the
    quotient combination vanishes from here on."""

    __slots__ = ("root", "witness", "relation_name", "relation")

    def __init__(self, root, witness, relation_name, relation):
        self.root = root
        self.witness = witness
        self.relation_name = relation_name
        self.relation = relation

    def __repr__(self):
        return f"CaseSplit(delta={self.root} or {self.relation_name} = 0)"


class CaseLeaf:
    """A terminal case: the dimension and the extra relations that hold."""

    __slots__ = ("delta", "description", "relations")

    def __init__(self, delta, description, relations):
        self.delta = delta
        self.description = description
        self.relations = tuple(relations)

    def relation_names(self):
        return tuple(name for name, _ in self.relations)

    def __repr__(self):
        return f"CaseLeaf(delta={self.delta}, {self.description})"


class CaseTree:
    """The full decision tree: an ordered chain of splits and leaves."""

    __slots__ = ("splits", "leaves")

    def __init__(self, splits, leaves):
        self.splits = tuple(splits)
        self.leaves = tuple(leaves)

    def leaf(self, delta):
        for lf in self.leaves:
            if lf.delta == delta:
                return lf
        raise KeyError(delta)

    def deltas(self):
        return tuple(sorted(lf.delta for lf in self.leaves))

    def render(self):
        lines = ["defining relation on four legs"]
        indent = ""
        for split, leaf in zip(self.splits[:-1], self.leaves[:-1]):
            lines.append(f"{indent}+- derived: (delta - {split.root}) * [{split.relation_name}] = 0")
            extras = ", ".join(leaf.relation_names()) or "none"
            lines.append(f"{indent}   +- delta = {split.root}: {leaf.description}"
                         f" (extra relations: {extras})")
            lines.append(f"{indent}   +- otherwise: {split.relation_name} = 0")
            indent += "      "
        last = self.leaves[-1]
        extras = ", ".join(last.relation_names()) or "none"
        lines.append(f"{indent}+- derived: delta * [empty diagram] = 0, so"
                     f" delta = {last.delta}: {last.description}"
                     f" (extra relations: {extras})")
        return "\n".join(lines)

    def __repr__(self):
        return f"CaseTree(deltas={self.deltas()})"


_CASES = None


def classify():
    """Mechanically split the residual identity into the four dimensions.

    Each step divides a derived relation by a linear factor of delta
    (exactly, or DerivationMismatch): first (delta-7) out of the square
    difference, then (delta-3) out of the capped associativity relation,
    then (delta-1) out of the vertex-free part of the bubble relation, and
    finally delta itself out of the closed edge.  The leaves are delta in
    {7, 3, 1, 0}, each carrying the relations that hold there.
    """
    global _CASES
    if _CASES is not None:
        return _CASES

    deriv = _derive()
    ref = deriv.reference
    delta = DeltaPoly.delta()
    vertex = ref["hur.4"]
    h7, h8, h9 = ref["hur.7"], ref["hur.8"], ref["hur.9"]

    # step 1: miracle = (delta - 7) * associativity
    miracle = deriv.relations["miracle"]
    assoc = miracle.map_coefficients(lambda p: p.divide_linear(7))

    # step 2: cap the associativity relation with a vertex; the small cycle
    # rules reduce it to a multiple of the bare vertex.
    cycle_rules = RuleSet("bubble+triangle", delta, [
        deriv.rules["bubble"], deriv.rules["triangle"]])
    capped = normalize(
        assoc.map_diagrams(lambda d: glue(d, vertex_diagram(), [(2, 0), (3, 1)])),
        cycle_rules)
    terms = capped.items()
    if len(terms) != 1 or canonicalize(terms[0][0]).key != canonicalize(vertex).key:
        raise DerivationMismatch("classify: capped associativity is not a vertex multiple")
    c_vertex = capped.coefficient(vertex)
    comm_scale = c_vertex.divide_linear(3)
    if comm_scale.degree != 0 or comm_scale(0) == 0:
        raise DerivationMismatch(
            f"classify: capped coefficient {c_vertex!r} is not a constant times (delta-3)")
    comm = LinearCombo.of(vertex, DeltaPoly.one())

    # step 3: with the vertex gone, the bubble relation collapses to a
    # multiple of the bare edge.
    vertex_free = LinearCombo.from_terms(2, [
        (rep, poly) for rep, poly in deriv.vanishing["bubble"].items()
        if rep.n_vertices == 0])
    c_edge = vertex_free.coefficient(edge_diagram())
    edge_scale = c_edge.divide_linear(1)
    if edge_scale.degree != 0 or edge_scale(0) == 0:
        raise DerivationMismatch(
            f"classify: edge coefficient {c_edge!r} is not a constant times (delta-1)")
    edge_rel = LinearCombo.of(edge_diagram(), DeltaPoly.one())

    # step 4: closing the edge turns it into a free loop worth delta.
    closed = normalize(contract_pins(edge_diagram(), [(0, 1)]),
                       RuleSet("plain", delta, []))
    c_empty = closed.coefficient(Diagram(0, [], []))
    if c_empty.divide_linear(0) != DeltaPoly.one():
        raise DerivationMismatch(f"classify: closed edge gave {c_empty!r}, not delta")

    # pairing equalities in the commutative branch: the defining identity
    # and its leg exchanges, with every vertex term dropped, row-reduce to
    # pairwise equality of the three pairings.
    fund = fund_relation()
    rows = []
    for perm in ([0, 1, 2, 3], [1, 0, 2, 3], [0, 2, 1, 3]):
        rel = fund.map_diagrams(lambda d: permute_boundary(d, perm))
        row = []
        for d in (h7, h8, h9):
            c = rel.coefficient(d)
            if c.degree > 0:
                raise DerivationMismatch("classify: pairing row is not constant")
            row.append(c(0))
        rows.append([Fraction(x) for x in row])
    reduced, pivots = rref(rows)
    if pivots != [0, 1]:
        raise DerivationMismatch(f"classify: pairing system has pivots {pivots}")
    pairing_relations = []
    basis = (h7, h8, h9)
    names = ("hur.7", "hur.8", "hur.9")
    for row, piv in zip(reduced, pivots):
        combo = LinearCombo.from_terms(4, [
            (basis[j], DeltaPoly.const(row[j])) for j in range(3) if row[j]])
        free = [names[j] for j in range(3) if j != piv and row[j]]
        pairing_relations.append((f"{names[piv]} = {', '.join(free)}", combo))

    splits = [
        CaseSplit(7, miracle, "associativity", assoc),
        CaseSplit(3, capped, "commutativity (vertex)", comm),
        CaseSplit(1, vertex_free, "edge", edge_rel),
        CaseSplit(0, closed, "empty diagram", LinearCombo.of(Diagram(0, [], []), DeltaPoly.one())),
    ]
    leaves = [
        CaseLeaf(7, "imaginary octonions", []),
        CaseLeaf(3, "imaginary quaternions",
                 [("associativity", assoc)]),
        CaseLeaf(1, "imaginary complex numbers",
                 [("associativity", assoc), ("vertex = 0", comm)] + pairing_relations),
        CaseLeaf(0, "zero space",
                 [("associativity", assoc), ("vertex = 0", comm),
                  ("edge = 0", edge_rel)] + pairing_relations),
    ]
    _CASES = CaseTree(splits, leaves)
    return _CASES


# -- operator composition of four-leg combinations ------------------------------


def compose4(c1, c2):
    """Compose two four-leg combinations as operators on a pair of legs.

    Legs 0,1 are inputs and 2,3 outputs; the outputs of the first factor
    are glued to the inputs of the second so that the nested pairing
    hur.8 acts as the two-sided identity.  Free loops created by the
    gluing are converted to their delta value.
    """
    if c1.n_boundary != 4 or c2.n_boundary != 4:
        raise ValueError("compose4 needs four-leg combinations")
    out = LinearCombo.zero(4)
    for d1, p1 in c1.items():
        for d2, p2 in c2.items():
            out = out + LinearCombo.of(glue(d1, d2, [(2, 1), (3, 0)]), p1 * p2)
    return normalize(out, RuleSet("plain", DeltaPoly.delta(), []))


def derivation_projector():
    """The idempotent four-leg combination (1/2) hur.8 - (1/2) hur.7 +
    (1/6) hur.5, projecting two legs onto the adjoint part at delta = 7."""
    ref = reference_diagrams()
    half = DeltaPoly.const(Fraction(1, 2))
    sixth = DeltaPoly.const(Fraction(1, 6))
    return (LinearCombo.of(ref["hur.8"], half)
            - LinearCombo.of(ref["hur.7"], half)
            + LinearCombo.of(ref["hur.5"], sixth))
