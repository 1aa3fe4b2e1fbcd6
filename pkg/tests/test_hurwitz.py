"""The mechanical route from the defining four-leg identity to the
dimension count {0, 1, 3, 7}, and the seven-dimensional rule set."""

import json
import pathlib
import random

import pytest

from compalg import (
    Diagram,
    LinearCombo,
    build_named,
    canonicalize,
    classify,
    combo_to_json,
    compose4,
    derivation_projector,
    derive_hurwitz,
    evaluate_closed,
    evaluate_concrete,
    fund_relation,
    g2_rules,
    generic_rules,
    gram_matrix,
    gram_rank,
    normalize,
    reference_diagrams,
    tensors_equal,
    tree4,
)
from compalg.diagrams import (
    cycle_diagram,
    edge_diagram,
    pairing_diagram,
    random_diagram,
    rotate_boundary,
    vertex_diagram,
)
from compalg.scalars import DeltaPoly
from compalg.vpa import imaginary_part

GOLDEN = pathlib.Path(__file__).parent / "golden"


def im(name):
    return imaginary_part(build_named(name))


def combo_tensor(combo, space, delta_value):
    """Evaluate a diagram combination to a concrete tensor at a numeric
    delta."""
    total = None
    for rep, poly in combo.items():
        t = evaluate_concrete(rep, space) * poly(delta_value)
        total = t if total is None else total + t
    return total


# -- reference diagrams and the defining identity -------------------------------


def test_reference_diagrams_are_distinct():
    ref = reference_diagrams()
    keys = {canonicalize(d).key for d in ref.values()}
    assert len(keys) == len(ref) == 8


def test_reference_vertex_counts():
    ref = reference_diagrams()
    counts = {label: d.n_vertices for label, d in ref.items()}
    assert counts == {"hur.4": 1, "hur.5": 2, "hur.6": 2, "hur.7": 0,
                      "hur.8": 0, "hur.9": 0, "hur.26": 2, "hur.32": 4}


def test_fund_relation_vanishes_on_every_vector_product():
    rel = fund_relation()
    for name, dv in (("quaternions", 3), ("octonions", 7), ("split_octonions", 7)):
        t = combo_tensor(rel, im(name), dv)
        assert tensors_equal(t, t * 0)


def test_fund_relation_does_not_vanish_termwise():
    # sanity: the identity is a real cancellation, not a list of zeros
    h5 = reference_diagrams()["hur.5"]
    t = evaluate_concrete(h5, im("octonions"))
    assert not tensors_equal(t, t * 0)


# -- the derived reduction tables -------------------------------------------------


def test_bubble_table():
    rel = derive_hurwitz()["bubble"]
    assert rel == LinearCombo.of(edge_diagram(), DeltaPoly([1, -1]))


def test_triangle_table():
    rel = derive_hurwitz()["triangle"]
    assert rel == LinearCombo.of(vertex_diagram(), DeltaPoly([-4, 1]))


def test_crossed_tree_table():
    ref = reference_diagrams()
    expected = LinearCombo.from_terms(4, [
        (ref["hur.5"], 1), (ref["hur.7"], -1),
        (ref["hur.8"], 2), (ref["hur.9"], -1),
    ])
    assert derive_hurwitz()["hx"] == expected


def test_first_square_table():
    ref = reference_diagrams()
    expected = LinearCombo.from_terms(4, [
        (ref["hur.5"], DeltaPoly([6, -1])),
        (ref["hur.6"], DeltaPoly([-1])),
        (ref["hur.7"], DeltaPoly([-2])),
        (ref["hur.8"], DeltaPoly([4])),
        (ref["hur.9"], DeltaPoly([-3, 1])),
    ])
    assert derive_hurwitz()["sq1"] == expected


def test_second_square_table_is_the_quarter_turn():
    ref = reference_diagrams()
    expected = LinearCombo.from_terms(4, [
        (ref["hur.5"], DeltaPoly([-1])),
        (ref["hur.6"], DeltaPoly([6, -1])),
        (ref["hur.7"], DeltaPoly([-2])),
        (ref["hur.8"], DeltaPoly([-3, 1])),
        (ref["hur.9"], DeltaPoly([4])),
    ])
    tables = derive_hurwitz()
    assert tables["sq2"] == expected
    turned = tables["sq1"].map_diagrams(lambda d: rotate_boundary(d, 1))
    assert turned == expected


def test_square_tables_have_half_turn_symmetry():
    # rotating twice fixes each table, so four rotations give only two
    sq1 = derive_hurwitz()["sq1"]
    half = sq1.map_diagrams(lambda d: rotate_boundary(d, 2))
    assert half == sq1


def test_miracle_factors_through_delta_minus_seven():
    ref = reference_diagrams()
    tables = derive_hurwitz()
    here = DeltaPoly([-7, 1])
    expected = LinearCombo.from_terms(4, [
        (ref["hur.6"], here), (ref["hur.5"], -1 * here),
        (ref["hur.9"], here), (ref["hur.8"], -1 * here),
    ])
    assert tables["miracle"] == expected
    assert tables["sq1"] - tables["sq2"] == expected


def test_both_square_tables_reduce_the_same_ring_concretely():
    ImO = im("octonions")
    ring = evaluate_concrete(cycle_diagram(4), ImO)
    tables = derive_hurwitz()
    assert tensors_equal(ring, combo_tensor(tables["sq1"], ImO, 7))
    assert tensors_equal(ring, combo_tensor(tables["sq2"], ImO, 7))


def test_associativity_relation_holds_for_quaternions_only():
    assoc = derive_hurwitz()["associativity"]
    t3 = combo_tensor(assoc, im("quaternions"), 3)
    assert tensors_equal(t3, t3 * 0)
    t7 = combo_tensor(assoc, im("octonions"), 7)
    assert not tensors_equal(t7, t7 * 0)


# -- the four-case classification ---------------------------------------------------


def test_classification_finds_the_four_dimensions():
    tree = classify()
    assert tree.deltas() == (0, 1, 3, 7)
    assert [s.root for s in tree.splits] == [7, 3, 1, 0]


def test_classification_leaf_relations():
    tree = classify()
    assert tree.leaf(7).relation_names() == ()
    assert tree.leaf(3).relation_names() == ("associativity",)
    assert tree.leaf(1).relation_names() == (
        "associativity", "vertex = 0", "hur.7 = hur.9", "hur.8 = hur.9")
    assert tree.leaf(0).relation_names() == (
        "associativity", "vertex = 0", "edge = 0",
        "hur.7 = hur.9", "hur.8 = hur.9")


def test_classification_descriptions():
    tree = classify()
    assert tree.leaf(7).description == "imaginary octonions"
    assert tree.leaf(3).description == "imaginary quaternions"
    assert tree.leaf(1).description == "imaginary complex numbers"
    assert tree.leaf(0).description == "zero space"


def test_classification_renders_every_case():
    text = classify().render()
    for needle in ("delta = 7", "delta = 3", "delta = 1", "delta = 0",
                   "imaginary octonions", "zero space"):
        assert needle in text


def test_leaf_relations_vanish_on_the_matching_algebra():
    spaces = {7: im("octonions"), 3: im("quaternions"), 1: im("complexes")}
    for dv, space in spaces.items():
        for name, rel in classify().leaf(dv).relations:
            t = combo_tensor(rel, space, dv)
            assert t is None or tensors_equal(t, t * 0), (dv, name)


def test_split_witnesses_vanish_where_they_should():
    # each split divides a combination that is zero in the quotient; its
    # concrete tensor must vanish on every actual vector product
    tree = classify()
    miracle = tree.splits[0].witness
    for name, dv in (("octonions", 7), ("quaternions", 3), ("complexes", 1)):
        t = combo_tensor(miracle, im(name), dv)
        assert tensors_equal(t, t * 0)


# -- the delta = 7 rule set -----------------------------------------------------------


def test_g2_rules_cover_lengths_two_to_five():
    assert g2_rules().lengths == (2, 3, 4, 5)
    assert g2_rules().loop_value == DeltaPoly([7])


def test_g2_square_rule_has_no_crossing():
    ref = reference_diagrams()
    repl = g2_rules().rules[4].replacement
    assert repl.coefficient(ref["hur.7"]).is_zero()
    coeffs = {lbl: repl.coefficient(ref[lbl])(0)
              for lbl in ("hur.5", "hur.6", "hur.8", "hur.9")}
    assert coeffs == {"hur.5": -2, "hur.6": -2, "hur.8": 3, "hur.9": 3}


def test_g2_rules_are_concretely_exact():
    ImO = im("octonions")
    for k, rule in g2_rules().rules.items():
        ring = evaluate_concrete(cycle_diagram(k), ImO)
        assert tensors_equal(ring, combo_tensor(rule.replacement, ImO, 7)), k


def test_pentagon_rule_matches_golden_file():
    repl = g2_rules().rules[5].replacement
    golden = json.loads((GOLDEN / "pentagon.json").read_text())
    assert combo_to_json(repl) == golden


def test_pentagon_rule_shape():
    repl = g2_rules().rules[5].replacement
    assert repl.n_boundary == 5
    assert len(repl) == 7
    assert {rep.n_vertices for rep, _ in repl.items()} == {1, 3}


def test_every_small_closed_diagram_reduces_to_a_rational():
    rng = random.Random(42)
    ImO = im("octonions")
    rules = g2_rules()
    seen_nontrivial = 0
    for _ in range(60):
        d = random_diagram(rng, n_boundary=0, max_vertices=10)
        val = evaluate_closed(d, rules)
        assert val.degree <= 0
        assert val(0) == evaluate_concrete(d, ImO)
        if d.n_vertices >= 6 and val(0) != 0:
            seen_nontrivial += 1
    assert seen_nontrivial >= 5


def test_normalization_agrees_with_the_tensor_oracle():
    # sampled open and closed diagrams, reduced generically, evaluated at
    # the two biggest dimensions
    rng = random.Random(20250825)
    ImO, ImH = im("octonions"), im("quaternions")
    rules = generic_rules()
    for _ in range(100):
        d = random_diagram(rng, max_vertices=8)
        nf = normalize(d, rules)
        for space, dv in ((ImO, 7), (ImH, 3)):
            lhs = evaluate_concrete(d, space)
            rhs = combo_tensor(nf, space, dv)
            if rhs is None:
                rhs = lhs * 0
            assert tensors_equal(lhs, rhs)


# -- the span of the four-leg diagrams ------------------------------------------------


def test_gram_rank_of_the_five_basic_diagrams():
    ref = reference_diagrams()
    basis = [ref[f"hur.{i}"] for i in (5, 6, 7, 8, 9)]
    assert gram_rank(basis, im("octonions")) == 4
    assert gram_rank(basis, im("quaternions")) == 3
    assert gram_rank(basis, im("complexes")) == 1


def test_gram_matrix_is_symmetric():
    ref = reference_diagrams()
    basis = [ref[f"hur.{i}"] for i in (7, 8, 9)]
    m = gram_matrix(basis, im("quaternions"))
    assert len(m) == 3
    for i in range(3):
        for j in range(3):
            assert m[i][j] == m[j][i]


# -- operator composition and the projector -------------------------------------------


def test_nested_pairing_is_the_composition_identity():
    ref = reference_diagrams()
    ident = LinearCombo.of(ref["hur.8"], 1)
    for lbl in ("hur.5", "hur.6", "hur.7", "hur.8", "hur.9"):
        c = LinearCombo.of(ref[lbl], 1)
        assert compose4(ident, c) == c
        assert compose4(c, ident) == c


def test_crossing_is_an_involution():
    ref = reference_diagrams()
    h7 = LinearCombo.of(ref["hur.7"], 1)
    assert compose4(h7, h7) == LinearCombo.of(ref["hur.8"], 1)


def test_projector_splits_the_identity_idempotently():
    rules = g2_rules()
    nf = lambda c: normalize(c, rules)
    e = derivation_projector()
    f = LinearCombo.of(reference_diagrams()["hur.8"], 1) - e
    assert nf(compose4(e, e)) == nf(e)
    assert nf(compose4(f, f)) == nf(f)
    assert nf(compose4(e, f)).is_zero()
    assert nf(compose4(f, e)).is_zero()


def test_projector_tensor_has_adjoint_rank():
    import numpy as np
    ImO = im("octonions")
    t = combo_tensor(derivation_projector(), ImO, 7)
    sq = np.einsum("abcd,dcef->abef", t, t)
    assert tensors_equal(sq, t)
    # trace over the identity convention: entries e[a,b,b,a summed]
    tr = sum(t[a, b, b, a] for a in range(7) for b in range(7))
    assert tr == 14


def test_tree4_matches_pairing_layout():
    # tree legs (0,1 | 2,3): gluing its inner edge shut is not needed for
    # this check, just the boundary counts
    t = tree4(0, 1, 2, 3)
    assert t.n_boundary == 4 and t.n_vertices == 2
    p = pairing_diagram(4, [(0, 2), (1, 3)])
    assert p.n_boundary == 4 and p.n_vertices == 0
