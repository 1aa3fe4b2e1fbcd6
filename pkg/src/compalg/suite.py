"""The standing verification suite, shared by tests and the command line.

Each function covers one guarantee the package makes, end to end, and
returns a list of check records ``{"name", "passed", "detail"}``.  The
functions are memoized: the test suite and the ``verify-all`` subcommand can
both run them in one process without doing the heavy work twice.

Nothing here tolerates approximation: every check is an exact identity over
the rationals (or over polynomials in the loop value), and the negative
controls must fail for the right reason, with witnesses.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .algebras import (
    ALGEBRA_NAMES,
    CompositionAlgebra,
    build_named,
    cayley_dickson_double,
    check_composition,
    derivation_algebra,
    properties,
)
from .concrete import evaluate_concrete, gram_rank, tensors_equal
from .cubic import certify_catalogue, closed_catalogue
from .diagrams import (
    Diagram,
    LinearCombo,
    canonicalize,
    disjoint_union,
    edge_diagram,
    empty_diagram,
    loop_diagram,
    random_diagram,
    vertex_diagram,
)
from .hurwitz import (
    DerivationMismatch,
    classify,
    derive_hurwitz,
    g2_rules,
    generic_rules,
    reference_diagrams,
)
from .rewrite import Irreducible, confluence_probe, evaluate_closed, normalize
from .scalars import DeltaPoly
from .sym import NotSpecial, build_system, extract_triality, verify_special, verify_system
from .triality import (
    algebra_from_triality,
    triality_from_algebra,
    verify_clifford_rho,
    verify_triality,
)
from .vpa import imaginary_part

DERIVATION_DIMS = {
    "reals": 0,
    "complexes": 0,
    "quaternions": 3,
    "octonions": 14,
    "split_complexes": 0,
    "split_quaternions": 3,
    "split_octonions": 14,
}

DOUBLING_CHAIN = (
    ("reals", True, True),
    ("complexes", True, True),
    ("quaternions", True, False),
    ("octonions", False, False),
)


def _check(name, passed, **detail):
    return {"name": name, "passed": bool(passed), "detail": detail}


def _combo_tensor(combo, space, delta):
    """Concrete tensor of a diagram combination at a numeric loop value."""
    total = None
    for rep, poly in combo.items():
        t = evaluate_concrete(rep, space) * poly(delta)
        total = t if total is None else total + t
    return total


# -- 1: the composition law ------------------------------------------------------


@lru_cache(maxsize=None)
def composition_checks():
    """check_composition on all seven algebras, and the dim-16 double must fail."""
    out = []
    for name in ALGEBRA_NAMES:
        rep = check_composition(build_named(name))
        out.append(_check(f"composition[{name}]", rep.passed, witnesses=rep.witnesses))
    big = cayley_dickson_double(build_named("octonions"))
    rep = check_composition(big)
    out.append(
        _check(
            "composition-must-fail[double-octonions]",
            (not rep.passed) and len(rep.witnesses) >= 1,
            dim=big.dim,
            witnesses=rep.witnesses[:3],
        )
    )
    return out


# -- 2: the doubling chain -------------------------------------------------------


@lru_cache(maxsize=None)
def doubling_checks():
    out = []
    for name, want_assoc, want_comm in DOUBLING_CHAIN:
        A = build_named(name)
        props = properties(A)
        out.append(
            _check(
                f"properties[{name}]",
                props["associative"] == want_assoc and props["commutative"] == want_comm,
                **props,
            )
        )
        rep = check_composition(cayley_dickson_double(A))
        out.append(
            _check(
                f"double-composes-iff-associative[{name}]",
                rep.passed == want_assoc,
                double_passes=rep.passed,
                associative=want_assoc,
            )
        )
    return out


# -- 3: derivation dimensions ----------------------------------------------------


@lru_cache(maxsize=None)
def derivation_checks():
    out = []
    for name, want in DERIVATION_DIMS.items():
        dim = len(derivation_algebra(build_named(name)))
        out.append(_check(f"derivation-dimension[{name}]", dim == want, dimension=dim, expected=want))
    return out


# -- 4 and 5: the mechanical dimension count and its case split -------------------


@lru_cache(maxsize=None)
def hurwitz_checks():
    ref = reference_diagrams()
    out = []
    try:
        tables = derive_hurwitz()
    except DerivationMismatch as exc:
        return [_check("hurwitz-derivation", False, error=str(exc))]
    out.append(
        _check(
            "bubble-coefficient",
            tables["bubble"] == LinearCombo.of(edge_diagram(), DeltaPoly([1, -1])),
        )
    )
    out.append(
        _check(
            "triangle-coefficient",
            tables["triangle"] == LinearCombo.of(vertex_diagram(), DeltaPoly([-4, 1])),
        )
    )
    sq1 = LinearCombo.from_terms(4, [
        (ref["hur.5"], DeltaPoly([6, -1])),
        (ref["hur.6"], DeltaPoly([-1])),
        (ref["hur.7"], DeltaPoly([-2])),
        (ref["hur.8"], DeltaPoly([4])),
        (ref["hur.9"], DeltaPoly([-3, 1])),
    ])
    out.append(_check("square-reduction", tables["sq1"] == sq1))
    here = DeltaPoly([-7, 1])
    miracle = LinearCombo.from_terms(4, [
        (ref["hur.6"], here), (ref["hur.5"], -1 * here),
        (ref["hur.9"], here), (ref["hur.8"], -1 * here),
    ])
    out.append(
        _check(
            "miracle-factorization",
            tables["miracle"] == miracle and tables["sq1"] - tables["sq2"] == miracle,
        )
    )
    return out


@lru_cache(maxsize=None)
def classification_checks():
    tree = classify()
    out = [_check("four-leaves", tree.deltas() == (0, 1, 3, 7), deltas=list(tree.deltas()))]
    expected_leaf = {
        7: (),
        3: ("associativity",),
        1: ("associativity", "vertex = 0", "hur.7 = hur.9", "hur.8 = hur.9"),
        0: ("associativity", "vertex = 0", "edge = 0", "hur.7 = hur.9", "hur.8 = hur.9"),
    }
    for delta, names in expected_leaf.items():
        got = tree.leaf(delta).relation_names()
        out.append(
            _check(f"leaf-relations[delta={delta}]", got == names, relations=list(got))
        )
    return out


# -- 6: oracle equivalence of the generic rules -----------------------------------


@lru_cache(maxsize=None)
def oracle_checks(seed=0, samples=100):
    rng = random.Random(seed)
    rules = generic_rules()
    spaces = (
        ("octonions", imaginary_part(build_named("octonions")), 7),
        ("quaternions", imaginary_part(build_named("quaternions")), 3),
    )
    mismatches = {name: [] for name, _, _ in spaces}
    checked = 0
    while checked < samples:
        d = random_diagram(rng, max_vertices=8)
        checked += 1
        nf = normalize(d, rules)
        for name, space, dv in spaces:
            lhs = evaluate_concrete(d, space)
            rhs = _combo_tensor(nf, space, dv)
            if rhs is None:
                rhs = lhs * 0
            if not tensors_equal(lhs, rhs):
                mismatches[name].append(canonicalize(d).key.decode("ascii"))
    out = []
    for name, _, dv in spaces:
        out.append(
            _check(
                f"oracle-equivalence[{name},delta={dv}]",
                not mismatches[name],
                samples=checked,
                mismatches=mismatches[name][:3],
            )
        )
    return out


# -- 7: the delta = 7 rules close every small diagram ------------------------------


@lru_cache(maxsize=None)
def closed_scalar_checks():
    """Every closed diagram with at most ten vertices reduces to a rational.

    The closed diagrams split into: vertexless parts (empty diagram and free
    loops, which are explicit scalars), anything with a vertex self-loop
    (identically zero, being isomorphic to its own negative), and disjoint
    unions of connected loopless cubic multigraphs.  The connected catalogue
    is certified complete by double counting before use, so together these
    checks cover every closed diagram up to ten vertices.
    """
    rules = g2_rules()
    out = []
    cats = {}
    for n in (2, 4, 6, 8, 10):
        cat = closed_catalogue(n)
        count = certify_catalogue(cat, n)
        cats[n] = cat
        bad = []
        for d in cat:
            try:
                val = evaluate_closed(d, rules)
            except Irreducible:
                bad.append(canonicalize(d).key.decode("ascii"))
                continue
            if val.degree > 0:
                bad.append(canonicalize(d).key.decode("ascii"))
        out.append(
            _check(
                f"closed-scalars[n={n}]",
                not bad,
                classes=len(cat),
                labelled_graphs=count,
                irrational=bad,
            )
        )
    out.append(
        _check(
            "closed-scalars[vertexless]",
            evaluate_closed(empty_diagram(), rules) == DeltaPoly.one()
            and evaluate_closed(loop_diagram(1), rules) == DeltaPoly([7])
            and evaluate_closed(loop_diagram(3), rules) == DeltaPoly([343]),
        )
    )
    # a self-loop makes the diagram equal its own negative: identically zero
    tadpole = Diagram(
        0,
        [0, 1],
        [
            (("v", 0, 0), ("v", 0, 1)),
            (("v", 0, 2), ("v", 1, 0)),
            (("v", 1, 1), ("v", 1, 2)),
        ],
    )
    out.append(
        _check(
            "closed-scalars[self-loop-vanishes]",
            canonicalize(tadpole).sign == 0 and LinearCombo.of(tadpole).is_zero(),
        )
    )
    union_ok = True
    for a in cats[2] + cats[4]:
        for b in cats[2] + cats[4] + cats[6]:
            if a.n_vertices + b.n_vertices > 10:
                continue
            u = evaluate_closed(disjoint_union(a, b), rules)
            if u != evaluate_closed(a, rules) * evaluate_closed(b, rules):
                union_ok = False
    out.append(_check("closed-scalars[disjoint-unions]", union_ok))
    return out


@lru_cache(maxsize=None)
def probe_checks(seed=0, trials=500):
    report = confluence_probe(g2_rules(), size_bound=8, trials=trials, seed=seed)
    out = [
        _check(
            "confluence-probe[g2]",
            report.confluent and report.checked >= 100,
            trials=report.trials,
            checked=report.checked,
            mismatches=len(report.mismatches),
        )
    ]
    broken = confluence_probe(g2_rules().without(3), size_bound=8, trials=300, seed=seed)
    out.append(
        _check(
            "confluence-probe[broken-control]",
            len(broken.mismatches) >= 1,
            mismatches=len(broken.mismatches),
        )
    )
    return out


# -- 8: the Gram rank of the four-leg span ----------------------------------------


@lru_cache(maxsize=None)
def gram_checks():
    ref = reference_diagrams()
    basis = [ref[f"hur.{i}"] for i in (5, 6, 7, 8, 9)]
    rank = gram_rank(basis, imaginary_part(build_named("octonions")))
    return [_check("gram-rank[imaginary-octonions]", rank == 4, rank=rank)]


# -- 9: triality -------------------------------------------------------------------


@lru_cache(maxsize=None)
def triality_checks():
    out = []
    for name in ALGEBRA_NAMES:
        A = build_named(name)
        rho = verify_clifford_rho(A)
        out.append(_check(f"clifford-rho[{name}]", rho.passed, witnesses=rho.witnesses))
        T = triality_from_algebra(A)
        rep = verify_triality(T)
        out.append(_check(f"triality[{name}]", rep.passed, witnesses=rep.witnesses))
        unit = [0] * A.dim
        unit[0] = 1
        B = algebra_from_triality(T, tuple(unit), tuple(unit))
        out.append(
            _check(
                f"triality-roundtrip[{name}]",
                (B.mul_table == A.mul_table).all() and (B.form == A.form).all(),
            )
        )
    return out


# -- 10: the supersymmetry systems --------------------------------------------------


@lru_cache(maxsize=None)
def sym_checks():
    out = []
    vdims = []
    for name in ALGEBRA_NAMES:
        sys = build_system(build_named(name))
        vdims.append(sys.vdim)
        rep = verify_system(sys)
        out.append(_check(f"system[{name}]", rep.passed, witnesses=rep.witnesses))
        special = verify_special(sys)
        out.append(
            _check(f"special[{name}]", special.passed, witnesses=special.witnesses)
        )
        try:
            extracted = verify_triality(extract_triality(sys)).passed
        except NotSpecial:
            extracted = False
        out.append(_check(f"extracted-triality[{name}]", extracted, vdim=sys.vdim))
    out.append(
        _check(
            "system-dimensions",
            sorted(set(vdims)) == [3, 4, 6, 10],
            vdims=vdims,
        )
    )
    out.append(_sym_control())
    return out


def _sym_control():
    """The corrupted-product control must fail the polarized special condition."""
    A = build_named("octonions")
    table = A.mul_table.copy()
    table[1, 2, 3] = -table[1, 2, 3] + 1
    bad = CompositionAlgebra("octonions-corrupted", table, A.form)
    rep = verify_special(build_system(bad))
    quad = [w for w in rep.witnesses if w[0] == "special" and len(w) == 5]
    return _check(
        "special-must-fail[corrupted-product]",
        (not rep.passed) and len(quad) >= 1,
        witnesses=quad[:3],
    )


# -- the whole gate -----------------------------------------------------------------


CRITERIA = (
    ("composition law", composition_checks),
    ("doubling chain", doubling_checks),
    ("derivation dimensions", derivation_checks),
    ("mechanical dimension count", hurwitz_checks),
    ("four-case classification", classification_checks),
    ("oracle equivalence", oracle_checks),
    ("closed diagrams reduce to scalars", closed_scalar_checks),
    ("confluence probe", probe_checks),
    ("gram rank", gram_checks),
    ("triality", triality_checks),
    ("supersymmetry systems", sym_checks),
)


def all_checks(seed=0):
    """Run the entire gate; returns the flat list of check records."""
    out = []
    for _, fn in CRITERIA:
        if fn in (oracle_checks, probe_checks):
            out.extend(fn(seed))
        else:
            out.extend(fn())
    return out
