"""Evaluate trivalent diagrams as exact tensors over a vector product algebra.

A diagram with k boundary pins evaluates to a k-index covariant tensor:
each vertex contributes the trilinear form T[a, b, c] = <e_a x e_b, e_c>,
internal edges contract through the inverse of the bilinear form, an edge
joining two pins contributes the form itself, and every free loop contributes
a factor of dim V.  Slot order matters: T is totally antisymmetric, which is
what gives diagrams their signs.

This is the concrete model against which the abstract rewriting is checked:
any relation that holds identically in the diagram algebra must evaluate to
equal tensors here.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .diagrams import Diagram, LinearCombo
from .linalg import inverse, rank

BOUND = "b"
VERT = "v"


class BoundaryMismatch(ValueError):
    pass


def _tidy(arr):
    """Object array with integer-valued Fractions demoted to int (plain int
    arithmetic is much faster and stays exact)."""
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for i, x in enumerate(flat_in):
        q = Fraction(x)
        flat_out[i] = int(q) if q.denominator == 1 else q
    return out


_model_cache = {}


def _model(V):
    """(dim, vertex tensor, form, inverse form) for a vector product algebra."""
    got = _model_cache.get(V)
    if got is not None:
        return got
    n = V.dim
    g = np.array(V.dot, dtype=object)
    T = np.tensordot(np.array(V.cross_table, dtype=object), g, axes=([2], [0]))
    ginv = np.array(inverse([list(row) for row in V.dot]), dtype=object) if n else g.reshape(0, 0)
    model = (n, _tidy(T), _tidy(g), _tidy(ginv))
    _model_cache[V] = model
    return model


def _contract_network(nodes, out_legs, dim):
    """Pairwise-contract a tensor network given as (array, leg names) nodes.

    Every leg name appears exactly twice (contracted) or once (appears in
    out_legs).  Returns the result transposed into out_legs order.
    """
    nodes = [(arr, list(legs)) for arr, legs in nodes]
    while True:
        best = None
        for i in range(len(nodes)):
            legs_i = set(nodes[i][1])
            for j in range(i + 1, len(nodes)):
                shared = legs_i & set(nodes[j][1])
                if not shared:
                    continue
                size = dim ** (len(nodes[i][1]) + len(nodes[j][1]) - 2 * len(shared))
                if best is None or size < best[0]:
                    best = (size, i, j, shared)
        if best is None:
            break
        _, i, j, shared = best
        arr_i, legs_i = nodes[i]
        arr_j, legs_j = nodes[j]
        order = sorted(shared, key=legs_i.index)
        ax_i = [legs_i.index(l) for l in order]
        ax_j = [legs_j.index(l) for l in order]
        merged = np.tensordot(arr_i, arr_j, axes=(ax_i, ax_j))
        rest = [l for l in legs_i if l not in shared] + [l for l in legs_j if l not in shared]
        nodes[j:j + 1] = []
        nodes[i] = (merged, rest)
    if not nodes:
        result, legs = np.array(1, dtype=object), []
    else:
        result, legs = nodes[0]
        for arr, more in nodes[1:]:
            result = np.tensordot(result, arr, axes=0)
            legs = legs + more
    if sorted(map(repr, legs)) != sorted(map(repr, out_legs)):
        raise AssertionError("network legs do not match the boundary")
    perm = [legs.index(l) for l in out_legs]
    return result.transpose(perm) if perm else result


def _evaluate_diagram(d, V):
    n, T, g, ginv = _model(V)
    pm = d.partner_map()

    def leg_name(endpoint):
        far = pm[endpoint]
        if far[0] == BOUND:
            return ("out", far[1])
        ekey = tuple(sorted((endpoint, far)))
        return (ekey, 0 if ekey[0] == endpoint else 1)

    nodes = []
    for v in sorted(d.vertices):
        nodes.append((T, [leg_name((VERT, v, s)) for s in range(3)]))
    for e in d.edges:
        a, b = sorted(e)
        if a[0] == BOUND and b[0] == BOUND:
            nodes.append((g, [("out", a[1]), ("out", b[1])]))
        elif a[0] == VERT and b[0] == VERT:
            ekey = (a, b)
            nodes.append((ginv, [(ekey, 0), (ekey, 1)]))
    out_legs = [("out", i) for i in range(d.n_boundary)]
    value = _contract_network(nodes, out_legs, max(n, 1))
    if d.free_loops:
        value = value * (Fraction(n) ** d.free_loops)
    return value


def evaluate_concrete(x, V):
    """Evaluate a Diagram or LinearCombo in the algebra V.

    Returns a Fraction for closed inputs, otherwise an object ndarray of
    shape (dim,) * n_boundary.  LinearCombo coefficients are evaluated at
    delta = dim V before the sum.
    """
    if isinstance(x, Diagram):
        value = _evaluate_diagram(x, V)
    elif isinstance(x, LinearCombo):
        total = np.zeros((V.dim,) * x.n_boundary, dtype=object)
        total = total + Fraction(0)
        for rep, poly in x.items():
            c = poly(V.dim)
            if c:
                total = total + _evaluate_diagram(rep, V) * c
        value = total
    else:
        raise TypeError(f"cannot evaluate {type(x).__name__}")
    if getattr(value, "ndim", 0) == 0:
        return Fraction(value.item() if hasattr(value, "item") else value)
    return value


def tensors_equal(a, b):
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and bool(np.all(a == b))


def gram_matrix(diagrams, V):
    """Pairwise inner products of diagram evaluations, raising every index
    with the inverse form.  All diagrams must share one boundary size."""
    diagrams = list(diagrams)
    if not diagrams:
        return []
    k = diagrams[0].n_boundary
    for d in diagrams:
        if d.n_boundary != k:
            raise BoundaryMismatch("gram matrix needs a uniform boundary")
    n, _, _, ginv = _model(V)
    values = [np.asarray(evaluate_concrete(d, V), dtype=object).reshape((n,) * k) for d in diagrams]
    raised = []
    for val in values:
        up = val
        for axis in range(k):
            up = np.tensordot(up, ginv, axes=([0], [0]))
        # axes cycle back into original order after k single-axis contractions
        raised.append(up)
    m = len(values)
    G = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            prod = np.tensordot(raised[i], values[j], axes=(list(range(k)), list(range(k))))
            q = Fraction(prod.item() if hasattr(prod, "item") else prod)
            G[i][j] = q
            G[j][i] = q
    return G


def gram_rank(diagrams, V):
    G = gram_matrix(diagrams, V)
    return rank(G) if G else 0
