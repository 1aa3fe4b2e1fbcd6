"""Trialities: three inner-product spaces tied by a trilinear form.

A composition algebra K gives the archetype: all three spaces are K with
its norm form and the trilinear tensor pairs the product xy against
conj(z), which is cyclically invariant.  The defining condition on an
abstract triality is that for every permutation (i, j, k) of the three
spaces, the two maps induced by the tensor assemble into a Clifford
action of V_i on V_j + V_k.  That
condition is checked here by exact matrix arithmetic, permutation by
permutation, with no appeal to alternativity or representation theory.

The reverse construction picks anisotropic base points e1, e2, sets
e3 = e1 e2, and rebuilds a composition algebra on V3; with unit base
points the round trip reproduces the original structure constants
exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .algebras import CompositionAlgebra, VerificationReport
from .linalg import inverse, rank

F0 = Fraction(0)
F1 = Fraction(1)


class IsotropicBasePoint(ValueError):
    """Raised when a chosen base point has zero norm and so cannot be
    inverted."""


def _obj(nested):
    return np.array(nested, dtype=object)


def _form_inverse(form):
    return _obj(inverse([list(row) for row in form]))


def _matmul(a, b):
    return np.dot(a, b)


def _identity(n):
    m = np.zeros((n, n), dtype=object)
    for i in range(n):
        m[i, i] = F1
    for i in range(n):
        for j in range(n):
            if i != j:
                m[i, j] = F0
    return m


def _zeros(shape):
    m = np.zeros(shape, dtype=object)
    m[...] = F0
    return m


def _scaled_int64(mats, scalars, bound=10**6):
    """Clear denominators and convert to int64 for fast exact arithmetic.

    Returns (int matrices, int scalars, denominator) when every entry of
    ``mats`` and every value in ``scalars`` times the common denominator
    (squared, for the scalars, since they compare against products of two
    matrices) is a small integer; returns None otherwise and the caller
    falls back to Fraction arithmetic.
    """
    den = 1
    for m in mats:
        for v in m.flat:
            den = math.lcm(den, Fraction(v).denominator)
    if den > 64:
        return None
    out = []
    for m in mats:
        a = np.empty(m.shape, dtype=np.int64)
        for idx in np.ndindex(m.shape):
            v = Fraction(m[idx]) * den
            if abs(v.numerator) > bound:
                return None
            a[idx] = v.numerator
        out.append(a)
    svals = []
    for s in scalars:
        v = Fraction(s) * den * den
        if v.denominator != 1 or abs(v.numerator) > bound * bound:
            return None
        svals.append(int(v))
    return out, svals, den


class RhoAction:
    """The matrices of a ↦ ρ(a) on K + K, one per basis vector of K.

    ρ(a) sends (x, y) to (conj(a) conj(y), conj(x) conj(a)); it is linear
    in a by construction, so the basis matrices determine it.
    """

    __slots__ = ("algebra", "matrices")

    def __init__(self, algebra, matrices):
        self.algebra = algebra
        self.matrices = tuple(matrices)

    def matrix(self, coords):
        """ρ at an arbitrary element, by linearity."""
        total = _zeros(self.matrices[0].shape)
        for c, m in zip(coords, self.matrices):
            total = total + Fraction(c) * m
        return total

    def __repr__(self):
        return f"RhoAction({self.algebra.name!r}, dim={self.algebra.dim * 2})"


def spin_rep(A):
    """The Clifford-generating action of K on K + K.

    The matrix of ρ(e_i) has the block shape [[0, B], [C, 0]] where
    B y = conj(e_i) conj(y) and C x = conj(x) conj(e_i).
    """
    d = A.dim
    mats = []
    for i in range(d):
        a_bar = A.conj_coords(tuple(F1 if j == i else F0 for j in range(d)))
        m = _zeros((2 * d, 2 * d))
        for j in range(d):
            e_j = tuple(F1 if k == j else F0 for k in range(d))
            top = A.mul_coords(a_bar, A.conj_coords(e_j))
            bot = A.mul_coords(A.conj_coords(e_j), a_bar)
            for k in range(d):
                m[k, d + j] = top[k]
                m[d + k, j] = bot[k]
        mats.append(m)
    return RhoAction(A, mats)


def verify_clifford_rho(A, max_witnesses=5):
    """Check ρ(a)ρ(b) + ρ(b)ρ(a) = 2<a,b> id on all basis pairs."""
    rho = spin_rep(A)
    d = A.dim
    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    wants = [2 * A.form[i, j] for i, j in pairs]
    witnesses = []
    fast = _scaled_int64(rho.matrices, wants)
    if fast is not None:
        mats, svals, _ = fast
        ident = np.eye(2 * d, dtype=np.int64)
        for (i, j), w in zip(pairs, svals):
            anti = mats[i] @ mats[j] + mats[j] @ mats[i]
            if not np.array_equal(anti, w * ident):
                if len(witnesses) < max_witnesses:
                    witnesses.append(("clifford", i, j))
    else:
        ident = _identity(2 * d)
        for (i, j), w in zip(pairs, wants):
            anti = _matmul(rho.matrices[i], rho.matrices[j]) + _matmul(
                rho.matrices[j], rho.matrices[i])
            if not (anti == w * ident).all():
                if len(witnesses) < max_witnesses:
                    witnesses.append(("clifford", i, j))
    return VerificationReport(not witnesses, witnesses)


class Triality:
    """Three spaces with forms and a trilinear tensor.

    ``forms`` is a tuple of three symmetric matrices; ``tensor`` has shape
    (dim1, dim2, dim3).  All entries are Fractions.
    """

    __slots__ = ("forms", "tensor", "name")

    def __init__(self, forms, tensor, name="triality"):
        forms = tuple(_obj(f) for f in forms)
        tensor = _obj(tensor)
        if tensor.shape != tuple(f.shape[0] for f in forms):
            raise ValueError("tensor shape does not match the space dimensions")
        self.forms = forms
        self.tensor = tensor
        self.name = name

    @property
    def dims(self):
        return tuple(f.shape[0] for f in self.forms)

    def __repr__(self):
        return f"Triality({self.name!r}, dims={self.dims})"


def triality_from_algebra(A):
    """All three spaces are K; the tensor pairs xy against conj(z).

    Under our normalization <a, a> = N(a) the cyclic trilinear form is
    <xy, conj(z)>; the same numbers read <xy, z> under the trace pairing
    (a, b) = <a, conj(b)>, which is how the form is usually displayed.
    Cyclic invariance is exact: <xy, conj(z)> = <yz, conj(x)>.
    """
    d = A.dim
    t = _zeros((d, d, d))
    basis = [tuple(F1 if k == i else F0 for k in range(d)) for i in range(d)]
    for i in range(d):
        for j in range(d):
            prod = A.mul_coords(basis[i], basis[j])
            for k in range(d):
                t[i, j, k] = A.inner_coords(prod, A.conj_coords(basis[k]))
    return Triality((A.form, A.form, A.form), t, name=A.name)


def _induced_map(T, perm, target_form_inv):
    """The map V_i x V_j -> V_k read off the tensor: index positions are
    permuted so slot i takes the first argument, and the k index is raised
    with the inverse form of V_k."""
    i, j, k = perm
    # arrange axes so the tensor reads (first argument, second, output slot)
    t = np.transpose(T.tensor, axes=np.argsort((i, j, k)))
    return np.tensordot(t, target_form_inv, axes=([2], [0]))


def verify_triality(T, max_witnesses=5):
    """Check the Clifford condition for every permutation of the spaces.

    Returns a VerificationReport whose ``permutations`` dict records the
    result per permutation (i, j, k); the overall flag is their
    conjunction.
    """
    inv = tuple(_form_inverse(f) for f in T.forms)
    witnesses = []
    per_perm = {}
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    for perm in perms:
        i, j, k = perm
        di, dj, dk = T.dims[i], T.dims[j], T.dims[k]
        to_k = _induced_map(T, (i, j, k), inv[k])   # V_i x V_j -> V_k
        to_j = _induced_map(T, (i, k, j), inv[j])   # V_i x V_k -> V_j
        n = dj + dk
        blocks = []
        for a in range(di):
            ma = _zeros((n, n))
            ma[dj:, :dj] = to_k[a].T
            ma[:dj, dj:] = to_j[a].T
            blocks.append(ma)
        pairs = [(a, b) for a in range(di) for b in range(a, di)]
        wants = [2 * T.forms[i][a, b] for a, b in pairs]
        ok = True
        fast = _scaled_int64(blocks, wants)
        if fast is not None:
            mats, svals, _ = fast
            ident = np.eye(n, dtype=np.int64)
            for (a, b), w in zip(pairs, svals):
                anti = mats[a] @ mats[b] + mats[b] @ mats[a]
                if not np.array_equal(anti, w * ident):
                    ok = False
                    if len(witnesses) < max_witnesses:
                        witnesses.append(("clifford", perm, a, b))
        else:
            ident = _identity(n)
            for (a, b), w in zip(pairs, wants):
                anti = _matmul(blocks[a], blocks[b]) + _matmul(blocks[b], blocks[a])
                if not (anti == w * ident).all():
                    ok = False
                    if len(witnesses) < max_witnesses:
                        witnesses.append(("clifford", perm, a, b))
        per_perm[perm] = ok
    report = VerificationReport(not witnesses, witnesses)
    report.permutations = per_perm
    return report


def algebra_from_triality(T, e1, e2, name=None):
    """Rebuild a composition algebra from a triality and two base points.

    e1 lives in V1, e2 in V2, both anisotropic; e3 is the image of
    (e1, e2) under the induced map V1 x V2 -> V3.  The product on V3 is
    z w = m12(m23(e2, w), m31(z, e1)) scaled by 1/(|e1| |e2|), the form is
    scaled the same way, and the basis is rotated so e3 comes first.  With
    unit base points on the triality of a composition algebra this returns
    the original tables exactly: the induced maps carry a conjugation
    (m12(x, y) is conj(xy) in the model), and the two conjugations cancel
    so that the composite is (z e1)(e2 w) / (|e1| |e2|).
    """
    inv = tuple(_form_inverse(f) for f in T.forms)
    m12 = np.tensordot(T.tensor, inv[2], axes=([2], [0]))  # V1 x V2 -> V3
    m23 = np.tensordot(np.transpose(T.tensor, (1, 2, 0)), inv[0], axes=([2], [0]))
    m31 = np.tensordot(np.transpose(T.tensor, (2, 0, 1)), inv[1], axes=([2], [0]))

    e1 = _obj([Fraction(c) for c in e1])
    e2 = _obj([Fraction(c) for c in e2])
    n1 = np.dot(e1, np.dot(T.forms[0], e1))
    if n1 == 0:
        raise IsotropicBasePoint(f"e1 = {list(e1)} has zero norm")
    n2 = np.dot(e2, np.dot(T.forms[1], e2))
    if n2 == 0:
        raise IsotropicBasePoint(f"e2 = {list(e2)} has zero norm")

    e3 = np.dot(np.dot(e1, m12.transpose(2, 0, 1)), e2)
    d3 = T.dims[2]
    scale = n1 * n2
    form3 = T.forms[2] / scale
    n3 = np.dot(e3, np.dot(form3, e3))
    if n3 == 0:
        raise IsotropicBasePoint(f"e3 = e1 e2 = {list(e3)} has zero norm")

    def product(z, w):
        left = np.dot(np.dot(e2, m23.transpose(2, 0, 1)), w)   # m23(e2, w)
        right = np.dot(np.dot(z, m31.transpose(2, 0, 1)), e1)  # m31(z, e1)
        return np.dot(np.dot(left, m12.transpose(2, 0, 1)), right) / scale

    # basis of V3 with e3 first, completed greedily by standard vectors
    cols = [list(e3)]
    for i in range(d3):
        candidate = [F1 if k == i else F0 for k in range(d3)]
        if rank(cols + [candidate]) > len(cols):
            cols.append(candidate)
        if len(cols) == d3:
            break
    basis_mat = _obj(cols).T  # columns are the new basis vectors
    basis_inv = _obj(inverse([list(row) for row in basis_mat]))

    mul = _zeros((d3, d3, d3))
    for i in range(d3):
        for j in range(d3):
            zw = product(basis_mat[:, i], basis_mat[:, j])
            mul[i, j, :] = np.dot(basis_inv, zw)
    new_form = np.dot(basis_mat.T, np.dot(form3, basis_mat))
    return CompositionAlgebra(name or f"{T.name}-rebuilt", mul, new_form)
