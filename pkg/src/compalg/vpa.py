"""Vector product algebras: (V, x, dot) with an alternating bilinear product.

The defining identity, in its polarized form, is

    (x*y)*z + (z*y)*x = 2<x,z>y - <x,y>z - <z,y>x      (writing * for the product)

together with total antisymmetry of <x, y*z>.  Extracting the imaginary part
of a composition algebra and formally adjoining a unit are mutually inverse;
both directions are implemented and the round trip is table-exact.

Sign conventions, fixed here once and verified by tests: for imaginary u, v
the algebra product decomposes as uv = -<u,v>*1 + u*v (scalar part carries a
minus sign), and the Clifford anticommutator is L(u)L(v) + L(v)L(u) =
-2<u,v>*id, the factor 2 being forced by polarizing L(u)^2 = -<u,u>*id when
the bilinear form is normalized so that <u,u> is the quadratic norm.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebras import (
    CompositionAlgebra,
    VerificationReport,
    _fraction_array,
    check_composition,
)
from .linalg import inverse, nullspace, rank, sparse_nullspace
from .scalars import format_rational, parse_rational

F0 = Fraction(0)
F1 = Fraction(1)


class InvalidVPA(ValueError):
    """Raised when adjoin_unit is fed a structure that fails the axioms."""


class DegenerateComplement(ValueError):
    """The form of the algebra restricts degenerately to the unit's complement."""


class VectorProductAlgebra:
    def __init__(self, name, cross_table, dot):
        cross_table = np.asarray(cross_table, dtype=object)
        dot = np.asarray(dot, dtype=object)
        dim = dot.shape[0] if dot.ndim == 2 else 0
        if cross_table.shape != (dim, dim, dim) or dot.shape != (dim, dim):
            raise ValueError("inconsistent table shapes")
        self.name = name
        self.dim = dim
        self.cross_table = cross_table
        self.dot = dot
        self.cross_table.flags.writeable = False
        self.dot.flags.writeable = False

    def cross_coords(self, u, v):
        m = np.tensordot(np.asarray(u, dtype=object), self.cross_table, axes=([0], [0]))
        return tuple(np.tensordot(np.asarray(v, dtype=object), m, axes=([0], [0])))

    def dot_coords(self, u, v):
        gv = np.tensordot(self.dot, np.asarray(v, dtype=object), axes=([1], [0]))
        return sum((a * b for a, b in zip(u, gv)), F0)

    def __repr__(self):
        return f"VectorProductAlgebra({self.name!r}, dim={self.dim})"

    def __eq__(self, other):
        return (
            isinstance(other, VectorProductAlgebra)
            and self.dim == other.dim
            and (self.cross_table == other.cross_table).all()
            and (self.dot == other.dot).all()
        )

    def __hash__(self):
        return hash((self.name, self.dim))

    def to_json(self):
        def fmt(arr):
            if arr.ndim == 1:
                return [format_rational(v) for v in arr]
            return [fmt(sub) for sub in arr]

        return {"name": self.name, "dim": self.dim, "cross_table": fmt(self.cross_table), "dot": fmt(self.dot)}

    @classmethod
    def from_json(cls, data):
        def parse(nested):
            if isinstance(nested, str):
                return parse_rational(nested)
            return [parse(sub) for sub in nested]

        d = data["dim"]
        ct = _fraction_array((d, d, d))
        dt = _fraction_array((d, d))
        if d:
            ct[...] = np.array(parse(data["cross_table"]), dtype=object)
            dt[...] = np.array(parse(data["dot"]), dtype=object)
        return cls(data["name"], ct, dt)


class LMap:
    """Left Clifford action of a single vector u on F + V:
    (a, w) |-> (-u.w, a u + u x w)."""

    def __init__(self, V, u):
        d = V.dim
        u = tuple(Fraction(c) for c in u)
        m = _fraction_array((d + 1, d + 1))
        gu = np.tensordot(V.dot, np.asarray(u, dtype=object), axes=([1], [0]))
        for j in range(d):
            m[0, 1 + j] = -gu[j]
        for i in range(d):
            m[1 + i, 0] = u[i]
        for j in range(d):
            col = V.cross_coords(u, [F1 if t == j else F0 for t in range(d)])
            for i in range(d):
                m[1 + i, 1 + j] = col[i]
        m.flags.writeable = False
        self.matrix = m
        self.vector = u


def l_map(V, u):
    return LMap(V, u)


def imaginary_part(A):
    """The orthogonal complement of the unit, with product = the trace-free
    part of the algebra product and dot = the restricted form.

    Raises DegenerateComplement if the restricted form is singular.
    """
    d = A.dim
    comp = nullspace([list(A.form[0, :])])  # vectors orthogonal to e0
    n = len(comp)
    dot = _fraction_array((n, n))
    for i in range(n):
        for j in range(n):
            dot[i, j] = A.inner_coords(comp[i], comp[j])
    if n and rank(dot.tolist()) != n:
        raise DegenerateComplement(f"form of {A.name} is degenerate on the unit's complement")
    # change of basis: columns e0, comp[0], ..., comp[n-1]
    cols = [[F1 if i == 0 else F0 for i in range(d)]] + comp
    M = [[cols[j][i] for j in range(d)] for i in range(d)]
    Minv = inverse(M)
    cross = _fraction_array((n, n, n))
    for i in range(n):
        for j in range(n):
            prod = A.mul_coords(comp[i], comp[j])
            decomp = [sum(Minv[r][s] * prod[s] for s in range(d)) for r in range(d)]
            cross[i, j, :] = decomp[1:]
            # consistency of the scalar part: uv = -<u,v> 1 + u x v
            if decomp[0] != -dot[i, j]:
                raise ValueError("algebra product has unexpected scalar part on imaginaries")
    return VectorProductAlgebra(f"im({A.name})", cross, dot)


def verify_vpa(V, max_witnesses=5):
    """Exact check of all vector product axioms on the whole basis."""
    T = V.cross_table
    g = V.dot
    d = V.dim
    witnesses = []

    def note(tag, lhs, rhs):
        if len(witnesses) < max_witnesses:
            witnesses.append((tag, lhs, rhs))

    if (g != g.T).any():
        note(("dot-symmetry",), "asymmetric", "symmetric")
    if d and rank(g.tolist()) != d:
        note(("dot-rank",), rank(g.tolist()), d)
    anti = T + T.transpose(1, 0, 2)
    for idx in np.argwhere(anti != F0)[:max_witnesses]:
        i = tuple(int(t) for t in idx)
        note(("alternating",) + i[:2], anti[i], F0)
    # associativity of the form: <x*y, z> totally antisymmetric comes down to
    # <b_i * b_j, b_k> = <b_i, b_j * b_k> on the basis
    left = np.tensordot(T, g, axes=([2], [0]))   # [i,j,m] = <b_i x b_j, b_m>
    right = np.transpose(left, (2, 0, 1))        # [i,j,k] = <b_j x b_k, b_i> = <b_i, b_j x b_k>
    for idx in np.argwhere(left != right)[:max_witnesses]:
        i = tuple(int(t) for t in idx)
        note(("form-associativity",) + i, left[i], right[i])
    # polarized product identity on all basis triples
    lhs = np.tensordot(T, T, axes=([2], [0]))            # [x,y,z,r] = ((x*y)*z)_r
    lhs = lhs + lhs.transpose(2, 1, 0, 3)                # + ((z*y)*x)_r
    eye = _fraction_array((d, d))
    for i in range(d):
        eye[i, i] = F1
    rhs = (
        2 * np.multiply.outer(g, eye).transpose(0, 2, 1, 3)   # 2<x,z> delta_{y,r}
        - np.multiply.outer(g, eye).transpose(0, 1, 2, 3)     # <x,y> delta_{z,r}
        - np.multiply.outer(g, eye).transpose(2, 1, 0, 3)     # <z,y> delta_{x,r}
    )
    for idx in np.argwhere(lhs != rhs)[:max_witnesses]:
        i = tuple(int(t) for t in idx)
        note(("vpa-identity",) + i[:3], tuple(lhs[i[0], i[1], i[2], :]), tuple(rhs[i[0], i[1], i[2], :]))
    return VerificationReport(not witnesses, witnesses)


def adjoin_unit(V):
    """Composition algebra on F + V: (s,u)(t,v) = (st - u.v, sv + tu + u x v),
    unit (1, 0), form st + u.v."""
    rep = verify_vpa(V)
    if not rep.passed:
        raise InvalidVPA(f"not a vector product algebra: {rep.witnesses[0]}")
    d = V.dim
    table = _fraction_array((d + 1, d + 1, d + 1))
    table[0, 0, 0] = F1
    for i in range(d):
        table[0, 1 + i, 1 + i] = F1
        table[1 + i, 0, 1 + i] = F1
        for j in range(d):
            table[1 + i, 1 + j, 0] = -V.dot[i, j]
            table[1 + i, 1 + j, 1:] = V.cross_table[i, j, :]
    form = _fraction_array((d + 1, d + 1))
    form[0, 0] = F1
    form[1:, 1:] = V.dot
    return CompositionAlgebra(f"unit+{V.name}", table, form)


def clifford_check(V, max_witnesses=5):
    """L(u)L(v) + L(v)L(u) = -2<u,v> id on F + V, for all basis pairs.

    The factor 2 comes from polarizing L(u)^2 = -<u,u> id; on orthogonal
    pairs both sides vanish, so this is the only reading compatible with the
    squared form.
    """
    d = V.dim
    witnesses = []
    mats = [LMap(V, [F1 if t == i else F0 for t in range(d)]).matrix for i in range(d)]
    eye = _fraction_array((d + 1, d + 1))
    for i in range(d + 1):
        eye[i, i] = F1
    for i in range(d):
        for j in range(i, d):
            anti = np.tensordot(mats[i], mats[j], axes=([1], [0])) + np.tensordot(
                mats[j], mats[i], axes=([1], [0])
            )
            want = -2 * V.dot[i, j] * eye
            if (anti != want).any():
                if len(witnesses) < max_witnesses:
                    witnesses.append(((i, j), anti.tolist(), want.tolist()))
    return VerificationReport(not witnesses, witnesses)


def vpa_derivations(V):
    """Basis of derivations of (V, x, dot): Leibniz for the product plus
    antisymmetry for the dot.

    Including the dot matters only in degenerate low dimension (a zero
    product on a line has every matrix as a product-derivation), and makes
    the derivation algebra match the one of the composition algebra it came
    from, in every dimension.
    """
    T = V.cross_table
    g = V.dot
    d = V.dim

    def equations():
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    row = {}

                    def add(p, q, c):
                        if c:
                            key = p * d + q
                            row[key] = row.get(key, F0) + c

                    for m in range(d):
                        add(k, m, T[i, j, m])
                    for p in range(d):
                        add(p, i, -T[p, j, k])
                        add(p, j, -T[i, p, k])
                    if row:
                        yield row
        for i in range(d):
            for j in range(d):
                row = {}
                for p in range(d):
                    if g[p, j]:
                        row[p * d + i] = row.get(p * d + i, F0) + g[p, j]
                    if g[i, p]:
                        row[p * d + j] = row.get(p * d + j, F0) + g[i, p]
                if row:
                    yield row

    basis = sparse_nullspace(equations(), d * d)
    out = []
    for v in basis:
        m = _fraction_array((d, d))
        for p in range(d):
            for q in range(d):
                m[p, q] = v[p * d + q]
        m.flags.writeable = False
        out.append(m)
    return out
