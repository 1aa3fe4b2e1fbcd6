"""Composition algebras over the rationals.

An algebra is stored by its structure constants: ``mul_table[i][j][k]`` is the
e_k coefficient of e_i * e_j.  Basis convention: e_0 is always the two-sided
unit.  The bilinear form is normalized so that ``inner(a, a)`` equals the
quadratic norm, which makes a * conj(a) = inner(a, a) * e_0 hold and gives the
polarized law 2<a,b><c,d> = <ac,bd> + <ad,bc>.

All seven real composition algebras have rational (mostly integer) structure
constants, so every identity here is checked by exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .linalg import rank, sparse_nullspace
from .scalars import format_rational, parse_rational

ALGEBRA_NAMES = (
    "reals",
    "complexes",
    "quaternions",
    "octonions",
    "split_complexes",
    "split_quaternions",
    "split_octonions",
)

F0 = Fraction(0)
F1 = Fraction(1)


class AlgebraMismatch(ValueError):
    """Raised when combining elements of different algebras."""


class UnknownName(ValueError):
    """Raised for an algebra name outside the seven supported ones."""


def _obj_array(nested):
    a = np.empty(np.shape(nested), dtype=object)
    a[...] = np.vectorize(Fraction, otypes=[object])(np.array(nested, dtype=object))
    return a


def _fraction_array(shape):
    a = np.empty(shape, dtype=object)
    a.fill(F0)
    return a


def _as_int64(arr):
    """int64 copy of a small-integer Fraction array, or None if not exactly
    representable with a comfortable overflow margin."""
    flat = arr.ravel()
    if all(v.denominator == 1 and abs(v.numerator) < 1 << 20 for v in flat):
        return np.array([[int(v) for v in row] for row in arr.reshape(arr.shape[0], -1)], dtype=np.int64).reshape(arr.shape)
    return None


class CompositionAlgebra:
    """Immutable algebra-with-form given by rational structure constants."""

    def __init__(self, name, mul_table, form):
        mul_table = np.asarray(mul_table, dtype=object)
        form = np.asarray(form, dtype=object)
        dim = mul_table.shape[0]
        if mul_table.shape != (dim, dim, dim) or form.shape != (dim, dim):
            raise ValueError("inconsistent table shapes")
        self.name = name
        self.dim = dim
        self.mul_table = mul_table
        self.form = form
        # conjugation is forced by the form: conj(a) = -a + 2<a,e0> e0
        conj = _fraction_array((dim, dim))
        for i in range(dim):
            conj[i, i] = -F1
            conj[0, i] += 2 * form[i, 0]
        self.conj = conj
        self.mul_table.flags.writeable = False
        self.form.flags.writeable = False
        self.conj.flags.writeable = False

    # -- elements ---------------------------------------------------------

    def element(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError("wrong coordinate length")
        return AlgebraElement(coords, self)

    def basis(self, i):
        return self.element([F1 if j == i else F0 for j in range(self.dim)])

    def unit(self):
        return self.basis(0)

    def zero(self):
        return self.element([F0] * self.dim)

    # -- raw coordinate operations ----------------------------------------

    def mul_coords(self, x, y):
        m = np.tensordot(np.asarray(x, dtype=object), self.mul_table, axes=([0], [0]))
        return tuple(np.tensordot(np.asarray(y, dtype=object), m, axes=([0], [0])))

    def conj_coords(self, x):
        return tuple(np.tensordot(self.conj, np.asarray(x, dtype=object), axes=([1], [0])))

    def inner_coords(self, x, y):
        gy = np.tensordot(self.form, np.asarray(y, dtype=object), axes=([1], [0]))
        return sum((a * b for a, b in zip(x, gy)), F0)

    def __repr__(self):
        return f"CompositionAlgebra({self.name!r}, dim={self.dim})"

    def __eq__(self, other):
        return (
            isinstance(other, CompositionAlgebra)
            and self.dim == other.dim
            and (self.mul_table == other.mul_table).all()
            and (self.form == other.form).all()
        )

    def __hash__(self):
        return hash((self.name, self.dim))

    # -- serialization ------------------------------------------------------

    def to_json(self):
        def fmt(arr):
            if arr.ndim == 1:
                return [format_rational(v) for v in arr]
            return [fmt(sub) for sub in arr]

        return {
            "name": self.name,
            "dim": self.dim,
            "mul_table": fmt(self.mul_table),
            "form": fmt(self.form),
            "conj": fmt(self.conj),
        }

    @classmethod
    def from_json(cls, data):
        def parse(nested):
            if isinstance(nested, str):
                return parse_rational(nested)
            return [parse(sub) for sub in nested]

        alg = cls(data["name"], _obj_array(parse(data["mul_table"])), _obj_array(parse(data["form"])))
        declared = _obj_array(parse(data["conj"]))
        if not (declared == alg.conj).all():
            raise ValueError("declared conjugation disagrees with the form")
        return alg


class AlgebraElement:
    __slots__ = ("coords", "algebra")

    def __init__(self, coords, algebra):
        object.__setattr__(self, "coords", tuple(coords))
        object.__setattr__(self, "algebra", algebra)

    def __setattr__(self, *_):
        raise AttributeError("AlgebraElement is immutable")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            return False
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.algebra.name, self.coords))

    def _check(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatch(
                f"elements of {self.algebra.name} and {other.algebra.name} cannot be combined"
            )

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(tuple(a + b for a, b in zip(self.coords, other.coords)), self.algebra)

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(tuple(a - b for a, b in zip(self.coords, other.coords)), self.algebra)

    def __neg__(self):
        return AlgebraElement(tuple(-a for a in self.coords), self.algebra)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra.mul_coords(self.coords, other.coords), self.algebra)
        s = Fraction(other)
        return AlgebraElement(tuple(a * s for a in self.coords), self.algebra)

    def __rmul__(self, other):
        s = Fraction(other)
        return AlgebraElement(tuple(s * a for a in self.coords), self.algebra)

    def conjugate(self):
        return AlgebraElement(self.algebra.conj_coords(self.coords), self.algebra)

    def inner(self, other):
        self._check(other)
        return self.algebra.inner_coords(self.coords, other.coords)

    def norm(self):
        return self.inner(self)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __repr__(self):
        parts = ", ".join(format_rational(c) for c in self.coords)
        return f"<{self.algebra.name}: {parts}>"


# module-level operation aliases

def mul(x, y):
    return x * y


def conjugate(x):
    return x.conjugate()


def inner(x, y):
    return x.inner(y)


def norm(x):
    return x.norm()


@dataclass
class VerificationReport:
    passed: bool
    witnesses: list

    def __bool__(self):
        return self.passed


# -- constructions ----------------------------------------------------------


def build_base():
    """The one-dimensional algebra: ordinary rational multiplication."""
    table = _fraction_array((1, 1, 1))
    table[0, 0, 0] = F1
    form = _fraction_array((1, 1))
    form[0, 0] = F1
    return CompositionAlgebra("reals", table, form)


def cayley_dickson_double(A, name=None):
    """Double an algebra: pairs (a, b) with product (ac - d*conj(b), conj(a)*d + cb).

    The form on pairs is the orthogonal sum of two copies of the form on A.
    The result is a composition algebra exactly when A is associative.
    """
    n = A.dim
    T = A.mul_table
    C = A.conj
    big = _fraction_array((2 * n, 2 * n, 2 * n))
    # products of basis pairs: e_i = (e_i, 0), f_i = (0, e_i)
    big[:n, :n, :n] = T
    # e_i * f_j = (0, conj(e_i) e_j)
    big[:n, n:, n:] = np.tensordot(C, T, axes=([0], [0]))
    # f_i * e_j = (0, e_j e_i)
    big[n:, :n, n:] = T.transpose(1, 0, 2)
    # f_i * f_j = (-e_j conj(e_i), 0); tensordot over m of C[m,i] T[j,m,l] yields [i,j,l]
    big[n:, n:, :n] = -np.tensordot(C, T, axes=([0], [1]))
    form = _fraction_array((2 * n, 2 * n))
    form[:n, :n] = A.form
    form[n:, n:] = A.form
    return CompositionAlgebra(name or f"double({A.name})", big, form)


def _polarize(norms, cross_norm):
    """Build a bilinear form matrix from a quadratic form on a basis.

    norms[i] = N(b_i); cross_norm(i, j) = N(b_i + b_j).
    """
    d = len(norms)
    form = _fraction_array((d, d))
    for i in range(d):
        form[i, i] = Fraction(norms[i])
        for j in range(i + 1, d):
            form[i, j] = form[j, i] = Fraction(cross_norm(i, j) - norms[i] - norms[j], 2)
    return form


def _build_split_complexes():
    """R + R with componentwise product and swap conjugation.

    Unit-first basis: e0 = (1, 1), e1 = (1, -1); then e1*e1 = e0 and the norm
    N(x, y) = xy gives the form diag(1, -1).
    """
    basis = [(F1, F1), (F1, -F1)]

    def product(p, q):
        return (p[0] * q[0], p[1] * q[1])

    def to_coords(p):
        return ((p[0] + p[1]) / 2, (p[0] - p[1]) / 2)

    table = _fraction_array((2, 2, 2))
    for i in range(2):
        for j in range(2):
            table[i, j, :] = to_coords(product(basis[i], basis[j]))
    norm_q = lambda p: p[0] * p[1]
    form = _polarize(
        [norm_q(b) for b in basis],
        lambda i, j: norm_q(tuple(x + y for x, y in zip(basis[i], basis[j]))),
    )
    return CompositionAlgebra("split_complexes", table, form)


def _build_split_quaternions():
    """2x2 rational matrices; conj is the adjugate, norm is det.

    Unit-first basis: identity, diag(1,-1), offdiagonal symmetric,
    offdiagonal antisymmetric.  Form diagonalizes to signature (2, 2).
    """
    I = ((F1, F0), (F0, F1))
    H = ((F1, F0), (F0, -F1))
    S = ((F0, F1), (F1, F0))
    A = ((F0, F1), (-F1, F0))
    basis = [I, H, S, A]

    def product(p, q):
        return tuple(
            tuple(sum(p[i][k] * q[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )

    def to_coords(m):
        a, b = m[0]
        c, d = m[1]
        return ((a + d) / 2, (a - d) / 2, (b + c) / 2, (b - c) / 2)

    table = _fraction_array((4, 4, 4))
    for i in range(4):
        for j in range(4):
            table[i, j, :] = to_coords(product(basis[i], basis[j]))
    det = lambda m: m[0][0] * m[1][1] - m[0][1] * m[1][0]
    madd = lambda p, q: tuple(tuple(x + y for x, y in zip(pr, qr)) for pr, qr in zip(p, q))
    form = _polarize([det(b) for b in basis], lambda i, j: det(madd(basis[i], basis[j])))
    return CompositionAlgebra("split_quaternions", table, form)


def _cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot3(u, v):
    return sum(a * b for a, b in zip(u, v))


def build_zorn():
    """Split octonions as vector matrices [[a, u], [v, b]] with u, v in Q^3.

    Product: [[aa' + u.v', au' + b'u + v x v'], [a'v + bv' - u x u', bb' + v.u']];
    norm ab - u.v; conjugation swaps a, b and negates u, v.

    The stored basis is unit-first (the e0-unit convention every algebra here
    obeys): e0 = identity matrix, e1 = diag(1,-1), then u_1..u_3, v_1..v_3.
    In this basis some structure constants are half-integers (e.g.
    u_i v_i = (e0 + e1)/2), which is harmless over the rationals.
    """
    Z = (F0, F0, F0)

    def vm(a, u, v, b):
        return (Fraction(a), tuple(map(Fraction, u)), tuple(map(Fraction, v)), Fraction(b))

    unit3 = [(F1, F0, F0), (F0, F1, F0), (F0, F0, F1)]
    basis = [vm(1, Z, Z, 1), vm(1, Z, Z, -1)]
    basis += [vm(0, e, Z, 0) for e in unit3]
    basis += [vm(0, Z, e, 0) for e in unit3]

    def product(p, q):
        a, u, v, b = p
        a2, u2, v2, b2 = q
        return (
            a * a2 + _dot3(u, v2),
            tuple(a * x2 + b2 * x + y for x, x2, y in zip(u, u2, _cross3(v, v2))),
            tuple(a2 * y + b * y2 - z for y, y2, z in zip(v, v2, _cross3(u, u2))),
            b * b2 + _dot3(v, u2),
        )

    def to_coords(m):
        a, u, v, b = m
        return ((a + b) / 2, (a - b) / 2) + u + v

    table = _fraction_array((8, 8, 8))
    for i in range(8):
        for j in range(8):
            table[i, j, :] = to_coords(product(basis[i], basis[j]))
    norm_q = lambda m: m[0] * m[3] - _dot3(m[1], m[2])
    madd = lambda p, q: (
        p[0] + q[0],
        tuple(x + y for x, y in zip(p[1], q[1])),
        tuple(x + y for x, y in zip(p[2], q[2])),
        p[3] + q[3],
    )
    form = _polarize([norm_q(b) for b in basis], lambda i, j: norm_q(madd(basis[i], basis[j])))
    return CompositionAlgebra("split_octonions", table, form)


@lru_cache(maxsize=None)
def build_named(name):
    if name == "reals":
        return build_base()
    if name == "complexes":
        return cayley_dickson_double(build_base(), "complexes")
    if name == "quaternions":
        return cayley_dickson_double(build_named("complexes"), "quaternions")
    if name == "octonions":
        return cayley_dickson_double(build_named("quaternions"), "octonions")
    if name == "split_complexes":
        return _build_split_complexes()
    if name == "split_quaternions":
        return _build_split_quaternions()
    if name == "split_octonions":
        return build_zorn()
    raise UnknownName(f"unknown algebra name: {name!r}; choose one of {', '.join(ALGEBRA_NAMES)}")


# -- verification ------------------------------------------------------------


def check_composition(A, max_witnesses=5):
    """Exact verification of the composition axioms.

    Checks, on the whole basis: e0 is a two-sided unit, the form is symmetric
    and non-degenerate, a*conj(b) + b*conj(a) = 2<a,b> e0 on pairs, and the
    polarized multiplicativity <ac,bd> + <ad,bc> = 2<a,b><c,d> on quadruples.
    """
    T = A.mul_table
    g = A.form
    d = A.dim
    witnesses = []

    def note(tag, lhs, rhs):
        if len(witnesses) < max_witnesses:
            witnesses.append((tag, lhs, rhs))

    for i in range(d):
        left = tuple(T[0, i, :])
        right = tuple(T[i, 0, :])
        want = tuple(F1 if k == i else F0 for k in range(d))
        if left != want:
            note(("unit-left", i), left, want)
        if right != want:
            note(("unit-right", i), right, want)
    if (g != g.T).any():
        note(("form-symmetry",), "asymmetric", "symmetric")
    if rank(g.tolist()) != d:
        note(("form-rank",), rank(g.tolist()), d)

    # a*conj(b) + b*conj(a) = 2<a,b> e0 on basis pairs
    conj_prod = np.tensordot(T, A.conj, axes=([1], [0])).transpose(0, 2, 1)  # [i,j,k] = (e_i conj(e_j))_k
    pair = conj_prod + conj_prod.transpose(1, 0, 2)
    for i in range(d):
        for j in range(d):
            want = tuple(2 * g[i, j] if k == 0 else F0 for k in range(d))
            got = tuple(pair[i, j, :])
            if got != want:
                note(("conjugation-pair", i, j), got, want)

    # polarized multiplicativity on all basis quadruples; integer tables take
    # an int64 route (entries stay minuscule, so this is still exact)
    Ti, gi = _as_int64(T), _as_int64(g)
    if Ti is not None and gi is not None:
        T4, g4 = Ti, gi
    else:
        T4, g4 = T, g
    U = np.tensordot(T4, g4, axes=([2], [0]))        # [a,c,m] = <e_a e_c, e_m>
    L = np.tensordot(U, T4, axes=([2], [2]))         # [a,c,b,d] = <e_a e_c, e_b e_d>
    L = L.transpose(0, 2, 1, 3)                      # [a,b,c,d]
    lhs = L + L.transpose(0, 1, 3, 2)                # <ac,bd> + <ad,bc>
    rhs = 2 * np.multiply.outer(g4, g4)              # 2<a,b><c,d>
    bad = np.argwhere(lhs != rhs)
    for idx in bad[:max_witnesses]:
        i = tuple(int(t) for t in idx)
        note(
            ("polarized-composition",) + i,
            Fraction(int(lhs[i])) if Ti is not None else lhs[i],
            Fraction(int(rhs[i])) if Ti is not None else rhs[i],
        )
    return VerificationReport(not witnesses, witnesses)


def properties(A):
    """Associativity, commutativity and alternativity by exact basis scan.

    Alternativity is checked in polarized form (the associator is alternating
    in its first two and last two slots), which over the rationals is
    equivalent to (xx)y = x(xy) and (yx)x = y(xx) for all x, y.
    """
    T = A.mul_table
    left = np.tensordot(T, T, axes=([2], [0]))                    # [i,j,k,l] = ((e_i e_j) e_k)_l
    right = np.tensordot(T, T, axes=([2], [1])).transpose(2, 0, 1, 3)  # [i,j,k,l] = (e_i (e_j e_k))_l
    assoc_tensor = left - right
    associative = not assoc_tensor.any()
    commutative = not (T - T.transpose(1, 0, 2)).any()
    alt_left = assoc_tensor + assoc_tensor.transpose(1, 0, 2, 3)
    alt_right = assoc_tensor + assoc_tensor.transpose(0, 2, 1, 3)
    alternative = not alt_left.any() and not alt_right.any()
    return {"associative": associative, "commutative": commutative, "alternative": alternative}


def derivation_algebra(A):
    """Basis of the Lie algebra of derivations: D(ab) = D(a)b + a D(b).

    Solves the Leibniz constraints on all basis pairs as one big sparse exact
    linear system in the dim^2 matrix entries.
    """
    T = A.mul_table if isinstance(A, CompositionAlgebra) else np.asarray(A, dtype=object)
    return derivations_of_table(T)


def derivations_of_table(T):
    d = T.shape[0]

    def unknowns():
        # unknown D[p, q] gets index p*d + q
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

    basis = sparse_nullspace(unknowns(), d * d)
    out = []
    for v in basis:
        m = _fraction_array((d, d))
        for p in range(d):
            for q in range(d):
                m[p, q] = v[p * d + q]
        m.flags.writeable = False
        out.append(m)
    return out
