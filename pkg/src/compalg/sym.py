"""Minimal super-Yang-Mills systems built from composition algebras.

A composition algebra K of dimension d gives a quadratic space
V = K + H of dimension d + 2, where H is a hyperbolic plane with
isotropic basis vectors alpha, beta and quadratic form
lambda alpha + mu beta -> lambda mu.  The Clifford algebra of V acts on
four copies of K with coordinates (u, v, x, y):

    rho(a):     (u, v, x, y) -> (conj(a) conj(v), conj(u) conj(a),
                                 -conj(a) conj(y), -conj(x) conj(a))
    rho(alpha): (u, v, x, y) -> (x, y, 0, 0)
    rho(beta):  (u, v, x, y) -> (0, 0, u, v)

The even part splits this into the chiral halves S = (u, y) and
S* = (v, x), dual to each other under the pairing

    (u, y) x (v, x) -> -<u, x> + <v, y>

Gamma: S x S -> V is the unique symmetric pairing satisfying
<rho(w) s, t> = (Gamma(s, t), w) for all w in V; it is computed here by
lowering the left side over a basis of V and raising with the inverse
form.  In closed form its K part is conj(u'y + uy') and its H
coefficients are -2<u, u'> and 2<y, y'> (the 2 compensates
<alpha, beta> = 1/2).  The special condition is the vanishing of the
quartic s -> |Gamma(s, s)|, which here reduces to the composition law:
|Gamma(s, s)| = 4(N(uy) - N(u)N(y)) = 0.  It is checked by complete
polarization over all basis quadruples, which is equivalent in
characteristic zero.

Everything is exact; the verifications report witnesses on failure
instead of raising.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import inverse, rank
from .triality import Triality, _scaled_int64, _zeros, _identity, _form_inverse

F0 = Fraction(0)
F1 = Fraction(1)
FHALF = Fraction(1, 2)


class NotSpecial(ValueError):
    """Raised when a triality extraction is attempted on a system that
    fails one of the verification checks."""


class HyperbolicSpace:
    """The split plane spanned by two isotropic vectors alpha, beta.

    The quadratic form sends lambda alpha + mu beta to lambda mu, so the
    polarized bilinear form has <alpha, beta> = 1/2.
    """

    labels = ("alpha", "beta")

    @property
    def form(self):
        return np.array([[F0, FHALF], [FHALF, F0]], dtype=object)


@dataclass
class SpecialReport:
    """Outcome of the system verifications.

    ``special_ok`` is None when only the system axioms were checked; it
    is only meaningful once the first three flags hold.  ``witnesses``
    holds tagged tuples locating the first few failures.
    """

    clifford_ok: bool
    symmetry_ok: bool
    eq_ok: bool
    special_ok: bool | None = None
    witnesses: list = field(default_factory=list)

    @property
    def passed(self):
        base = self.clifford_ok and self.symmetry_ok and self.eq_ok
        if self.special_ok is None:
            return base
        return base and self.special_ok

    def __bool__(self):
        return self.passed


class System:
    """The Clifford action of V = K + H on K^4 with its pairing and Gamma.

    Coordinates on K^4 are laid out as four d-blocks (u, v, x, y).  The
    chiral half S uses basis order (u, y), its dual S* uses (v, x).  The
    basis of V is the K basis followed by alpha, beta, so ``rho`` has
    d + 2 matrices of size 4d x 4d.  ``pairing`` is the S x S* duality
    matrix and ``gamma`` has shape (2d, 2d, d + 2).
    """

    __slots__ = ("name", "kdim", "form", "rho", "pairing", "gamma")

    def __init__(self, name, kdim, form, rho, pairing, gamma):
        form = np.array(form, dtype=object)
        pairing = np.array(pairing, dtype=object)
        gamma = np.array(gamma, dtype=object)
        if form.shape != (kdim + 2, kdim + 2):
            raise ValueError("V form has the wrong shape")
        if len(rho) != kdim + 2:
            raise ValueError("expected one rho matrix per V basis vector")
        if pairing.shape != (2 * kdim, 2 * kdim):
            raise ValueError("pairing has the wrong shape")
        if gamma.shape != (2 * kdim, 2 * kdim, kdim + 2):
            raise ValueError("gamma has the wrong shape")
        if rank([list(row) for row in pairing]) != 2 * kdim:
            raise ValueError("duality pairing is degenerate")
        self.name = name
        self.kdim = kdim
        self.form = form
        self.rho = tuple(np.array(m, dtype=object) for m in rho)
        self.pairing = pairing
        self.gamma = gamma

    @property
    def vdim(self):
        return self.kdim + 2

    @property
    def sdim(self):
        return 2 * self.kdim

    def __repr__(self):
        return f"System({self.name!r}, dim V={self.vdim}, dim S={self.sdim})"


def _s_indices(d):
    # positions of the S = (u, y) coordinates inside K^4
    return list(range(d)) + list(range(3 * d, 4 * d))


def _sstar_indices(d):
    # positions of the S* = (v, x) coordinates inside K^4
    return list(range(d, 3 * d))


def _chiral_blocks(sys):
    """Per V-basis matrices of rho restricted to S -> S* and S* -> S."""
    d = sys.kdim
    si = _s_indices(d)
    ti = _sstar_indices(d)
    to_star = [m[np.ix_(ti, si)] for m in sys.rho]
    to_s = [m[np.ix_(si, ti)] for m in sys.rho]
    return to_star, to_s


def build_system(A):
    """Assemble the system of a composition algebra; dim V = dim K + 2."""
    d = A.dim
    basis = [tuple(F1 if k == i else F0 for k in range(d)) for i in range(d)]
    conj = [A.conj_coords(b) for b in basis]

    rho = []
    for i in range(d):
        a_bar = conj[i]
        m = _zeros((4 * d, 4 * d))
        for j in range(d):
            right = A.mul_coords(conj[j], a_bar)  # conj(e_j) conj(a)
            left = A.mul_coords(a_bar, conj[j])   # conj(a) conj(e_j)
            for k in range(d):
                m[k, d + j] = left[k]              # u out of v
                m[d + k, j] = right[k]             # v out of u
                m[2 * d + k, 3 * d + j] = -left[k]   # x out of y
                m[3 * d + k, 2 * d + j] = -right[k]  # y out of x
        rho.append(m)
    m_alpha = _zeros((4 * d, 4 * d))
    m_beta = _zeros((4 * d, 4 * d))
    for j in range(d):
        m_alpha[j, 2 * d + j] = F1          # u out of x
        m_alpha[d + j, 3 * d + j] = F1      # v out of y
        m_beta[2 * d + j, j] = F1           # x out of u
        m_beta[3 * d + j, d + j] = F1       # y out of v
    rho.append(m_alpha)
    rho.append(m_beta)

    form = _zeros((d + 2, d + 2))
    form[:d, :d] = A.form
    form[d, d + 1] = FHALF
    form[d + 1, d] = FHALF

    # duality pairing between S = (u, y) and S* = (v, x)
    pairing = _zeros((2 * d, 2 * d))
    for i in range(d):
        for j in range(d):
            pairing[i, d + j] = -A.form[i, j]   # -<u, x>
            pairing[d + i, j] = A.form[j, i]    # +<v, y>

    # gamma from the defining equation, lowered over the V basis and
    # raised with the inverse form
    si = _s_indices(d)
    ti = _sstar_indices(d)
    lowered = [np.dot(pairing, m[np.ix_(ti, si)]).T for m in rho]
    ginv = _form_inverse(form)
    stacked = np.array(lowered, dtype=object)       # [nu, a, b]
    gamma = np.tensordot(ginv, stacked, axes=([1], [0]))
    gamma = np.transpose(gamma, (1, 2, 0))          # [a, b, mu]

    return System(A.name, d, form, rho, pairing, gamma)


def verify_system(sys, max_witnesses=5):
    """Check the system axioms exactly over the basis.

    clifford_ok covers the Clifford relations of rho on K^4 and their
    raised chiral-block form: with both vector indices raised, the
    anticommutators of the S -> S* and S* -> S blocks must be the scalar
    matrices 2 g^{mu nu} id, checked entry by entry per basis pair.
    symmetry_ok is the symmetry of gamma in its two S arguments, and
    eq_ok confirms that lowering gamma with the V form reproduces the
    pairing of rho(w)s against t on every basis triple.
    """
    dv = sys.vdim
    n4 = 4 * sys.kdim
    witnesses = []

    pairs = [(i, j) for i in range(dv) for j in range(i, dv)]
    wants = [2 * sys.form[i, j] for i, j in pairs]
    clifford_ok = True
    fast = _scaled_int64(list(sys.rho), wants)
    if fast is not None:
        mats, svals, _ = fast
        ident = np.eye(n4, dtype=np.int64)
        for (i, j), w in zip(pairs, svals):
            anti = mats[i] @ mats[j] + mats[j] @ mats[i]
            if not np.array_equal(anti, w * ident):
                clifford_ok = False
                if len(witnesses) < max_witnesses:
                    witnesses.append(("clifford", i, j))
    else:
        ident = _identity(n4)
        for (i, j), w in zip(pairs, wants):
            anti = np.dot(sys.rho[i], sys.rho[j]) + np.dot(sys.rho[j], sys.rho[i])
            if not (anti == w * ident).all():
                clifford_ok = False
                if len(witnesses) < max_witnesses:
                    witnesses.append(("clifford", i, j))

    # index identity: raise both vector indices and contract the chiral
    # blocks through the duality (which cancels in the contraction)
    ginv = _form_inverse(sys.form)
    to_star, to_s = _chiral_blocks(sys)
    up_star = np.tensordot(ginv, np.array(to_star, dtype=object), axes=([1], [0]))
    up_s = np.tensordot(ginv, np.array(to_s, dtype=object), axes=([1], [0]))
    blocks = [up_star[i] for i in range(dv)] + [up_s[i] for i in range(dv)]
    scalars = [2 * ginv[i, j] for i, j in pairs]
    fast = _scaled_int64(blocks, scalars)
    if fast is not None:
        mats, svals, _ = fast
        ups, downs = mats[:dv], mats[dv:]
        ident = np.eye(sys.sdim, dtype=np.int64)
        for (i, j), w in zip(pairs, svals):
            combo = downs[i] @ ups[j] + downs[j] @ ups[i]
            if not np.array_equal(combo, w * ident):
                clifford_ok = False
                if len(witnesses) < max_witnesses:
                    witnesses.append(("index", i, j))
    else:
        ident = _identity(sys.sdim)
        for (i, j), w in zip(pairs, scalars):
            combo = np.dot(up_s[i], up_star[j]) + np.dot(up_s[j], up_star[i])
            if not (combo == w * ident).all():
                clifford_ok = False
                if len(witnesses) < max_witnesses:
                    witnesses.append(("index", i, j))

    symmetry_ok = bool((sys.gamma == np.transpose(sys.gamma, (1, 0, 2))).all())
    if not symmetry_ok:
        bad = np.argwhere(sys.gamma != np.transpose(sys.gamma, (1, 0, 2)))
        for a, b, mu in bad[:max_witnesses]:
            witnesses.append(("gamma-symmetry", int(a), int(b), int(mu)))

    lowered = np.tensordot(sys.gamma, sys.form, axes=([2], [0]))  # [a, b, nu]
    want = np.transpose(
        np.array([np.dot(sys.pairing, m).T for m in to_star], dtype=object),
        (1, 2, 0))
    eq_ok = bool((lowered == want).all())
    if not eq_ok:
        bad = np.argwhere(lowered != want)
        for a, b, nu in bad[:max_witnesses]:
            witnesses.append(("eq", int(a), int(b), int(nu)))

    return SpecialReport(clifford_ok, symmetry_ok, eq_ok, None, witnesses)


def _int64_copy(arr, bound=10**7):
    """Denominator-cleared int64 copy of a Fraction array, or None.

    The scale factor is dropped: callers only test homogeneous
    identities against zero, which scaling cannot disturb.
    """
    den = 1
    for v in arr.flat:
        den = math.lcm(den, Fraction(v).denominator)
    if den > 256:
        return None
    out = np.empty(arr.shape, dtype=np.int64)
    for idx in np.ndindex(arr.shape):
        v = Fraction(arr[idx]) * den
        if abs(v.numerator) > bound:
            return None
        out[idx] = v.numerator
    return out


def verify_special(sys, samples=100, seed=20250825, max_witnesses=5):
    """Check the quartic vanishing condition on top of the system axioms.

    The polarized form is tested on every basis quadruple of S, which is
    a complete check in characteristic zero; ``samples`` random rational
    spinors additionally confirm |Gamma(s, s)| = 0 directly.
    """
    base = verify_system(sys, max_witnesses=max_witnesses)
    n = sys.sdim
    witnesses = list(base.witnesses)

    vecs = sys.gamma.reshape(n * n, sys.vdim)
    iv = _int64_copy(vecs)
    iform = _int64_copy(sys.form)
    if iv is not None and iform is not None:
        gram = iv @ iform @ iv.T
    else:
        gram = np.dot(vecs, np.dot(sys.form, vecs.T))
    q = gram.reshape(n, n, n, n)
    # q[a,b,c,e] = (Gamma(a,b), Gamma(c,e)); the two transposes realize
    # (Gamma(a,c), Gamma(b,e)) and (Gamma(a,e), Gamma(b,c))
    total = q + q.transpose(0, 2, 1, 3) + q.transpose(0, 2, 3, 1)
    bad = np.argwhere(total != 0)
    special_ok = bad.shape[0] == 0
    for row in bad[:max_witnesses]:
        witnesses.append(("special",) + tuple(int(z) for z in row))

    igamma = _int64_copy(sys.gamma)
    rng = random.Random(seed)
    diag_bad = 0
    for _ in range(samples):
        coords = [rng.randint(-4, 4) for _ in range(n)]
        if igamma is not None and iform is not None:
            s = np.array(coords, dtype=np.int64)
            g = np.tensordot(s, np.tensordot(s, igamma, axes=([0], [0])),
                             axes=([0], [0]))
            val = int(g @ iform @ g)
        else:
            s = np.array([Fraction(c) for c in coords], dtype=object)
            g = np.tensordot(s, np.tensordot(s, sys.gamma, axes=([0], [0])),
                             axes=([0], [0]))
            val = np.dot(g, np.dot(sys.form, g))
        if val != 0:
            special_ok = False
            if diag_bad < max_witnesses:
                witnesses.append(("diagonal", tuple(coords)))
                diag_bad += 1

    return SpecialReport(base.clifford_ok, base.symmetry_ok, base.eq_ok,
                         bool(special_ok), witnesses)


def extract_triality(sys):
    """Read a triality (W, S+, S-) off a special system for V = W + H.

    The idempotents rho(alpha)rho(beta) and rho(beta)rho(alpha) split K^4
    into the (u, v) and (x, y) planes; W is the part of V orthogonal to
    the hyperbolic plane, S+ is the u block and S- the v block.  The
    forms on S+/- are transported from the duality pairing through
    rho(beta), which maps u to x and v to y invertibly, and the trilinear
    tensor contracts the u -> v block of rho with the S- form.  The
    result of a built system equals triality_from_algebra of the source
    algebra exactly, and always passes verify_triality.
    """
    report = verify_special(sys)
    if not report.passed:
        failing = [name for name, ok in (
            ("clifford", report.clifford_ok), ("symmetry", report.symmetry_ok),
            ("eq", report.eq_ok), ("special", report.special_ok)) if not ok]
        raise NotSpecial(f"system {sys.name!r} fails: {', '.join(failing)}")

    d = sys.kdim
    wform = sys.form[:d, :d]
    si = _s_indices(d)
    ti = _sstar_indices(d)
    rho_beta = sys.rho[d + 1]
    to_star = rho_beta[np.ix_(ti, si)]   # sends u into the x block
    to_s = rho_beta[np.ix_(si, ti)]      # sends v into the y block
    fplus = -np.dot(sys.pairing, to_star)[:d, :d]
    fminus = np.dot(to_s.T, sys.pairing)[:d, :d]

    tensor = np.array(
        [np.dot(sys.rho[nu][d:2 * d, 0:d].T, fminus) for nu in range(d)],
        dtype=object)
    return Triality((wform, fplus, fminus), tensor, name=f"{sys.name}-system")
