"""Small exact linear algebra toolkit over the rationals.

Plain Gaussian elimination on lists of Fractions.  Matrices here stay modest
(a few hundred rows at most), so clarity wins over asymptotics.  numpy object
arrays are accepted anywhere a matrix is expected.
"""

from __future__ import annotations

from fractions import Fraction


def _rows(mat):
    return [[Fraction(x) for x in row] for row in mat]


def rref(mat):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = _rows(mat)
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def nullspace(mat):
    """Basis of the right kernel, as a list of Fraction column vectors."""
    rows = _rows(mat)
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """One exact solution of mat @ x = rhs, or None if inconsistent."""
    rows = _rows(mat)
    b = [Fraction(x) for x in rhs]
    ncols = len(rows[0]) if rows else 0
    aug = [row + [bv] for row, bv in zip(rows, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def inverse(mat):
    """Exact inverse of a square rational matrix."""
    rows = _rows(mat)
    n = len(rows)
    aug = [rows[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def sparse_nullspace(rows, ncols):
    """Kernel basis for a system given as sparse rows ({column: coeff} dicts).

    Suited to large, very sparse homogeneous systems (e.g. Leibniz-rule
    constraints), where dense elimination would be wasteful.  Returns dense
    Fraction vectors.
    """
    pivots = {}  # leading column -> row dict normalized to leading coeff 1
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v != 0}
        while row:
            lead = min(row)
            if lead not in pivots:
                lv = row[lead]
                pivots[lead] = {c: v / lv for c, v in row.items()}
                break
            f = row.pop(lead)
            for c, v in pivots[lead].items():
                if c == lead:
                    continue
                nv = row.get(c, Fraction(0)) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    # back-substitute to reduced form
    for lead in sorted(pivots, reverse=True):
        prow = pivots[lead]
        for other, orow in pivots.items():
            if other == lead or lead not in orow:
                continue
            f = orow.pop(lead)
            for c, v in prow.items():
                if c == lead:
                    continue
                nv = orow.get(c, Fraction(0)) - f * v
                if nv:
                    orow[c] = nv
                else:
                    orow.pop(c, None)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for lead, prow in pivots.items():
            if free in prow:
                v[lead] = -prow[free]
        basis.append(v)
    return basis


def signature(sym):
    """Signature (positives, negatives, zeros) of a symmetric rational matrix.

    Computed by exact congruence: repeatedly split off one-dimensional
    blocks.  No square roots are taken, only signs of diagonal entries of a
    congruent diagonal matrix.
    """
    m = _rows(sym)
    n = len(m)
    pos = neg = zero = 0
    idx = list(range(n))
    while idx:
        # prefer a nonzero diagonal entry
        k = next((i for i in idx if m[i][i] != 0), None)
        if k is None:
            # all diagonal zero: find an off-diagonal pair and mix it in
            pair = None
            for i in idx:
                for j in idx:
                    if i != j and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                zero += len(idx)
                break
            i, j = pair
            # replace e_i by e_i + e_j: diagonal entry becomes 2*m[i][j]
            for t in range(n):
                m[i][t] = m[i][t] + m[j][t]
            for t in range(n):
                m[t][i] = m[t][i] + m[t][j]
            k = i
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx = [i for i in idx if i != k]
        # clear row/column k against the rest
        for i in idx:
            f = m[i][k] / d
            if f != 0:
                for t in range(n):
                    m[i][t] -= f * m[k][t]
                for t in range(n):
                    m[t][i] -= f * m[t][k]
    return pos, neg, zero
