r"""
Exact linear algebra and a small simplex solver over the rationals.

Everything in this module works with ``fractions.Fraction`` entries and is
exact.  Matrices are plain lists of lists; vectors are lists.  The sizes that
show up in this package are tiny (a few dozen rows/columns), so clarity wins
over sparsity tricks.
"""

from fractions import Fraction
from math import gcd

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x):
    """Coerce ints/strings/Fractions to Fraction (floats are rejected)."""
    if isinstance(x, float):
        raise TypeError("refusing to coerce float to Fraction implicitly")
    return Fraction(x)


def mat_copy(rows):
    return [[Fraction(x) for x in r] for r in rows]


def dot(u, v):
    if len(u) != len(v):
        raise ValueError("dot: length mismatch")
    s = 0
    for a, b in zip(u, v):
        s += a * b
    return s


def mat_vec(rows, v):
    return [dot(r, v) for r in rows]


def rref(rows, ncols=None):
    """
    Reduced row echelon form.

    Returns ``(reduced, pivots)`` where ``pivots`` is the list of pivot
    column indices.  The input is not modified.
    """
    m = mat_copy(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """
    Basis of ``{x : rows @ x = 0}`` as a list of Fraction vectors.

    The basis is the standard rref one: for each free column there is a
    basis vector with a 1 there and pivot entries filled in.
    """
    m, pivots = rref(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def integerize(v):
    """
    Scale a rational vector to a primitive integer vector (gcd 1), keeping
    direction.  The zero vector is returned unchanged.
    """
    v = [Fraction(x) for x in v]
    if all(x == 0 for x in v):
        return [0] * len(v)
    denom_lcm = 1
    for x in v:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints]


class SimplexResult:
    """Outcome of an exact LP solve."""

    __slots__ = ("status", "x", "value")

    def __init__(self, status, x=None, value=None):
        self.status = status  # 'optimal' | 'infeasible' | 'unbounded'
        self.x = x
        self.value = value

    def __repr__(self):
        return "SimplexResult(status=%r, value=%r)" % (self.status, self.value)


def _iterate(T, obj, basis, n_enter):
    """
    Run primal simplex pivots on tableau ``T`` (rows end with the rhs) with
    objective row ``obj`` until optimal or unbounded.  Entering columns are
    restricted to indices ``< n_enter``.  Bland's rule throughout, so the
    iteration always terminates.
    """
    m = len(T)
    while True:
        col = None
        for j in range(n_enter):
            if obj[j] > 0:
                col = j
                break
        if col is None:
            return "optimal"
        row = None
        best = None
        for i in range(m):
            if T[i][col] > 0:
                ratio = T[i][-1] / T[i][col]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row is None:
            return "unbounded"
        pv = T[row][col]
        T[row] = [x / pv for x in T[row]]
        for i in range(m):
            if i != row and T[i][col] != 0:
                f = T[i][col]
                T[i] = [a - f * p for a, p in zip(T[i], T[row])]
        if obj[col] != 0:
            f = obj[col]
            for j in range(len(obj)):
                obj[j] -= f * T[row][j]
        basis[row] = col


def simplex_max(c, A, b):
    """
    Maximize ``c . x`` subject to ``A x = b``, ``x >= 0``, exactly.

    Two-phase primal simplex with Bland's rule.  Returns a SimplexResult
    whose ``x`` is an optimal vertex when ``status == 'optimal'``.
    """
    m = len(A)
    n = len(c)
    A = mat_copy(A)
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]
    for i in range(m):
        if len(A[i]) != n:
            raise ValueError("simplex_max: ragged constraint matrix")
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    # Phase one: artificial basis, minimize the artificials' sum.  The
    # objective row is the sum of the constraint rows over the real columns
    # (reduced costs of the artificial columns start at zero: they are basic).
    T = [A[i] + [ONE if j == i else ZERO for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    obj = [ZERO] * (n + m + 1)
    for j in list(range(n)) + [n + m]:
        obj[j] = sum(T[i][j] for i in range(m))
    _iterate(T, obj, basis, n)
    if obj[-1] != 0:
        return SimplexResult("infeasible")

    # Drive any leftover artificials out of the basis; rows that are all
    # zero on the real columns are redundant constraints and stay inert.
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if T[i][j] != 0:
                    pv = T[i][j]
                    T[i] = [x / pv for x in T[i]]
                    for k in range(m):
                        if k != i and T[k][j] != 0:
                            f = T[k][j]
                            T[k] = [a - f * p for a, p in zip(T[k], T[i])]
                    basis[i] = j
                    break

    # Phase two on the original objective, artificial columns frozen.
    obj2 = c + [ZERO] * m + [ZERO]
    for i in range(m):
        if basis[i] < n and obj2[basis[i]] != 0:
            f = obj2[basis[i]]
            for j in range(len(obj2)):
                obj2[j] -= f * T[i][j]
    status = _iterate(T, obj2, basis, n)
    if status == "unbounded":
        return SimplexResult("unbounded")
    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    return SimplexResult("optimal", x=x, value=dot(c, x))
