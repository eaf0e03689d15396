"""Exact rational linear algebra.

Everything here works on lists of :class:`fractions.Fraction`; no floating
point is used anywhere. Kernel bases come out in a canonical form so that
cocycle spaces computed from differently ordered constraint systems compare
equal.
"""
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]


def as_matrix(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None):
    """Reduced row-echelon form.

    Returns ``(matrix, pivot_columns)``; the input is not modified.
    """
    m = as_matrix(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        prow = m[r]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row = m[i]
                m[i] = [a - f * b if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def primitive(vec: Sequence) -> Vector:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    vec = [Fraction(x) for x in vec]
    nonzero = [x for x in vec if x != 0]
    if not nonzero:
        return tuple(vec)
    den = 1
    for x in nonzero:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if nonzero[0] < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def rref_kernel_basis(rows: Sequence[Sequence], ncols: Optional[int] = None) -> List[Vector]:
    """Canonical basis of the right kernel ``{k : M k = 0}``.

    One vector per free column of the RREF, ordered by free column. Each
    vector has 1 in its own free column and 0 in the other free columns
    before being scaled to primitive integer form.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(rows[0])
    m, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[free]
        basis.append(primitive(v))
    return basis


def mat_vec(rows: Sequence[Sequence], vec: Sequence) -> List[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, vec) if a), Fraction(0)) for row in rows]


def in_span(vec: Sequence, basis: Sequence[Sequence]):
    """Decide whether ``vec`` is a rational combination of ``basis``.

    Returns ``(True, coefficients)`` or ``(False, None)``.
    """
    vec = [Fraction(x) for x in vec]
    dim = len(vec)
    for b in basis:
        if len(b) != dim:
            raise ValueError(f"dimension mismatch: vector has {dim}, basis vector has {len(b)}")
    k = len(basis)
    if k == 0:
        if all(x == 0 for x in vec):
            return True, ()
        return False, None
    # Solve sum_j c_j basis[j] = vec; augmented system is dim x (k + 1).
    aug = [[Fraction(basis[j][i]) for j in range(k)] + [vec[i]] for i in range(dim)]
    m, pivots = rref(aug, k + 1)
    if k in pivots:
        return False, None
    coeffs = [Fraction(0)] * k
    for row, pc in zip(m, pivots):
        coeffs[pc] = row[k]
    # Non-independent bases leave some coefficients free; they are set to zero.
    return True, tuple(coeffs)


def span_basis(vectors: Sequence[Sequence], ncols: Optional[int] = None) -> List[Vector]:
    """Canonical basis of the span of ``vectors`` (nonzero RREF rows, primitive)."""
    if not vectors:
        return []
    m, _ = rref(vectors, ncols)
    return [primitive(row) for row in m]
