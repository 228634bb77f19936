"""Exact rational linear algebra and bounded lattice enumeration.

Everything here works over arbitrary-precision integers and
``fractions.Fraction``; no floating point is used anywhere.  The module
provides the numeric substrate for the rest of the package:

* :class:`ExactMatrix` with exact determinant, inverse, trace and
  signature,
* definiteness classification (negative definite / weakly negative
  definite / other),
* Smith normal form with unimodular transforms,
* complete enumeration of the points of an affine lattice coset lying
  inside an ellipsoid of a positive definite quadratic form.

All operations are pure functions on immutable inputs, so concurrent use
is safe and results do not depend on evaluation order.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import NotNegativeDefinite, SingularMatrix

Rational = Fraction


def _as_fraction_rows(rows: Iterable[Iterable]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


class DefinitenessClass(enum.Enum):
    NEGATIVE_DEFINITE = "negative-definite"
    WEAKLY_NEGATIVE_DEFINITE = "weakly-negative-definite"
    INDEFINITE_OR_OTHER = "indefinite/other"


class ExactMatrix:
    """Immutable square matrix with exact rational entries."""

    __slots__ = ("rows", "size")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = _as_fraction_rows(rows)
        self.size = len(self.rows)
        if any(len(r) != self.size for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "ExactMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"ExactMatrix({[list(map(str, r)) for r in self.rows]})"

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def is_symmetric(self) -> bool:
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.size)
            for j in range(i + 1, self.size)
        )

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.size)), Fraction(0))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows)))

    def neg(self) -> "ExactMatrix":
        return ExactMatrix([[-x for x in row] for row in self.rows])

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.size != self.size:
            raise ValueError("size mismatch")
        n = self.size
        return ExactMatrix(
            [
                [sum((self.rows[i][k] * other.rows[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
                for i in range(n)
            ]
        )

    def matvec(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.size:
            raise ValueError("size mismatch")
        vf = [Fraction(x) for x in v]
        return tuple(
            sum((self.rows[i][j] * vf[j] for j in range(self.size)), Fraction(0))
            for i in range(self.size)
        )

    def submatrix(self, keep: Sequence[int]) -> "ExactMatrix":
        """Principal submatrix on the given index list (kept in order)."""
        return ExactMatrix([[self.rows[i][j] for j in keep] for i in keep])

    def delete_row_col(self, k: int) -> "ExactMatrix":
        keep = [i for i in range(self.size) if i != k]
        return self.submatrix(keep)

    def determinant(self) -> Fraction:
        """Exact determinant, no rounding.

        Symmetric matrices whose off-diagonal support is a forest are
        eliminated in leaf order (zero fill-in, linear time); everything
        else goes through fraction-free Bareiss elimination.
        """
        if self.size == 0:
            return Fraction(1)
        if self.is_symmetric():
            d = _det_symmetric_forest(self.rows)
            if d is not None:
                return d
        return _det_bareiss(self.rows)

    def inverse(self) -> "ExactMatrix":
        """Exact rational inverse; raises SingularMatrix when det = 0."""
        n = self.size
        a = [list(row) for row in self.rows]
        inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise SingularMatrix("matrix is singular")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return ExactMatrix(inv)

    def signature_and_positive_count(self) -> tuple[int, int]:
        """(sigma, pi) = (#positive - #negative eigenvalues, #positive).

        Computed by exact symmetric congruence (Lagrange)
        diagonalization with rational pivots; a symmetric row/column
        addition repairs an all-zero diagonal block.  Raises
        SingularMatrix if a zero eigenvalue is detected.
        """
        if not self.is_symmetric():
            raise ValueError("signature requires a symmetric matrix")
        n = self.size
        a = [list(row) for row in self.rows]
        pos = neg = 0
        for k in range(n):
            if a[k][k] == 0:
                swap = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
                if swap is not None:
                    for row in a:
                        row[k], row[swap] = row[swap], row[k]
                    a[k], a[swap] = a[swap], a[k]
                else:
                    off = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                    if off is None:
                        raise SingularMatrix("zero eigenvalue detected")
                    # whole remaining diagonal is zero, so this addition
                    # puts 2*a[k][off] != 0 on the diagonal
                    for j in range(n):
                        a[k][j] += a[off][j]
                    for i in range(n):
                        a[i][k] += a[i][off]
            p = a[k][k]
            if p > 0:
                pos += 1
            else:
                neg += 1
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    f = a[i][k] / p
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
                    for j in range(k, n):
                        a[j][i] -= f * a[j][k]
        return pos - neg, pos


def _det_symmetric_forest(rows) -> Fraction | None:
    """Determinant by leaf elimination when the sparsity graph is a forest.

    Returns None when the structure is not a forest or a zero pivot
    shows up mid-elimination; the caller then falls back to Bareiss.
    """
    n = len(rows)
    adj: list[set[int]] = [set() for _ in range(n)]
    pair_count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != 0:
                adj[i].add(j)
                adj[j].add(i)
                pair_count += 1
    if pair_count >= n and n > 0:
        return None  # a forest on n vertices has at most n-1 edges
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in adj[i]:
            if j > i:
                ri, rj = find(i), find(j)
                if ri == rj:
                    return None
                parent[ri] = rj

    diag = [Fraction(rows[i][i]) for i in range(n)]
    off = {(min(i, j), max(i, j)): Fraction(rows[i][j]) for i in range(n) for j in adj[i] if j > i}
    det = Fraction(1)
    queue = [v for v in range(n) if len(adj[v]) <= 1]
    queued = [len(adj[v]) <= 1 for v in range(n)]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        piv = diag[v]
        if piv == 0:
            return None
        det *= piv
        if adj[v]:
            w = next(iter(adj[v]))
            e = off[(min(v, w), max(v, w))]
            diag[w] -= e * e / piv
            adj[w].discard(v)
            adj[v].clear()
            if len(adj[w]) <= 1 and not queued[w]:
                queued[w] = True
                queue.append(w)
    if head != n:
        return None
    return det


def _clear_denominators(rows) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; returns (int rows, total scale factor)."""
    scale = Fraction(1)
    out: list[list[int]] = []
    for row in rows:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        scale *= lcm
        out.append([int(x * lcm) for x in row])
    return out, scale


def _det_bareiss(rows) -> Fraction:
    """Fraction-free Bareiss determinant (exact)."""
    n = len(rows)
    a, scale = _clear_denominators(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if piv is None:
                return Fraction(0)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        ak = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (akk * ai[j] - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1]) / scale


def leading_principal_minors(m: ExactMatrix) -> list[Fraction] | None:
    """All n leading principal minors, or None if one of them is zero.

    Integer matrices get a single fraction-free elimination pass whose
    pivots are exactly the leading minors; rational ones fall back to
    per-minor determinants (only used on small matrices here).
    """
    n = m.size
    if not m.is_integer():
        minors = [m.submatrix(list(range(k))).determinant() for k in range(1, n + 1)]
        return None if any(x == 0 for x in minors) else minors
    a = [[int(x) for x in row] for row in m.rows]
    prev = 1
    minors: list[Fraction] = []
    for k in range(n):
        if k > 0:
            akk = a[k - 1][k - 1]
            ak = a[k - 1]
            for i in range(k, n):
                ai = a[i]
                aik = ai[k - 1]
                for j in range(k, n):
                    ai[j] = (akk * ai[j] - aik * ak[j]) // prev
                ai[k - 1] = 0
            prev = akk
        if a[k][k] == 0:
            return None
        minors.append(Fraction(a[k][k]))
    return minors


def is_negative_definite(m: ExactMatrix) -> bool:
    """Sylvester test: leading principal minors alternate sign, starting negative."""
    if not m.is_symmetric():
        return False
    minors = leading_principal_minors(m)
    if minors is None:
        return False
    return all((minor < 0) == (k % 2 == 0) for k, minor in enumerate(minors))


def classify_definiteness(m: ExactMatrix, high_degree_indices: Iterable[int]) -> DefinitenessClass:
    """Classify a symmetric invertible matrix.

    Negative definite beats weakly negative definite; the weak test asks
    that the principal submatrix of ``m^{-1}`` on ``high_degree_indices``
    (in the plumbing context, the vertices of degree >= 3) is negative
    definite.  An empty index set makes the weak condition vacuous.
    """
    if not m.is_symmetric():
        raise ValueError("classification requires a symmetric matrix")
    if m.determinant() == 0:
        raise SingularMatrix("matrix is singular")
    if is_negative_definite(m):
        return DefinitenessClass.NEGATIVE_DEFINITE
    idx = sorted(set(high_degree_indices))
    inv = m.inverse()
    if not idx or is_negative_definite(inv.submatrix(idx)):
        return DefinitenessClass.WEAKLY_NEGATIVE_DEFINITE
    return DefinitenessClass.INDEFINITE_OR_OTHER


# -- Smith normal form ---------------------------------------------------


def smith_normal_form(m: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Return (U, D, V) with U*m*V = D, U and V unimodular.

    D is diagonal with nonnegative entries d1 | d2 | ...; unit factors
    are normalized positive.
    """
    if not m.is_integer():
        raise ValueError("Smith normal form requires integer entries")
    n = m.size
    a = [[int(x) for x in row] for row in m.rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            dirty = False
            for i in range(t + 1, n):
                if a[i][t] != 0:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j] != 0:
                        dirty = True
            if dirty:
                continue
            witness = None
            for i in range(t + 1, n):
                if any(a[i][j] % a[t][t] != 0 for j in range(t + 1, n)):
                    witness = i
                    break
            if witness is None:
                break
            add_row(witness, t, 1)  # pull a non-divisible entry into the pivot row
        if t < n and a[t][t] < 0:
            for row in a:
                row[t] = -row[t]
            for row in v:
                row[t] = -row[t]
    return ExactMatrix(u), ExactMatrix(a), ExactMatrix(v)


# -- lattice enumeration -------------------------------------------------


def _range_under_quadratic(d: Fraction, t: Fraction, budget: Fraction) -> tuple[int, int]:
    """Integer range [lo, hi] of y with d*(y + t)^2 <= budget (d > 0).

    Solved exactly with integer square roots; an empty range is
    returned as (1, 0).
    """
    if budget < 0:
        return 1, 0
    r = budget / d
    tn, td = t.numerator, t.denominator
    # (y + t)^2 <= r  <=>  z^2 <= r*td^2  where z = y*td + tn is an integer
    zmax = math.isqrt((r.numerator * td * td) // r.denominator)
    lo = -((zmax + tn) // td)  # ceil((-zmax - tn) / td)
    hi = (zmax - tn) // td
    return lo, hi


def _ldl_ordered(g: ExactMatrix, order: Sequence[int]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Decompose a positive definite form for recursive enumeration.

    Eliminates variables in the given order so that, writing p for an
    original index, Q(x) = sum_p d[p] * (x_p + sum_q u[p][q] * x_q)^2
    where q ranges over indices that come EARLIER than p in ``order``
    reversed -- i.e. the recursion that fixes order[0] first, then
    order[1], ..., sees at each level a pivot in the already-fixed
    coordinates only.

    Raises NotNegativeDefinite when a pivot fails positivity.
    """
    n = g.size
    perm = list(reversed(order))  # eliminate the innermost variable first
    a = [[g.rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    d: list[Fraction] = [Fraction(0)] * n
    low = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        piv = a[k][k]
        if piv <= 0:
            raise NotNegativeDefinite("quadratic form is not positive definite")
        d[k] = piv
        for i in range(k + 1, n):
            low[i][k] = a[i][k] / piv
        for i in range(k + 1, n):
            for j in range(k + 1, i + 1):
                a[i][j] -= low[i][k] * low[j][k] * piv
                a[j][i] = a[i][j]
    dd: list[Fraction] = [Fraction(0)] * n
    uu = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        p = perm[k]
        dd[p] = d[k]
        for i in range(k + 1, n):
            uu[p][perm[i]] = low[i][k]
    return dd, uu


def enumerate_coset_under_bound(m: ExactMatrix, rep: Sequence[int], bound) -> Iterator[tuple[int, ...]]:
    """Yield every vector l in rep + 2*m*Z^s with -l^T m^{-1} l <= bound.

    Requires m negative definite so Q(l) = -l^T m^{-1} l is positive
    definite.  Each vector is produced exactly once, in lexicographic
    order of the integer parameter n where l = rep + 2*m*n (recursive
    Fincke-Pohst style bounds from an exact rational Cholesky-type
    decomposition; no heuristic boxes).
    """
    if not m.is_symmetric():
        raise ValueError("enumeration requires a symmetric matrix")
    if not is_negative_definite(m):
        raise NotNegativeDefinite("matrix is not negative definite")
    n = m.size
    bound = Fraction(bound)
    rep = [int(x) for x in rep]
    g = m.neg()  # positive definite
    # l = rep + 2*m*x  gives  Q(l) = 4*(x - c)^T g (x - c),  c = -m^{-1} rep / 2
    c = [-x / 2 for x in m.inverse().matvec(rep)]
    d, u = _ldl_ordered(g, list(range(n)))
    m_rows = [[int(x) for x in row] for row in m.rows]
    xs = [0] * n

    def rec(i: int, budget: Fraction) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(rep[r] + 2 * sum(m_rows[r][j] * xs[j] for j in range(n)) for r in range(n))
            return
        t = -c[i] + sum(u[i][j] * (xs[j] - c[j]) for j in range(i) if u[i][j])
        lo, hi = _range_under_quadratic(d[i], t, budget)
        for x in range(lo, hi + 1):
            xs[i] = x
            yield from rec(i + 1, budget - d[i] * (x + t) ** 2)
        xs[i] = 0

    yield from rec(0, bound / 4)
