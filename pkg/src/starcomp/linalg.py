"""Exact rational linear algebra over graph adjacency matrices.

Everything here is exact: scalars are Python ints and fractions.Fraction,
matrices are numpy object arrays, and elimination is fraction-free (Bareiss)
so rationals only appear at back-substitution.  The methods implemented on
top - characteristic and minimal polynomials, eigenvalue multiplicity,
main/non-main classification, and the resolvent bilinear form
<x, y> = x^T (mu I - A)^{-1} y - all reduce to these primitives.

Small integer matrices are routed through the int64 kernels when an overflow
guard certifies the fast path; otherwise big-integer elimination runs, so the
answer is identical either way.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from . import kernels
from .graphs import Graph


class SingularResolventError(ValueError):
    """mu is an eigenvalue, so (mu I - A) is singular."""


class NotAnEigenvalueError(ValueError):
    """The question requires mu to be an eigenvalue and it is not."""


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" into an exact rational; anything else is rejected."""
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# Polynomials (exact coefficients, low degree first)
# ---------------------------------------------------------------------------


class Polynomial:
    """Dense polynomial with exact rational coefficients c0..cd."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.coeffs or not other.coeffs:
            return Polynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.degree < 0:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.coeffs[-1]
        for k in range(len(rem) - 1, d - 1, -1):
            factor = rem[k] / lead
            if factor == 0:
                continue
            q[k - d] = factor
            for i in range(d + 1):
                rem[k - d + i] -= factor * other.coeffs[i]
        return Polynomial(q), Polynomial(rem)

    def divides(self, other: "Polynomial") -> bool:
        _, r = divmod(other, self)
        return r.degree < 0

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    @classmethod
    def from_roots(cls, roots: Sequence) -> "Polynomial":
        poly = cls([1])
        for r in roots:
            poly = poly * cls([-Fraction(r), 1])
        return poly

    def rational_roots(self) -> list[tuple[Fraction, int]]:
        """All rational roots with multiplicities, ascending."""
        if self.degree < 0:
            raise ValueError("zero polynomial has every root")
        poly = self
        roots: list[tuple[Fraction, int]] = []
        mult0 = 0
        while poly.coeff(0) == 0 and poly.degree > 0:
            poly = Polynomial(poly.coeffs[1:])
            mult0 += 1
        if mult0:
            roots.append((Fraction(0), mult0))
        if poly.degree >= 1:
            scale = 1
            for c in poly.coeffs:
                scale = scale * c.denominator // gcd(scale, c.denominator)
            ints = [int(c * scale) for c in poly.coeffs]
            content = 0
            for v in ints:
                content = gcd(content, v)
            ints = [v // content for v in ints]
            lead, const = abs(ints[-1]), abs(ints[0])
            for p in _divisors(const):
                for q in _divisors(lead):
                    if gcd(p, q) != 1:
                        continue
                    for cand in (Fraction(p, q), Fraction(-p, q)):
                        mult = 0
                        while poly(cand) == 0:
                            poly, _ = divmod(poly, Polynomial([-cand, 1]))
                            mult += 1
                        if mult:
                            roots.append((cand, mult))
        return sorted(roots)

    def factor_rational(self) -> tuple[list[tuple[Fraction, int]], "Polynomial"]:
        """(rational roots with multiplicities, root-free residual factor)."""
        roots = self.rational_roots()
        residual = self
        for r, m in roots:
            for _ in range(m):
                residual, _ = divmod(residual, Polynomial([-r, 1]))
        return roots, residual

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self) -> str:
        if self.degree < 0:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            mag = abs(c)
            term = (
                "1" if (mag == 1 and k == 0)
                else "" if mag == 1
                else format_rational(mag)
            )
            if k > 0:
                xs = "x" if k == 1 else f"x^{k}"
                term = f"{term}*{xs}" if term else xs
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# Exact matrices
# ---------------------------------------------------------------------------


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Adjacency matrix as an exact (object dtype, Python int) array."""
    return g.adj.astype(object)


def identity_matrix(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=object)
    for i in range(n):
        m[i, i] = 1
    return m


def _as_int_rows(m) -> tuple[list[list[int]], int]:
    """Clear denominators: integer row list plus the (positive) scale used."""
    rows = [list(r) for r in m]
    scale = 1
    for r in rows:
        for v in r:
            d = Fraction(v).denominator
            scale = scale * d // gcd(scale, d)
    out = [[int(v * scale) for v in r] for r in rows]
    return out, scale


def _rank_bigint(rows: list[list[int]]) -> int:
    """Bareiss elimination with Python big integers; no overflow, ever."""
    m = [r[:] for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, nr):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, nc):
                row_i[j] = (row_i[j] * piv - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r


def rank(m) -> int:
    """Exact rank of a rational matrix (nested sequence or object array)."""
    rows, _ = _as_int_rows(m)
    if not rows or not rows[0]:
        return 0
    fast = kernels.try_int_rank(rows)
    if fast is not None:
        return fast
    return _rank_bigint(rows)


def solve_exact(m, rhs) -> np.ndarray:
    """Solve m x = rhs exactly for square m; raises SingularResolventError.

    Fraction-free forward elimination on the integer-scaled augmented matrix,
    then rational back-substitution.  rhs may be a vector or a matrix.
    """
    a_rows, a_scale = _as_int_rows(m)
    n = len(a_rows)
    rhs_arr = np.asarray(rhs, dtype=object)
    vector = rhs_arr.ndim == 1
    b = rhs_arr.reshape(n, -1) if vector else rhs_arr
    if n == 0:
        return np.zeros(0 if vector else (0, b.shape[1]), dtype=object)
    b_rows, b_scale = _as_int_rows(b)
    width = len(b_rows[0])
    aug = [a_rows[i] + b_rows[i] for i in range(n)]
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise SingularResolventError("matrix is singular")
        if p != c:
            aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        for i in range(c + 1, n):
            mic = aug[i][c]
            row_i, row_c = aug[i], aug[c]
            for j in range(c + 1, n + width):
                row_i[j] = (row_i[j] * piv - mic * row_c[j]) // prev
            row_i[c] = 0
        prev = piv
    x = np.zeros((n, width), dtype=object)
    for col in range(width):
        for i in range(n - 1, -1, -1):
            acc = Fraction(aug[i][n + col])
            for j in range(i + 1, n):
                acc -= aug[i][j] * x[j, col]
            x[i, col] = Fraction(acc, aug[i][i])
    # undo the row scaling: (a_scale * M) x' = (b_scale * rhs)
    x = x * Fraction(a_scale, b_scale)
    return x[:, 0] if vector else x


def invert_exact(m) -> np.ndarray:
    n = len(m)
    return solve_exact(m, identity_matrix(n))


# ---------------------------------------------------------------------------
# Characteristic and minimal polynomials
# ---------------------------------------------------------------------------


def char_poly(m) -> Polynomial:
    """Characteristic polynomial det(xI - M), monic, exact (Faddeev-LeVerrier)."""
    arr = np.asarray(m, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = arr.shape[0]
    cs = [Fraction(1)]  # coefficient of x^n, then x^{n-1}, ...
    aux = identity_matrix(n)
    for k in range(1, n + 1):
        aux = arr @ aux
        ck = Fraction(-sum(aux[i, i] for i in range(n)), k)
        cs.append(ck)
        for i in range(n):
            aux[i, i] += ck
    return Polynomial(list(reversed(cs)))


def min_poly(m) -> Polynomial:
    """Minimal polynomial via the first linear dependence among I, M, M^2, ...

    Exact incremental elimination on vectorized powers, tracking the
    combination so the dependence is read off directly.
    """
    arr = np.asarray(m, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("minimal polynomial needs a square matrix")
    n = arr.shape[0]
    if n == 0:
        return Polynomial([1])
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []
    power = identity_matrix(n)
    k = 0
    while True:
        vec = [Fraction(v) for v in power.reshape(-1)]
        combo = [Fraction(0)] * k + [Fraction(1)]
        for pivot, bvec, bcombo in basis:
            f = vec[pivot]
            if f == 0:
                continue
            vec = [a - f * b for a, b in zip(vec, bvec)]
            for i, c in enumerate(bcombo):
                combo[i] -= f * c
        pivot = next((i for i, v in enumerate(vec) if v != 0), None)
        if pivot is None:
            return Polynomial(combo)
        inv = 1 / vec[pivot]
        vec = [v * inv for v in vec]
        combo_n = [c * inv for c in combo]
        basis.append((pivot, vec, combo_n))
        power = power @ arr
        k += 1


# ---------------------------------------------------------------------------
# Eigenvalue multiplicity and the main/non-main split
# ---------------------------------------------------------------------------


def _shifted_int_matrix(g: Graph, mu: Fraction) -> list[list[int]]:
    """q*A - p*I for mu = p/q: integer matrix with the rank of A - mu*I."""
    mu = Fraction(mu)
    p, q = mu.numerator, mu.denominator
    rows = [[q * int(v) for v in r] for r in g.adj]
    for i in range(g.n):
        rows[i][i] -= p
    return rows


def _int_rank(rows: list[list[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    fast = kernels.try_int_rank(rows)
    return fast if fast is not None else _rank_bigint(rows)


def eig_multiplicity(g: Graph, mu) -> int:
    """Multiplicity of mu as an adjacency eigenvalue: n - rank(A - mu I)."""
    return g.n - _int_rank(_shifted_int_matrix(g, Fraction(mu)))


def is_nonmain(g: Graph, mu) -> bool:
    """True iff the eigenspace of mu is orthogonal to the all-ones vector.

    By symmetry of A, this is equivalent to the all-ones vector lying in the
    column space of A - mu I, tested by comparing ranks of the matrix and its
    augmentation.
    """
    mu = Fraction(mu)
    rows = _shifted_int_matrix(g, mu)
    base = _int_rank(rows)
    if g.n - base == 0:
        raise NotAnEigenvalueError(f"{format_rational(mu)} is not an eigenvalue")
    q = mu.denominator
    augmented = [row + [q] for row in rows]
    return _int_rank(augmented) == base


# ---------------------------------------------------------------------------
# Resolvent machinery
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def resolvent_inverse(h: Graph, mu: Fraction) -> np.ndarray:
    """(mu I - A(H))^{-1}, exact, cached per (graph, mu).

    Graphs are immutable, so entries never need invalidation; callers must
    treat the returned array as read-only.
    """
    shifted = mu * identity_matrix(h.n) - adjacency_matrix(h)
    try:
        return invert_exact(shifted)
    except SingularResolventError:
        raise SingularResolventError(
            f"{format_rational(mu)} is an eigenvalue of the complement graph"
        ) from None


def resolvent_bilinear(h: Graph, mu, x, y) -> Fraction:
    """<x, y> = x^T (mu I - A(H))^{-1} y, exactly."""
    mu = Fraction(mu)
    xv = np.asarray(x, dtype=object)
    yv = np.asarray(y, dtype=object)
    if xv.shape != (h.n,) or yv.shape != (h.n,):
        raise ValueError(f"vectors must have length {h.n}")
    solved = resolvent_inverse(h, mu) @ yv
    return Fraction(sum(a * b for a, b in zip(xv, solved)))


@lru_cache(maxsize=None)
def graph_min_poly(h: Graph) -> Polynomial:
    return min_poly(adjacency_matrix(h))


def resolvent_via_minpoly(h: Graph, mu) -> np.ndarray:
    """m(mu) (mu I - A(H))^{-1} as a polynomial in A(H).

    With m(x) = x^{d+1} + c_d x^d + ... + c_0 and mu not a root, the scaled
    resolvent is sum_i a_i A^i where a_d = 1 and a_j = mu a_{j+1} + c_{j+1};
    the result is an integer matrix whenever mu is an integer.
    """
    mu = Fraction(mu)
    if h.n == 0:
        return np.zeros((0, 0), dtype=object)
    m = graph_min_poly(h)
    if m(mu) == 0:
        raise SingularResolventError(
            f"{format_rational(mu)} is an eigenvalue of the complement graph"
        )
    d = m.degree - 1
    a = [Fraction(0)] * (d + 1)
    a[d] = Fraction(1)
    for j in range(d - 1, -1, -1):
        a[j] = mu * a[j + 1] + m.coeff(j + 1)
    adj = adjacency_matrix(h)
    out = identity_matrix(h.n) * a[d]
    for j in range(d - 1, -1, -1):
        out = out @ adj
        for i in range(h.n):
            out[i, i] += a[j]
    if mu.denominator == 1:
        out = np.array([[int(v) for v in row] for row in out], dtype=object)
    return out
