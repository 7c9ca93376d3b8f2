"""Star sets: verification certificates, exhaustive search, and eigenspace bases.

A star set for an eigenvalue mu of G is a vertex set X with |X| equal to the
multiplicity of mu and mu not an eigenvalue of H = G - X.  Writing the
adjacency matrix in block form ((A_X, B^T), (B, C)) with C = A(H), X is a
star set exactly when mu is missing from H's spectrum and

    mu I - A_X = B^T (mu I - C)^{-1} B.

Certificates record the multiplicity comparison, the complement-spectrum
check, and the residual identity as three independently evaluated exact
checks, even though the residual is implied by the other two.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from math import comb
from typing import Sequence

import numpy as np

from . import kernels
from .graphs import Graph, induced_subgraph, write_graph6
from .linalg import (
    NotAnEigenvalueError,
    _int_rank,
    _shifted_int_matrix,
    eig_multiplicity,
    format_rational,
    resolvent_inverse,
)

DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """The exhaustive search would test more subsets than the budget allows."""


class InvalidStarSetError(ValueError):
    """The operation requires a valid star set and got something else."""

    def __init__(self, certificate: "StarSetCertificate"):
        super().__init__(
            f"{sorted(certificate.star_set)} is not a star set for "
            f"mu={format_rational(certificate.mu)}"
        )
        self.certificate = certificate


@dataclass(frozen=True)
class StarSetCertificate:
    """Machine-checkable evidence that X is (or is not) a star set for mu."""

    graph: Graph
    mu: Fraction
    star_set: tuple[int, ...]
    multiplicity: int
    complement_multiplicity: int
    sizes_match: bool
    complement_ok: bool
    residual_zero: bool

    @property
    def valid(self) -> bool:
        return self.sizes_match and self.complement_ok and self.residual_zero

    def to_json(self) -> dict:
        return {
            "graph": write_graph6(self.graph),
            "mu": format_rational(self.mu),
            "X": list(self.star_set),
            "valid": self.valid,
            "checks": {
                "multiplicity": self.multiplicity,
                "sizes_match": self.sizes_match,
                "complement_ok": self.complement_ok,
                "complement_multiplicity": self.complement_multiplicity,
                "residual_zero": self.residual_zero,
            },
        }

    def __str__(self) -> str:
        return json.dumps(self.to_json())


def _split_blocks(g: Graph, star: Sequence[int]):
    """(A_X, B, complement order) for the block layout induced by X."""
    star = sorted(star)
    comp = [v for v in range(g.n) if v not in set(star)]
    adj = g.adj.astype(object)
    a_x = adj[np.ix_(star, star)]
    b = adj[np.ix_(comp, star)]
    return a_x, b, comp


def verify_star_set(g: Graph, mu, star_set: Sequence[int]) -> StarSetCertificate:
    """Evaluate all three star-set checks exactly; never raises on invalid X."""
    mu = Fraction(mu)
    star = tuple(sorted(set(int(v) for v in star_set)))
    if star and not (0 <= star[0] and star[-1] < g.n):
        raise ValueError(f"star set {star} out of range for n={g.n}")
    multiplicity = eig_multiplicity(g, mu)
    complement = induced_subgraph(g, [v for v in range(g.n) if v not in set(star)])
    comp_mult = eig_multiplicity(complement, mu)
    complement_ok = comp_mult == 0
    sizes_match = multiplicity == len(star)
    residual_zero = False
    if complement_ok:
        a_x, b, _ = _split_blocks(g, star)
        k = len(star)
        inv = resolvent_inverse(complement, mu)
        lhs = np.full((k, k), Fraction(0), dtype=object)
        for i in range(k):
            lhs[i, i] = mu
        lhs -= a_x
        rhs = b.T @ inv @ b if k else lhs
        residual_zero = bool(np.all(lhs == rhs))
    return StarSetCertificate(
        graph=g,
        mu=mu,
        star_set=star,
        multiplicity=multiplicity,
        complement_multiplicity=comp_mult,
        sizes_match=sizes_match,
        complement_ok=complement_ok,
        residual_zero=residual_zero,
    )


def _chunks(iterable, size):
    it = iter(iterable)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


def find_star_sets(
    g: Graph,
    mu,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> list[tuple[int, ...]]:
    """All star sets for mu, exhaustively, in lexicographic order.

    Tests every k-subset X (k = multiplicity of mu) for mu not being an
    eigenvalue of G - X.  Refuses up front if C(n, k) exceeds the budget.
    """
    mu = Fraction(mu)
    k = eig_multiplicity(g, mu)
    if k == 0:
        raise NotAnEigenvalueError(
            f"{format_rational(mu)} is not an eigenvalue; no star set exists"
        )
    total = comb(g.n, k)
    if total > budget:
        raise BudgetExceededError(
            f"C({g.n},{k}) = {total} subsets exceeds budget {budget}"
        )
    shifted = _shifted_int_matrix(g, mu)
    full = g.n - k  # complement rank when mu is not an eigenvalue of G - X

    def scan(block: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
        hits = []
        for star in block:
            drop = set(star)
            keep = [v for v in range(g.n) if v not in drop]
            sub = [[shifted[i][j] for j in keep] for i in keep]
            if _int_rank(sub) == full:
                hits.append(star)
        return hits

    subsets = combinations(range(g.n), k)
    if threads <= 1:
        return scan(list(subsets))
    out: list[tuple[int, ...]] = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for hits in pool.map(scan, _chunks(subsets, 2048)):
            out.extend(hits)
    return out


def eigenspace_from_star(g: Graph, mu, star_set: Sequence[int]) -> list[np.ndarray]:
    """Eigenspace basis reconstructed from a star set.

    For each u in X the vector with e_u on X and (mu I - C)^{-1} B e_u on the
    complement is an exact eigenvector; together they span the eigenspace.
    Every returned vector is re-checked against A v = mu v.
    """
    mu = Fraction(mu)
    cert = verify_star_set(g, mu, star_set)
    if not cert.valid:
        raise InvalidStarSetError(cert)
    star = list(cert.star_set)
    _, b, comp = _split_blocks(g, star)
    complement = induced_subgraph(g, comp)
    inv = resolvent_inverse(complement, mu)
    adj = g.adj.astype(object)
    basis = []
    for idx in range(len(star)):
        tail = inv @ b[:, idx] if comp else np.zeros(0, dtype=object)
        vec = np.zeros(g.n, dtype=object)
        vec[star[idx]] = Fraction(1)
        for pos, v in zip(comp, tail):
            vec[pos] = v
        if not np.all(adj @ vec == mu * vec):
            raise AssertionError("reconstructed vector is not an eigenvector")
        basis.append(vec)
    return basis


def substar_check(g: Graph, mu, star_set: Sequence[int], removed: Sequence[int]) -> bool:
    """Whether X \\ U remains a star set for mu in G \\ U (U a proper subset of X)."""
    star = set(int(v) for v in star_set)
    drop = set(int(v) for v in removed)
    if not drop <= star:
        raise ValueError("removed vertices must lie inside the star set")
    if drop == star:
        raise ValueError("removed set must be a proper subset of the star set")
    keep = [v for v in range(g.n) if v not in drop]
    relabel = {v: i for i, v in enumerate(keep)}
    reduced = induced_subgraph(g, keep)
    reduced_star = [relabel[v] for v in sorted(star - drop)]
    return verify_star_set(reduced, mu, reduced_star).valid


def warmup() -> None:
    """JIT-compile the integer kernels so searches start at full speed."""
    kernels.warmup()
