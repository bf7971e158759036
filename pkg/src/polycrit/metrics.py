"""Distances on polynomials and point multisets.

Covers the critical-circle radius |p|_alpha, the directed Hausdorff
distance d(p) from zeros to critical points, the bottleneck root-matching
metric Delta(p, q), and the Smale mean-value ratio.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .poly import Polynomial, sort_lex

ON_CIRCLE_TOL = 1e-9


@dataclass(frozen=True)
class CriticalCircle:
    """Circle about alpha through the nearest critical points.

    on_circle holds indices (into the critical RootSet, lexicographic
    order) of critical points within ON_CIRCLE_TOL of the radius; its
    length is the count r of points achieving the minimum.
    """

    center: complex
    radius: float
    on_circle: tuple[int, ...]


def alpha_distance(p: Polynomial, alpha: complex) -> CriticalCircle:
    """|p|_alpha = min over critical points w of |alpha - w|."""
    if p.degree < 2:
        raise ValueError("alpha_distance needs degree >= 2")
    crit = p.derivative().find_roots()
    dists = np.abs(crit.as_array() - complex(alpha))
    radius = float(dists.min())
    on = tuple(int(i) for i in np.flatnonzero(dists <= radius + ON_CIRCLE_TOL))
    return CriticalCircle(center=complex(alpha), radius=radius, on_circle=on)


def directed_hausdorff(p: Polynomial) -> tuple[float, complex]:
    """d(p): max over zeros of the distance to the nearest critical point.

    Ties among zeros are broken toward the lexicographically (re, im)
    smallest zero, so repeated runs return identical witnesses.
    """
    if p.degree < 2:
        raise ValueError("directed_hausdorff needs degree >= 2")
    zeros = sort_lex(p.find_roots().points)
    crit = p.derivative().find_roots().as_array()
    best_val = -1.0
    worst = zeros[0]
    for z in zeros:
        m = float(np.abs(crit - z).min())
        if m > best_val + 1e-12:
            best_val = m
            worst = z
    return best_val, worst


def _kuhn_matching(adj: np.ndarray) -> list[int]:
    """Maximum bipartite matching by augmenting paths (rows <= cols).

    Returns, for each column, the matched row or -1.
    """
    m, n = adj.shape
    match_right = [-1] * n

    def augment(u: int, seen: list[bool]) -> bool:
        for v in range(n):
            if adj[u, v] and not seen[v]:
                seen[v] = True
                if match_right[v] < 0 or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    for u in range(m):
        augment(u, [False] * n)
    return match_right


def bottleneck_assignment(a, b) -> tuple[float, list[int]]:
    """Injective matching of a into b minimizing the largest pair distance.

    Binary search over realized pairwise distances with a perfect-matching
    feasibility test, so the value is exact (a realized distance) rather
    than an accumulated float.  Returns (value, assignment) where
    assignment[i] is the index in b matched to a[i].
    """
    A = np.asarray(a, dtype=complex)
    B = np.asarray(b, dtype=complex)
    if len(A) > len(B):
        raise ValueError("first point set must not be larger than second")
    D = np.abs(A[:, None] - B[None, :])
    cands = np.unique(D)
    slack = 1e-15 * (1.0 + float(cands[-1]))
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        match_right = _kuhn_matching(D <= cands[mid] + slack)
        if sum(1 for r in match_right if r >= 0) == len(A):
            hi = mid
        else:
            lo = mid + 1
    match_right = _kuhn_matching(D <= cands[lo] + slack)
    assignment = [-1] * len(A)
    for col, row in enumerate(match_right):
        if row >= 0:
            assignment[row] = col
    return float(cands[lo]), assignment


def bottleneck_match(a, b) -> float:
    """Bottleneck value alone; see bottleneck_assignment."""
    return bottleneck_assignment(a, b)[0]


def bottleneck_brute(a, b) -> float:
    """Permutation-enumeration oracle for bottleneck_match (small sets only)."""
    A = [complex(x) for x in a]
    B = [complex(x) for x in b]
    if len(A) > 7:
        raise ValueError("brute-force oracle capped at 7 points")
    best = None
    for perm in itertools.permutations(range(len(B)), len(A)):
        m = max(abs(A[i] - B[perm[i]]) for i in range(len(A)))
        best = m if best is None else min(best, m)
    return best


def delta_distance(p: Polynomial, q: Polynomial) -> float:
    """Bottleneck matching distance between the root multisets of p and q."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return bottleneck_match(p.find_roots().points, q.find_roots().points)


def smale_ratio(p: Polynomial) -> float:
    """min over critical points w of |p(w) / (p'(0) w)|.

    Requires p(0) = 0 and p'(0) != 0.
    """
    if abs(p.coeffs[0]) > 1e-12:
        raise ValueError("precondition p(0) = 0 violated")
    dp = p.derivative()
    if abs(dp.coeffs[0]) <= 1e-12:
        raise ValueError("precondition p'(0) != 0 violated")
    w = dp.find_roots().as_array()
    vals = np.abs(p(w) / (dp.coeffs[0] * w))
    return float(vals.min())
