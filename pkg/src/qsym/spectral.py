"""Closed-form spectra and eigenspaces of folded cube graphs.

Every word w of width n-1 gives an eigenvector of the folded n-cube
adjacency matrix, namely the point-basis image psi(T_w) (a +-1 Walsh
character), with integer eigenvalue

    lambda(w) = sum_s (-1)^{w_s} + (-1)^{sum_s w_s}.

For odd n the eigenvalues are exactly lambda_k = n - 2k over even k in
[0, n], the eigenspace of lambda_k being spanned by the words of length k
or k-1, so its dimension is C(n-1, k) + C(n-1, k-1) = C(n, k).  Everything
here is cross-validated numerically against a dense symmetric eigensolver.

Since each projection onto an eigenspace is a polynomial in the adjacency
matrix, a vertex permutation is an automorphism exactly when its matrix
commutes with every eigenprojection; ``preserves_eigenspaces`` checks that
commutation directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .boolean_group import GroupWord, folded_cube, walsh_matrix
from .config import DEFAULT_TOLERANCES
from .errors import CapacityError, DimensionError, UsageError
from .graphs import Permutation

__all__ = [
    "EigenLevel",
    "EigenData",
    "SpectrumReport",
    "eigenvalue_of_bits",
    "eigen_data",
    "verify_spectrum",
    "eigenprojection",
    "eigenprojections",
    "preserves_eigenspaces",
]


def eigenvalue_of_bits(bits: GroupWord, n: int) -> int:
    """Eigenvalue of the folded n-cube eigenvector indexed by ``bits``."""
    if bits.width != n - 1:
        raise DimensionError(f"word width {bits.width} != n-1 = {n - 1}")
    length = bits.length()
    return (n - 1 - 2 * length) + (-1) ** (length & 1)


@dataclass(frozen=True)
class EigenLevel:
    k: int
    eigenvalue: int
    basis: tuple[GroupWord, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class EigenData:
    n: int
    levels: tuple[EigenLevel, ...]

    def level(self, k: int) -> EigenLevel:
        for lvl in self.levels:
            if lvl.k == k:
                return lvl
        raise UsageError(f"k={k} is not a level of the folded {self.n}-cube")

    def multiplicities(self) -> dict[int, int]:
        return {lvl.eigenvalue: lvl.multiplicity for lvl in self.levels}


def eigen_data(n: int, max_vertices: int = 4096) -> EigenData:
    """Group the 2^{n-1} eigenvector words of the folded n-cube by level.

    Level k (k even, 0 <= k <= n) collects the words of length k or k-1 and
    carries the eigenvalue n - 2k.  Odd n only: for even n distinct levels
    can share an eigenvalue, and that regime is out of scope here.
    """
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise UsageError(f"eigen_data needs an odd n >= 3, got {n!r}")
    if 1 << (n - 1) > max_vertices:
        raise CapacityError(f"folded {n}-cube has {1 << (n - 1)} > {max_vertices} vertices")
    width = n - 1
    buckets: dict[int, list[GroupWord]] = {}
    for w in GroupWord.all_words(width):
        length = w.length()
        k = length if length % 2 == 0 else length + 1
        buckets.setdefault(k, []).append(w)
    levels = []
    for k in sorted(buckets):
        lam = n - 2 * k
        for w in buckets[k]:
            if eigenvalue_of_bits(w, n) != lam:  # pragma: no cover
                raise RuntimeError("level grouping disagrees with the eigenvalue formula")
        levels.append(EigenLevel(k=k, eigenvalue=lam, basis=tuple(buckets[k])))
    return EigenData(n=n, levels=tuple(levels))


@dataclass(frozen=True)
class SpectrumReport:
    n: int
    levels: tuple[dict, ...]
    numeric_match: bool
    max_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.numeric_match and self.max_residual <= self.tol

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "levels": [dict(lvl) for lvl in self.levels],
            "numeric_match": self.numeric_match,
            "max_residual": self.max_residual,
            "tol": self.tol,
            "pass": self.passed,
        }


def verify_spectrum(n: int, tol: float = DEFAULT_TOLERANCES.residual) -> SpectrumReport:
    """Check every closed-form eigenpair of the folded n-cube numerically.

    For each word w the residual ||A psi(T_w) - lambda(w) psi(T_w)||_inf is
    computed (A the adjacency matrix), and the closed-form eigenvalue
    multiset is compared with a dense symmetric eigensolver.  Works for any
    n in bounds; levels are grouped by eigenvalue.
    """
    g = folded_cube(n)
    width = n - 1
    a = g.adjacency.astype(float)
    h = walsh_matrix(width)  # column w = psi(T_w) in the point basis
    lams = np.array([eigenvalue_of_bits(w, n) for w in GroupWord.all_words(width)])
    residual_matrix = a @ h - h * lams[None, :]
    per_word = np.abs(residual_matrix).max(axis=0)
    numeric = np.sort(np.linalg.eigvalsh(a))
    closed = np.sort(lams.astype(float))
    numeric_match = bool(np.max(np.abs(numeric - closed)) <= tol)

    levels = []
    for lam in sorted(set(lams.tolist()), reverse=True):
        mask = lams == lam
        levels.append(
            {
                "k": (n - lam) // 2,
                "lambda": int(lam),
                "multiplicity": int(mask.sum()),
                "max_residual": float(per_word[mask].max()),
            }
        )
    return SpectrumReport(
        n=n,
        levels=tuple(levels),
        numeric_match=numeric_match,
        max_residual=float(per_word.max()),
        tol=tol,
    )


@lru_cache(maxsize=None)
def eigenprojections(n: int) -> tuple[tuple[int, np.ndarray], ...]:
    """Orthogonal projections onto the folded n-cube eigenspaces, by level.

    P_k = V V^T / 2^{n-1} with V the Walsh columns of the level-k words;
    the columns are orthogonal with squared norm 2^{n-1}.
    """
    data = eigen_data(n)
    h = walsh_matrix(n - 1)
    out = []
    for lvl in data.levels:
        cols = h[:, [w.bits for w in lvl.basis]]
        p = cols @ cols.T / (1 << (n - 1))
        p.setflags(write=False)
        out.append((lvl.k, p))
    return tuple(out)


def eigenprojection(n: int, k: int) -> np.ndarray:
    """Projection onto the level-k eigenspace (idempotent, symmetric)."""
    for kk, p in eigenprojections(n):
        if kk == k:
            return p
    raise UsageError(f"k={k} is not a level of the folded {n}-cube")


def preserves_eigenspaces(
    n: int, p: Permutation, tol: float = DEFAULT_TOLERANCES.projector
) -> bool:
    """True iff p's matrix commutes with every eigenprojection of FQ_n.

    The eigenprojections generate the same commutant as the adjacency
    matrix, so for permutation matrices this is equivalent to being a graph
    automorphism; non-automorphisms simply return False.
    """
    if p.size != 1 << (n - 1):
        raise DimensionError(f"permutation on {p.size} points vs 2^{n - 1} vertices")
    m = p.matrix().astype(float)
    for _, proj in eigenprojections(n):
        if np.max(np.abs(m @ proj - proj @ m)) > tol:
            return False
    return True
