"""Matrix models for magic-unitary witnesses of quantum symmetry.

Given two non-trivial disjoint automorphisms sigma (order n) and tau
(order m) of a graph on r vertices, the r x r matrix over an auxiliary
*-algebra

    u' = sum_{l=1..m} tau^l (x) q_l  +  sum_{k=1..n} sigma^k (x) p_k  -  id

is a magic unitary commuting with the adjacency matrix, where p_1..p_n and
q_1..q_m are projections summing to the identity (the images of the two
cyclic-group generators in a free product).  When the p's and q's do not
commute, u' certifies that the graph's symmetries do not all commute, i.e.
the graph has quantum symmetry.

This module builds a concrete finite-dimensional model of the p's and q's
(dimension n*m, generically non-commuting via a seeded Haar-style random
unitary), assembles u', and certifies all its defining relations
numerically, including the recovery products that exhibit every p_k and
q_l as a product of entries of u'.

Algebra elements are plain complex numpy matrices; defects are measured in
the operator (spectral) norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import DimensionError, UsageError
from .graphs import Graph, Permutation, are_disjoint, is_automorphism

__all__ = [
    "MagicUnitary",
    "WitnessReport",
    "RecoveryReport",
    "op_norm",
    "is_projection",
    "haar_unitary",
    "spectral_projections",
    "rep_free_product",
    "build_witness",
    "classical_witness",
    "certify_witness",
    "recovery_products",
]


def op_norm(x: np.ndarray) -> float:
    """Operator (spectral) norm."""
    return float(np.linalg.norm(x, 2))


def adjoint(x: np.ndarray) -> np.ndarray:
    return x.conj().T


def is_projection(x: np.ndarray, tol: float = DEFAULT_TOLERANCES.projector) -> bool:
    """True iff x is self-adjoint and idempotent within tol (operator norm)."""
    return op_norm(x - adjoint(x)) <= tol and op_norm(x - x @ x) <= tol


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded pseudo-random unitary: QR of a complex Gaussian matrix.

    The R-diagonal phases are absorbed into Q, which makes the result a
    deterministic function of the generator state.
    """
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def spectral_projections(x: np.ndarray, order: int) -> list[np.ndarray]:
    """Projections p_k = (1/order) sum_{j=1..order} w^{-kj} x^j, k = 1..order.

    For x unitary with x^order = 1 these are the spectral projections onto
    the w^k eigenspaces (w the primitive order-th root of unity), indexed so
    that p_order projects onto the fixed space.
    """
    dim = x.shape[0]
    powers = [x]
    for _ in range(order - 1):
        powers.append(powers[-1] @ x)
    omega = np.exp(2j * np.pi / order)
    out = []
    for k in range(1, order + 1):
        acc = np.zeros((dim, dim), dtype=complex)
        for j in range(1, order + 1):
            acc += omega ** (-k * j) * powers[j - 1]
        out.append(acc / order)
    return out


def rep_free_product(n: int, m: int, seed: int = 42) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Matrix model of projections p_1..p_n, q_1..q_m with both sums = 1.

    In dimension n*m, U is diagonal with the n-th roots of unity each
    repeated m times and V is a seeded random-unitary conjugate of the
    diagonal with the m-th roots each repeated n times; p_k and q_l are
    their spectral projections.  A generic conjugation makes some [p_k,q_l]
    non-zero, which is the point of the model.
    """
    if n < 2 or m < 2:
        raise UsageError(f"orders must be >= 2, got n={n}, m={m}")
    dim = n * m
    omega_n = np.exp(2j * np.pi / n)
    omega_m = np.exp(2j * np.pi / m)
    u = np.diag(np.repeat(omega_n ** np.arange(1, n + 1), m))
    rng = np.random.default_rng(seed)
    q = haar_unitary(dim, rng)
    v = q @ np.diag(np.repeat(omega_m ** np.arange(1, m + 1), n)) @ adjoint(q)
    return spectral_projections(u, n), spectral_projections(v, m)


@dataclass
class MagicUnitary:
    """r x r array of dim x dim matrices, a candidate magic unitary."""

    entries: np.ndarray  # shape (r, r, dim, dim), complex
    seed: Optional[int] = None
    report: Optional["WitnessReport"] = field(default=None, repr=False)

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.ndim != 4 or e.shape[0] != e.shape[1] or e.shape[2] != e.shape[3]:
            raise DimensionError(f"entries must have shape (r, r, d, d), got {e.shape}")
        self.entries = e

    @property
    def r(self) -> int:
        return int(self.entries.shape[0])

    @property
    def dim(self) -> int:
        return int(self.entries.shape[2])

    def entry(self, i: int, j: int) -> np.ndarray:
        return self.entries[i, j]

    def flat(self) -> np.ndarray:
        """The r*dim x r*dim block matrix."""
        r, d = self.r, self.dim
        return self.entries.transpose(0, 2, 1, 3).reshape(r * d, r * d)


def _permutation_powers(p: Permutation, order: int) -> list[Permutation]:
    powers = []
    cur = p
    for _ in range(order):
        powers.append(cur)
        cur = cur.compose(p)
    return powers  # powers[k-1] = p^k, powers[order-1] = identity


def build_witness(
    g: Graph,
    sigma: Permutation,
    tau: Permutation,
    p: list[np.ndarray],
    q: list[np.ndarray],
    seed: Optional[int] = None,
    strict: bool = True,
) -> MagicUnitary:
    """Assemble u' = sum tau^l (x) q_l + sum sigma^k (x) p_k - id.

    Entry (i, j) is sum_{l: tau^l(i)=j} q_l + sum_{k: sigma^k(i)=j} p_k
    minus the identity when i = j.  Disjointness makes every entry a sum of
    p's only, a sum of q's only, or the identity.

    With ``strict=False`` the hypothesis checks are skipped so that broken
    inputs (e.g. non-disjoint pairs) can be assembled and then watched to
    fail certification.
    """
    r = g.n_vertices
    n, m = len(p), len(q)
    if strict:
        if sigma.size != r or tau.size != r:
            raise UsageError("hypothesis failed: permutation size != vertex count")
        if sigma.is_identity() or tau.is_identity():
            raise UsageError("hypothesis failed: sigma and tau must be non-trivial")
        if not is_automorphism(g, sigma):
            raise UsageError("hypothesis failed: sigma is not an automorphism")
        if not is_automorphism(g, tau):
            raise UsageError("hypothesis failed: tau is not an automorphism")
        if not are_disjoint(sigma, tau):
            raise UsageError("hypothesis failed: sigma and tau are not disjoint")
        if sigma.order() != n:
            raise UsageError(f"hypothesis failed: order(sigma)={sigma.order()} != len(p)={n}")
        if tau.order() != m:
            raise UsageError(f"hypothesis failed: order(tau)={tau.order()} != len(q)={m}")
    dims = {mat.shape for mat in list(p) + list(q)}
    if len(dims) != 1 or any(len(s) != 2 or s[0] != s[1] for s in dims):
        raise DimensionError("p and q must share one square matrix shape")
    d = p[0].shape[0]

    entries = np.zeros((r, r, d, d), dtype=complex)
    sigma_powers = _permutation_powers(sigma, n)
    tau_powers = _permutation_powers(tau, m)
    for i in range(r):
        for l in range(1, m + 1):
            entries[i, tau_powers[l - 1](i)] += q[l - 1]
        for k in range(1, n + 1):
            entries[i, sigma_powers[k - 1](i)] += p[k - 1]
        entries[i, i] -= np.eye(d)
    return MagicUnitary(entries, seed=seed)


def classical_witness(g: Graph, p: Permutation, dim: int = 1) -> MagicUnitary:
    """Magic unitary of a single classical automorphism: entries delta_{j,p(i)} 1.

    All entries commute, so its noncommutativity certificate is zero.
    """
    if p.size != g.n_vertices:
        raise DimensionError("permutation size != vertex count")
    if not is_automorphism(g, p):
        raise UsageError("p is not an automorphism")
    r = g.n_vertices
    entries = np.zeros((r, r, dim, dim), dtype=complex)
    for i in range(r):
        entries[i, p(i)] = np.eye(dim)
    return MagicUnitary(entries)


@dataclass(frozen=True)
class WitnessReport:
    projection_defect: float
    rowsum_defect: float
    colsum_defect: float
    commutation_defect: float
    noncomm_certificate: float
    seed: Optional[int]
    tol: float
    certificate_floor: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "projection_defect": self.projection_defect,
            "rowsum_defect": self.rowsum_defect,
            "colsum_defect": self.colsum_defect,
            "commutation_defect": self.commutation_defect,
            "noncomm_certificate": self.noncomm_certificate,
            "seed": self.seed,
            "tol": self.tol,
            "certificate_floor": self.certificate_floor,
            "pass": self.passed,
        }


def _distinct_entries(u: MagicUnitary, decimals: int = 9) -> list[np.ndarray]:
    out: dict[bytes, np.ndarray] = {}
    for i in range(u.r):
        for j in range(u.r):
            key = np.round(u.entries[i, j], decimals).tobytes()
            out.setdefault(key, u.entries[i, j])
    return list(out.values())


def certify_witness(
    g: Graph,
    u: MagicUnitary,
    tol: float = DEFAULT_TOLERANCES.projector,
    certificate_floor: float = DEFAULT_TOLERANCES.certificate_floor,
) -> WitnessReport:
    """Measure all magic-unitary defects of u against the graph g.

    Reports the worst projection defect over entries, the worst row and
    column sum defect against the identity, the commutation defect with
    (adjacency (x) 1), and the noncommutativity certificate
    c = max ||[u_ab, u_cd]|| over entry pairs.  PASS requires the first
    three at most tol; c is reported either way (c > certificate_floor is
    the positive quantum-symmetry signal, c = 0 the commutative case).
    """
    if u.r != g.n_vertices:
        raise DimensionError(f"witness on {u.r} vertices vs graph on {g.n_vertices}")
    r, d = u.r, u.dim
    eye = np.eye(d)

    projection_defect = 0.0
    for i in range(r):
        for j in range(r):
            e = u.entries[i, j]
            projection_defect = max(
                projection_defect, op_norm(e - adjoint(e)), op_norm(e - e @ e)
            )

    rowsum_defect = max(op_norm(u.entries[i].sum(axis=0) - eye) for i in range(r))
    colsum_defect = max(op_norm(u.entries[:, j].sum(axis=0) - eye) for j in range(r))

    flat = u.flat()
    eps_big = np.kron(g.adjacency.astype(float), eye)
    commutation_defect = op_norm(flat @ eps_big - eps_big @ flat)

    distinct = _distinct_entries(u)
    certificate = 0.0
    for a in range(len(distinct)):
        for b in range(a + 1, len(distinct)):
            x, y = distinct[a], distinct[b]
            certificate = max(certificate, op_norm(x @ y - y @ x))

    passed = max(projection_defect, rowsum_defect, colsum_defect, commutation_defect) <= tol
    report = WitnessReport(
        projection_defect=projection_defect,
        rowsum_defect=rowsum_defect,
        colsum_defect=colsum_defect,
        commutation_defect=commutation_defect,
        noncomm_certificate=certificate,
        seed=u.seed,
        tol=tol,
        certificate_floor=certificate_floor,
        passed=passed,
    )
    u.report = report
    return report


@dataclass(frozen=True)
class RecoveryReport:
    sigma_residuals: tuple[float, ...]
    tau_residuals: tuple[float, ...]
    sigma_representatives: tuple[int, ...]
    tau_representatives: tuple[int, ...]
    tol: float
    passed: bool

    @property
    def max_residual(self) -> float:
        return max(self.sigma_residuals + self.tau_residuals)

    def to_json(self) -> dict:
        return {
            "sigma_residuals": list(self.sigma_residuals),
            "tau_residuals": list(self.tau_residuals),
            "sigma_representatives": list(self.sigma_representatives),
            "tau_representatives": list(self.tau_representatives),
            "max_residual": self.max_residual,
            "tol": self.tol,
            "pass": self.passed,
        }


def _recovery_side(
    u: MagicUnitary, perm: Permutation, targets: list[np.ndarray]
) -> tuple[tuple[int, ...], tuple[float, ...]]:
    cycles = perm.cycles()
    if not cycles:
        raise UsageError("recovery products need a non-trivial permutation")
    reps = tuple(sorted(min(c) for c in cycles))
    order = len(targets)
    powers = _permutation_powers(perm, order)
    residuals = []
    for k in range(1, order + 1):
        prod = np.eye(u.dim, dtype=complex)
        for s in reps:
            prod = prod @ u.entries[s, powers[k - 1](s)]
        residuals.append(op_norm(prod - targets[k - 1]))
    return reps, tuple(residuals)


def recovery_products(
    u: MagicUnitary,
    sigma: Permutation,
    tau: Permutation,
    p: list[np.ndarray],
    q: list[np.ndarray],
    tol: float = DEFAULT_TOLERANCES.projector,
) -> RecoveryReport:
    """Recover every p_k and q_l as a product of witness entries.

    One representative s per non-trivial cycle (the cycle minimum, taken in
    ascending order) makes the image tuples (sigma^k(s_1), ..., sigma^k(s_a))
    pairwise distinct over k, and then

        prod_s u'_{s, sigma^k(s)} = p_k        for k = 1..order(sigma)

    and likewise for tau and the q_l.
    """
    sigma_reps, sigma_res = _recovery_side(u, sigma, p)
    tau_reps, tau_res = _recovery_side(u, tau, q)
    passed = max(sigma_res + tau_res) <= tol
    return RecoveryReport(
        sigma_residuals=sigma_res,
        tau_residuals=tau_res,
        sigma_representatives=sigma_reps,
        tau_representatives=tau_reps,
        tol=tol,
        passed=passed,
    )
