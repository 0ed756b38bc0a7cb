"""Symmetric generalized eigenvalue pencils ``K x = lambda C x``.

``K`` is positive semi-definite with (at most) the constants in its kernel
and ``C`` is positive semi-definite and typically singular: for Steklov-type
problems it carries mass only on boundary dofs.  Eigenvalues are recovered
through the shift-invert transform ``(K + C)^{-1} C`` whose largest
eigenvalues correspond to the smallest pencil eigenvalues; ``K + C`` is
positive definite whenever the kernels of ``K`` and ``C`` intersect trivially.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ConvergenceFailure, DimensionMismatch, InvalidEigenvector
from .fem import SymmetricSparseMatrix

#: Reciprocal eigenvalues of the transformed operator below this are treated
#: as infinite pencil eigenvalues (directions with no C-mass) and dropped.
_NU_FLOOR = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with C-orthonormal eigenvectors and residuals.

    ``eigenvectors[:, i]`` satisfies ``x^T C x = 1`` and the relative
    residual ``|K x - lambda C x| / (|K x| + lambda |C x|)`` is stored per
    pair.  A zero eigenvalue with constant eigenvector is represented
    exactly when the pencil supports it.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray

    def __len__(self) -> int:
        return len(self.eigenvalues)


def _as_csr(a) -> sp.csr_matrix:
    if isinstance(a, SymmetricSparseMatrix):
        return a.csr
    if sp.issparse(a):
        return a.tocsr()
    return sp.csr_matrix(np.asarray(a, dtype=np.float64))


def residual_report(K, C, lam: float, x: np.ndarray) -> float:
    """Relative residual ``|Kx - lam Cx| / (|Kx| + |lam| |Cx|)`` of one pair.

    For an exact kernel pair (both norms vanish) the residual is measured
    against the scale of ``K`` instead, so a true zero mode reports ~0.
    """
    kc, cc = _as_csr(K), _as_csr(C)
    x = np.asarray(x, dtype=np.float64)
    nx = float(np.linalg.norm(x))
    if nx == 0.0:
        raise InvalidEigenvector("candidate eigenvector is identically zero")
    kx = kc @ x
    cx = cc @ x
    num = float(np.linalg.norm(kx - lam * cx))
    den = float(np.linalg.norm(kx)) + abs(lam) * float(np.linalg.norm(cx))
    if den == 0.0 or den < 1e-14 * float(np.abs(kc.data).max(initial=0.0)) * nx:
        den = max(float(np.abs(kc.data).max(initial=0.0)) * nx, 1e-300)
    return num / den


def _c_orthonormalise(X: np.ndarray, cc: sp.csr_matrix) -> np.ndarray:
    gram = X.T @ (cc @ X)
    gram = 0.5 * (gram + gram.T)
    try:
        chol = sla.cholesky(gram, lower=False)
    except sla.LinAlgError as exc:
        raise InvalidEigenvector(
            "eigenvector block is numerically rank-deficient in the C inner "
            "product"
        ) from exc
    return sla.solve_triangular(chol, X.T, trans="T", lower=False).T


def _snap_kernel_pair(
    lam: np.ndarray, X: np.ndarray, kc: sp.csr_matrix, cc: sp.csr_matrix
) -> tuple[np.ndarray, np.ndarray]:
    n = kc.shape[0]
    ones = np.ones(n)
    kscale = float(np.abs(kc.data).max(initial=0.0)) or 1.0
    if float(np.linalg.norm(kc @ ones)) > 1e-9 * kscale * np.sqrt(n):
        return lam, X
    if len(lam) == 0 or lam[0] > 1e-6 * max(1.0, abs(lam[-1])):
        return lam, X
    cmass = float(ones @ (cc @ ones))
    if cmass <= 0.0:
        return lam, X
    lam = lam.copy()
    X = X.copy()
    lam[0] = 0.0
    X[:, 0] = 1.0 / np.sqrt(cmass)
    return lam, X


def solve_pencil(
    K,
    C,
    k: int,
    *,
    seed: int = 0,
    dense_threshold: int = 1200,
    maxiter: int = 2000,
) -> Spectrum:
    """Smallest ``k`` eigenvalues of ``K x = lambda C x`` with PSD ``K, C``.

    Small systems (or requests for nearly all eigenvalues) are solved densely
    through the equivalent problem ``C x = nu (K + C) x`` with
    ``lambda = (1 - nu)/nu``, which tolerates singular ``C`` by simply
    dropping ``nu ~ 0`` directions.  Larger systems run shift-invert Lanczos
    with a deterministic start vector and an explicit sparse factorisation
    of ``K + C``.  Returned vectors are C-orthonormal; a zero eigenvalue
    with exactly constant eigenvector is snapped when ``K`` annihilates
    constants.
    """
    kc, cc = _as_csr(K), _as_csr(C)
    n = kc.shape[0]
    if kc.shape != cc.shape or kc.shape[0] != kc.shape[1]:
        raise DimensionMismatch("K and C must be square with equal shapes")
    if k < 1:
        raise DimensionMismatch(f"need k >= 1, got {k}")
    if n <= dense_threshold or k >= n - 1:
        lam, X = _solve_dense(kc, cc, k)
    else:
        lam, X = _solve_arpack(kc, cc, k, seed=seed, maxiter=maxiter)
    order = np.argsort(lam, kind="stable")
    lam, X = lam[order], X[:, order]
    lam = np.where(np.abs(lam) < 1e-14 * max(1.0, abs(lam[-1])), 0.0, lam)
    X = _c_orthonormalise(X, cc)
    lam, X = _snap_kernel_pair(lam, X, kc, cc)
    res = np.array([residual_report(kc, cc, lv, X[:, i]) for i, lv in enumerate(lam)])
    return Spectrum(eigenvalues=lam, eigenvectors=X, residuals=res)


def _solve_dense(kc: sp.csr_matrix, cc: sp.csr_matrix, k: int):
    a = cc.toarray()
    b = kc.toarray() + a
    try:
        nu, V = sla.eigh(a, b)
    except sla.LinAlgError as exc:
        raise ConvergenceFailure(
            "dense generalized eigensolver failed; K + C is not positive "
            "definite (kernels of K and C intersect)"
        ) from exc
    finite = nu > _NU_FLOOR
    nu, V = nu[finite], V[:, finite]
    lam = (1.0 - nu) / nu
    order = np.argsort(lam, kind="stable")
    lam, V = lam[order], V[:, order]
    take = min(k, len(lam))
    lam, V = lam[:take], V[:, :take]
    # eigh returns (K+C)-orthonormal vectors; rescale to unit C-norm
    with np.errstate(divide="ignore"):
        scale = 1.0 / np.sqrt(nu[order][:take])
    return lam, V * scale


def _solve_arpack(kc: sp.csr_matrix, cc: sp.csr_matrix, k: int, seed: int, maxiter: int):
    n = kc.shape[0]
    shifted = (kc + cc).tocsc()
    try:
        lu = spla.splu(shifted, permc_spec="MMD_AT_PLUS_A")
    except RuntimeError as exc:
        raise ConvergenceFailure(f"factorisation of K + C failed: {exc}") from exc
    op_inv = spla.LinearOperator((n, n), matvec=lu.solve, dtype=np.float64)
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(n)
    ncv = min(n, max(2 * k + 1, 20))
    try:
        lam, X = spla.eigsh(
            kc,
            k=k,
            M=cc,
            sigma=-1.0,
            which="LM",
            v0=v0,
            ncv=ncv,
            maxiter=maxiter,
            tol=0,
            OPinv=op_inv,
        )
    except spla.ArpackNoConvergence as exc:
        raise ConvergenceFailure(
            f"Lanczos iteration did not converge within {maxiter} restarts: {exc}"
        ) from exc
    return lam, X


def cluster_indices(eigenvalues: np.ndarray, rtol: float = 1e-6) -> list[list[int]]:
    """Group ascending eigenvalues into numerical multiplicity clusters.

    Two consecutive eigenvalues join a cluster when their gap is below
    ``rtol * max(1, |larger|)``; discretisation splits exact multiplicities
    far beyond this, so across meshes only cluster sums are comparable.
    """
    lam = np.asarray(eigenvalues, dtype=np.float64)
    if lam.ndim != 1:
        raise DimensionMismatch("eigenvalues must be a 1-d array")
    if len(lam) == 0:
        return []
    groups = [[0]]
    for i in range(1, len(lam)):
        gap = lam[i] - lam[i - 1]
        if gap <= rtol * max(1.0, abs(lam[i])):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def cluster_sums(eigenvalues: np.ndarray, rtol: float = 1e-6) -> np.ndarray:
    """Per-index cumulative-cluster representation used for cross-mesh
    comparison: entry ``i`` is the sum of the full cluster containing ``i``."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    out = np.empty_like(lam)
    for group in cluster_indices(lam, rtol):
        out[group] = lam[group].sum()
    return out
