"""Hilbert-space-free pure-state discrimination.

A codebook of coherent-state codewords is represented by its Gram matrix of
inner products and a prior vector; every measurement here is expressed in
the K-dimensional span of the codewords, so no exponential state space is
ever formed. Provides the square-root measurement (SRM), the binary
Helstrom bound, and an iterative minimum-probability-of-error (MPE) solver.
"""

from dataclasses import dataclass, field

import numpy as np

from .dmc import ConvergenceError, DiscreteChannel

EIG_CLAMP_REL = 1e-10
PRIOR_SUM_TOL = 1e-12


class NotPSDError(ValueError):
    """Matrix eigenvalues fall below the PSD clamp threshold."""


@dataclass(frozen=True, eq=False)
class PureStateEnsemble:
    """Gram matrix of codeword inner products plus prior probabilities."""

    gram: np.ndarray = field(repr=False)
    priors: np.ndarray

    def __post_init__(self):
        G = np.asarray(self.gram, dtype=float)
        p = np.asarray(self.priors, dtype=float)
        if G.ndim != 2 or G.shape[0] != G.shape[1]:
            raise ValueError(f"Gram matrix must be square, got {G.shape}")
        if p.shape != (G.shape[0],):
            raise ValueError("priors length must match Gram size")
        if not np.allclose(G, G.T, atol=1e-12):
            raise ValueError("Gram matrix must be symmetric")
        if not np.allclose(np.diag(G), 1.0, atol=1e-12):
            raise ValueError("Gram matrix must have unit diagonal")
        if np.any(p < 0) or abs(p.sum() - 1.0) > PRIOR_SUM_TOL:
            raise ValueError("priors must be nonnegative and sum to 1")
        lam_min = float(np.linalg.eigvalsh(G)[0])
        if lam_min < -EIG_CLAMP_REL * max(1.0, float(np.linalg.norm(G, 2))):
            raise NotPSDError(f"Gram matrix has eigenvalue {lam_min}")
        G = 0.5 * (G + G.T)
        G.setflags(write=False)
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "gram", G)
        object.__setattr__(self, "priors", p)

    @property
    def size(self):
        return self.gram.shape[0]


@dataclass(frozen=True)
class MpeResult:
    """Outcome of the MPE fixed-point solve."""

    success_probability: float
    channel: DiscreteChannel
    iterations: int
    success_trace: tuple


def gram_from_code(code, nbar):
    """Coherent-state Gram matrix of a BPSK codebook, uniform priors.

    Two codewords at Hamming distance h have overlap e^{-2 nbar h}, the
    product of the per-symbol overlaps <alpha|-alpha> = e^{-2 nbar}.
    """
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    cw = code.codewords
    dist = np.count_nonzero(cw[:, None, :] != cw[None, :, :], axis=2)
    G = np.exp(-2.0 * nbar * dist)
    priors = np.full(code.size, 1.0 / code.size)
    return PureStateEnsemble(gram=G, priors=priors)


def sqrtm_psd(M):
    """Symmetric PSD square root via eigendecomposition.

    Eigenvalues in [-tol, 0) are clamped to zero, where tol is 1e-10
    relative to the largest eigenvalue; anything lower raises NotPSDError.
    """
    M = np.asarray(M, dtype=float)
    if not np.allclose(M, M.T, atol=1e-10):
        raise ValueError("matrix must be symmetric")
    lam, U = np.linalg.eigh(M)
    tol = EIG_CLAMP_REL * max(1.0, float(lam[-1]))
    if lam[0] < -tol:
        raise NotPSDError(f"eigenvalue {lam[0]} below -{tol}")
    lam = np.clip(lam, 0.0, None)
    return (U * np.sqrt(lam)) @ U.T


def _stochastic_rows(rows, tol=1e-8):
    """Remove eigendecomposition round-off; reject genuine stochasticity defects.

    Heavily skewed priors make the weighted-state operator ill conditioned
    (kappa ~ 1/min(p)^2), which shows up as ~1e-10 row-sum round-off; real
    completeness bugs are orders of magnitude larger than this tolerance.
    """
    rows = np.clip(rows, 0.0, None)
    sums = rows.sum(axis=1, keepdims=True)
    worst = float(np.max(np.abs(sums - 1.0)))
    if worst > tol:
        raise ArithmeticError(f"measurement rows sum to 1 +- {worst}, beyond {tol}")
    return rows / sums


def srm_channel(ensemble):
    """Transition matrix of the square-root measurement.

    With Ghat_ij = sqrt(p_i p_j) G_ij, the SRM gives
    P(j|i) = (Ghat^{1/2})_ij^2 / p_i. Zero-prior rows are uniform by
    convention (they carry no weight in any mutual information).
    """
    p = ensemble.priors
    sp = np.sqrt(p)
    S = sqrtm_psd(sp[:, None] * ensemble.gram * sp[None, :])
    K = ensemble.size
    rows = np.empty((K, K))
    for i in range(K):
        if p[i] > 0:
            rows[i] = S[i] ** 2 / p[i]
        else:
            rows[i] = 1.0 / K
    labels = tuple(f"s{i}" for i in range(K))
    return DiscreteChannel(inputs=labels, outputs=labels, p=_stochastic_rows(rows))


def helstrom_binary(overlap_sq, p1, p2):
    """Minimum error probability for two pure states: (1 - sqrt(1 - 4 p1 p2 s^2))/2."""
    if not 0.0 <= overlap_sq <= 1.0:
        raise ValueError(f"overlap^2 must be in [0,1], got {overlap_sq}")
    if p1 < 0 or p2 < 0 or abs(p1 + p2 - 1.0) > 1e-12:
        raise ValueError(f"priors must be nonnegative and sum to 1, got {p1}, {p2}")
    return 0.5 * (1.0 - np.sqrt(1.0 - 4.0 * p1 * p2 * overlap_sq))


def _state_coords(G):
    """Factor G = R^T R; columns of R are state coordinates in the span."""
    lam, U = np.linalg.eigh(G)
    lam = np.clip(lam, 0.0, None)
    keep = lam > 4.0 * np.finfo(float).eps * max(lam[-1], 1e-300) * len(lam)
    return (U[:, keep] * np.sqrt(lam[keep])).T


def _inv_sqrt_psd(M):
    """Pseudo-inverse square root on the support of a PSD matrix."""
    lam, U = np.linalg.eigh(M)
    lam = np.clip(lam, 0.0, None)
    inv = np.zeros_like(lam)
    pos = lam > 4.0 * np.finfo(float).eps * max(lam[-1], 1e-300) * len(lam)
    inv[pos] = 1.0 / np.sqrt(lam[pos])
    return (U * inv) @ U.T


def _measurement_channel(R, Mu, priors):
    """Channel P(j|i) = <psi_i, mu_j>^2 with uniform rows for zero priors."""
    A = R.T @ Mu
    rows = A ** 2
    K = rows.shape[0]
    for i in range(K):
        if priors[i] == 0:
            rows[i] = 1.0 / K
    labels = tuple(f"s{i}" for i in range(K))
    return DiscreteChannel(inputs=labels, outputs=labels, p=_stochastic_rows(rows))


def mpe_solve(ensemble, tol=1e-12, max_iter=10000):
    """Minimum-probability-of-error measurement by fixed-point iteration.

    Seeded with the SRM, each step rebuilds the rank-one measurement vectors
    from the optimality conditions for minimum-error discrimination,
    expressed entirely in the span of the codewords:

        mu_i <- S^{-1/2} p_i sqrt(t_i) psi_i,   S = sum_i p_i^2 t_i psi_i psi_i^T

    with t_i the current success amplitude squared of state i. The success
    probability is nondecreasing; iteration stops when the improvement drops
    below ``tol``, returning the best iterate. Geometrically uniform
    ensembles with equal priors stop immediately: the SRM is already the
    fixed point.
    """
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    p = ensemble.priors
    R = _state_coords(ensemble.gram)
    W = _inv_sqrt_psd((R * p) @ R.T)
    Mu = (W @ R) * np.sqrt(p)

    def success_of(Mu):
        t = np.einsum("ri,ri->i", R, Mu) ** 2
        return float(np.sum(p * t)), t

    best_success, t = success_of(Mu)
    best_mu = Mu
    trace = [best_success]
    for it in range(1, max_iter + 1):
        W = _inv_sqrt_psd((R * (p * p * t)) @ R.T)
        Mu = (W @ R) * (p * np.sqrt(t))
        success, t = success_of(Mu)
        improvement = success - best_success
        if success >= best_success:
            best_success, best_mu = success, Mu
            trace.append(success)
        if improvement < tol:
            return MpeResult(
                success_probability=best_success,
                channel=_measurement_channel(R, best_mu, p),
                iterations=it,
                success_trace=tuple(trace),
            )
    best = MpeResult(
        success_probability=best_success,
        channel=_measurement_channel(R, best_mu, p),
        iterations=max_iter,
        success_trace=tuple(trace),
    )
    raise ConvergenceError(
        f"MPE iteration did not reach tol={tol} in {max_iter} steps", best=best
    )
