"""Augmented-Lagrangian fusion of relation graphs into a bistochastic matrix.

Minimizes

    sum_m alpha_m ||Z - A_m||_F^2 + lambda1 ||Z||_F^2 + lambda2 ||L||_*

subject to L = I - Z, Z 1 = 1, Z = Z^T, Z >= 0, by alternating closed-form
updates of Z, an auxiliary transpose copy Zhat, and the Laplacian iterate L
(via singular-value thresholding), with multiplier estimates and a
geometrically growing penalty mu.

Entries of the result are pairwise same-team affinities: row-stochastic,
symmetric, non-negative.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np


class NumericalSolverError(RuntimeError):
    """An internal linear-algebra failure; carries the offending matrix."""

    def __init__(self, message, iterate=None):
        super().__init__(message)
        self.iterate = iterate


@dataclass(frozen=True)
class SolverConfig:
    """Weights, regularization strengths, and penalty schedule.

    alphas may be None, meaning equal weights 1/M resolved when the graph
    list is known. When given, they must be non-negative and sum to 1.
    """

    alphas: tuple | None = None
    lambda1: float = 0.1
    lambda2: float = 0.1
    mu0: float = 0.1
    rho: float = 1.1
    tolerance: float = 1e-6
    max_iterations: int = 1000

    def __post_init__(self):
        if self.alphas is not None:
            a = tuple(float(x) for x in self.alphas)
            object.__setattr__(self, "alphas", a)
            if len(a) == 0:
                raise ValueError("alphas must be non-empty when given")
            if any(x < 0 for x in a):
                raise ValueError("alphas must be non-negative")
            if abs(sum(a) - 1.0) > 1e-12:
                raise ValueError("alphas must sum to 1, got %r" % (sum(a),))
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise ValueError("lambda1 and lambda2 must be non-negative")
        if not self.mu0 > 0:
            raise ValueError("mu0 must be positive")
        if not 1.0 < self.rho < 2.0:
            raise ValueError("rho must lie strictly between 1 and 2")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not (isinstance(self.max_iterations, int) and self.max_iterations >= 1):
            raise ValueError("max_iterations must be a positive integer")

    def resolved(self, m: int) -> "SolverConfig":
        """Fill in equal alphas for m graphs; check the count otherwise."""
        if m < 1:
            raise ValueError("need at least one graph")
        if self.alphas is None:
            return replace(self, alphas=(1.0 / m,) * m)
        if len(self.alphas) != m:
            raise ValueError("%d alphas for %d graphs" % (len(self.alphas), m))
        return self


@dataclass(frozen=True)
class SolverState:
    """All iterates of one solver run at some iteration k."""

    Z: np.ndarray
    Zhat: np.ndarray
    L: np.ndarray
    phi1: np.ndarray
    Phi2: np.ndarray
    Phi3: np.ndarray
    Phi4: np.ndarray
    mu: float
    k: int


@dataclass(frozen=True)
class Residuals:
    """Infinity-norm violations of the four equality constraints."""

    r1: float  # |Z 1 - 1|_inf       (row sums)
    r2: float  # max |Z^T - Zhat|    (transpose copy)
    r3: float  # max |L - I + Z|     (Laplacian link)
    r4: float  # max |Zhat - Z|      (symmetry via the copy)

    @property
    def max_residual(self) -> float:
        return max(self.r1, self.r2, self.r3, self.r4)


@dataclass(frozen=True)
class IterationRecord:
    r1: float
    r2: float
    r3: float
    r4: float
    objective: float


@dataclass(frozen=True)
class SolveResult:
    Z: np.ndarray
    converged: bool
    iterations: int
    residual_trace: tuple = field(default_factory=tuple)


def _adjacency(graph) -> np.ndarray:
    a = getattr(graph, "adjacency", graph)
    return np.asarray(a, dtype=float)


def objective(Z, L, graphs, config: SolverConfig) -> float:
    """sum_m alpha_m ||Z - A_m||_F^2 + lambda1 ||Z||_F^2 + lambda2 ||L||_*."""
    Z = np.asarray(Z, dtype=float)
    L = np.asarray(L, dtype=float)
    adjs = [_adjacency(g) for g in graphs]
    config = config.resolved(len(adjs))
    for a in adjs:
        if a.shape != Z.shape:
            raise ValueError("graph shape %r does not match Z shape %r" % (a.shape, Z.shape))
    fit = sum(alpha * np.sum((Z - a) ** 2) for alpha, a in zip(config.alphas, adjs))
    nuclear = float(np.linalg.svd(L, compute_uv=False).sum())
    return float(fit + config.lambda1 * np.sum(Z**2) + config.lambda2 * nuclear)


def svt(G, tau: float) -> np.ndarray:
    """Singular-value thresholding: shrink each singular value by tau, floor at 0.

    This is the proximal operator of tau * ||.||_*; svt(G, 0) returns G
    unchanged.
    """
    G = np.asarray(G, dtype=float)
    if tau < 0:
        raise ValueError("tau must be non-negative")
    if tau == 0:
        return G.copy()
    try:
        U, s, Vt = np.linalg.svd(G, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalSolverError("SVD failed during thresholding: %s" % exc, iterate=G) from exc
    return (U * np.maximum(s - tau, 0.0)) @ Vt


def initial_state(graphs, config: SolverConfig) -> SolverState:
    """Warm start at the weighted graph average with zero multipliers."""
    adjs = [_adjacency(g) for g in graphs]
    config = config.resolved(len(adjs))
    n = adjs[0].shape[0]
    Z0 = sum(alpha * a for alpha, a in zip(config.alphas, adjs))
    return SolverState(
        Z=Z0,
        Zhat=Z0.T.copy(),
        L=np.eye(n) - Z0,
        phi1=np.zeros(n),
        Phi2=np.zeros((n, n)),
        Phi3=np.zeros((n, n)),
        Phi4=np.zeros((n, n)),
        mu=config.mu0,
        k=0,
    )


def update_z_unclamped(state: SolverState, graphs, config: SolverConfig) -> np.ndarray:
    """Closed-form minimizer of the smooth penalized objective in Z.

    Setting the Z-gradient of the augmented objective to zero gives
    Z ((2 sum alpha + 2 lambda1 + 3 mu) I + mu 1 1^T) = RHS, solved as a
    linear system against the SPD right factor rather than by explicit
    inverse.
    """
    adjs = [_adjacency(g) for g in graphs]
    config = config.resolved(len(adjs))
    n = state.Z.shape[0]
    mu = state.mu
    ones = np.ones((n, n))
    eye = np.eye(n)
    rhs = sum(2.0 * alpha * a for alpha, a in zip(config.alphas, adjs))
    rhs = rhs + mu * (ones + state.Zhat.T + state.Zhat + eye - state.L)
    rhs = rhs - np.outer(state.phi1, np.ones(n)) - state.Phi2.T - state.Phi3 + state.Phi4
    c = 2.0 * sum(config.alphas) + 2.0 * config.lambda1 + 3.0 * mu
    B = c * eye + mu * ones
    try:
        # Z B = rhs with B symmetric, so solve B Z^T = rhs^T
        return np.linalg.solve(B, rhs.T).T
    except np.linalg.LinAlgError as exc:
        raise NumericalSolverError("Z-update solve failed: %s" % exc, iterate=B) from exc


def update_z(state: SolverState, graphs, config: SolverConfig) -> np.ndarray:
    """The Z step: closed-form solve followed by the elementwise max{Z, 0} clamp."""
    return np.maximum(update_z_unclamped(state, graphs, config), 0.0)


def update_zhat(state: SolverState, config: SolverConfig) -> np.ndarray:
    """The transpose-copy step: Zhat = (mu Z^T + mu Z + Phi2 + Phi4) / (2 mu)."""
    mu = state.mu
    return (mu * (state.Z.T + state.Z) + state.Phi2 + state.Phi4) / (2.0 * mu)


def update_laplacian(state: SolverState, config: SolverConfig) -> np.ndarray:
    """The L step: proximal shrinkage toward I - Z.

    Minimizes lambda2 ||L||_* + (mu/2) ||L - (I - Z - Phi3/mu)||_F^2, i.e.
    svt of the target with threshold lambda2/mu.
    """
    n = state.Z.shape[0]
    target = np.eye(n) - state.Z - state.Phi3 / state.mu
    return svt(target, config.lambda2 / state.mu)


def update_multipliers(state: SolverState, config: SolverConfig) -> SolverState:
    """Multiplier ascent with the pre-update mu, then the geometric mu step."""
    n = state.Z.shape[0]
    ones = np.ones(n)
    mu = state.mu
    k = state.k + 1
    return replace(
        state,
        phi1=state.phi1 + mu * (state.Z @ ones - ones),
        Phi2=state.Phi2 + mu * (state.Z.T - state.Zhat),
        Phi3=state.Phi3 + mu * (state.L - np.eye(n) + state.Z),
        Phi4=state.Phi4 + mu * (state.Zhat - state.Z),
        mu=config.mu0 * config.rho**k,
        k=k,
    )


def constraint_residuals(state: SolverState) -> Residuals:
    n = state.Z.shape[0]
    ones = np.ones(n)
    return Residuals(
        r1=float(np.max(np.abs(state.Z @ ones - ones))),
        r2=float(np.max(np.abs(state.Z.T - state.Zhat))),
        r3=float(np.max(np.abs(state.L - np.eye(n) + state.Z))),
        r4=float(np.max(np.abs(state.Zhat - state.Z))),
    )


def solve(graphs, config: SolverConfig | None = None) -> SolveResult:
    """Run the full alternating loop until the constraints hold.

    Parameters
    ----------
    graphs : list of RelationGraph or array-like
        The relation graphs A_m, all N x N with N >= 2. Pass normalized
        graphs so the alphas stay interpretable.
    config : SolverConfig, optional

    Returns
    -------
    SolveResult
        Final Z (symmetrized and row-renormalized), a converged flag,
        the iteration count, and the per-iteration residual/objective
        trace. Non-convergence is reported through the flag, not raised.
    """
    if config is None:
        config = SolverConfig()
    adjs = [_adjacency(g) for g in graphs]
    if not adjs:
        raise ValueError("need at least one graph")
    n = adjs[0].shape[0]
    if n < 2:
        raise ValueError("graphs must be at least 2x2")
    for a in adjs:
        if a.shape != (n, n):
            raise ValueError("all graphs must share the same square shape")
    config = config.resolved(len(adjs))

    state = initial_state(adjs, config)
    trace = []
    converged = False
    for _ in range(config.max_iterations):
        state = replace(state, Z=update_z(state, adjs, config))
        state = replace(state, Zhat=update_zhat(state, config))
        state = replace(state, L=update_laplacian(state, config))
        res = constraint_residuals(state)
        trace.append(
            IterationRecord(res.r1, res.r2, res.r3, res.r4,
                            objective(state.Z, state.L, adjs, config))
        )
        state = update_multipliers(state, config)
        if res.max_residual <= config.tolerance:
            converged = True
            break

    Z = 0.5 * (state.Z + state.Z.T)
    sums = Z.sum(axis=1, keepdims=True)
    sums[sums <= 0] = 1.0  # only possible on wildly non-converged runs
    Z = Z / sums
    return SolveResult(Z=Z, converged=converged, iterations=state.k,
                       residual_trace=tuple(trace))


def save_solve_trace(result: SolveResult, path) -> None:
    """Emit the convergence record: converged flag, iterations, residuals."""
    doc = {
        "converged": result.converged,
        "iterations": result.iterations,
        "residuals": [
            {"r1": r.r1, "r2": r.r2, "r3": r.r3, "r4": r.r4, "objective": r.objective}
            for r in result.residual_trace
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_solve_trace(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
