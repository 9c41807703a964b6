"""Mutual information, accessible information, discord, and the
measurement optimizer giving the classical-communication limit.

The optimizer maximizes the post-measurement information J over rank-1
two-outcome projective measurements on a qubit apparatus (coarse angle
grid followed by Nelder-Mead refinement); an optional mode also searches
three-outcome rank-1 POVMs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .linalg import (
    DensityMatrix,
    entropy_of_spectrum,
    hermitianize,
    partial_trace,
    random_isometry_mat,
    von_neumann_entropy,
)

POVM_PSD_TOL = 1e-10
POVM_SUM_TOL = 1e-9
ZERO_PROB = 1e-12

GRID_THETA = 64
GRID_PHI = 128
REFINE_STARTS = 5
REFINE_FTOL = 1e-10
REFINE_MAXITER = 500


@dataclass(frozen=True)
class Povm:
    """Finite measurement: PSD elements summing to the identity."""

    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        elems = tuple(np.ascontiguousarray(np.asarray(e, dtype=complex)) for e in self.elements)
        if not elems:
            raise ValueError("POVM needs at least one element")
        d = elems[0].shape[0]
        for e in elems:
            if e.shape != (d, d):
                raise ValueError("POVM elements must be square and same-sized")
            if np.linalg.eigvalsh(hermitianize(e))[0] < -POVM_PSD_TOL:
                raise ValueError("POVM element is not PSD")
        total = sum(elems)
        if np.max(np.abs(total - np.eye(d))) > POVM_SUM_TOL:
            raise ValueError("POVM elements do not sum to the identity")
        object.__setattr__(self, "elements", elems)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


@dataclass(frozen=True)
class MeasurementEnsemble:
    """Outcome probabilities with the conditional system states."""

    outcomes: tuple[tuple[float, DensityMatrix], ...]

    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.outcomes])


@dataclass(frozen=True)
class CorrelationReport:
    """I, I^c, discord, and the measurement attaining the optimum."""

    mutual_info: float
    classical_info: float
    discord: float
    measurement: Povm


def mutual_information(rho: DensityMatrix) -> float:
    """I(S:A) = S(rho^S) + S(rho^A) - S(rho^SA), in bits."""
    if len(rho.dims) != 2:
        raise ValueError(f"expected a bipartite layout, got dims {rho.dims}")
    s_s = von_neumann_entropy(partial_trace(rho, [0]))
    s_a = von_neumann_entropy(partial_trace(rho, [1]))
    return s_s + s_a - von_neumann_entropy(rho)


def _branch_states(rho: DensityMatrix, elements) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized conditionals Tr_A[(1 x E_i) rho] and their probabilities."""
    d_s, d_a = rho.dims
    r = rho.mat.reshape(d_s, d_a, d_s, d_a)
    elems = np.asarray(elements, dtype=complex)
    if elems.shape[-1] != d_a:
        raise ValueError("POVM dimension does not match the apparatus")
    branches = np.einsum("iajb,nba->nij", r, elems, optimize=True)
    probs = np.einsum("nii->n", branches).real
    return branches, probs


def post_measurement_ensemble(rho: DensityMatrix, m: Povm) -> MeasurementEnsemble:
    """Outcome probabilities and conditional states; near-zero-probability
    outcomes are dropped."""
    if len(rho.dims) != 2:
        raise ValueError(f"expected a bipartite layout, got dims {rho.dims}")
    d_s = rho.dims[0]
    branches, probs = _branch_states(rho, m.elements)
    outcomes = []
    for p, b in zip(probs, branches):
        if p > ZERO_PROB:
            outcomes.append((float(p), DensityMatrix(hermitianize(b) / p, (d_s,))))
    return MeasurementEnsemble(tuple(outcomes))


def _accessible_raw(rho: DensityMatrix, elements) -> float:
    branches, probs = _branch_states(rho, elements)
    s_s = von_neumann_entropy(partial_trace(rho, [0]))
    cond = 0.0
    for p, b in zip(probs, branches):
        if p > ZERO_PROB:
            cond += p * entropy_of_spectrum(np.linalg.eigvalsh(hermitianize(b) / p))
    return s_s - cond


def accessible_information(rho: DensityMatrix, m: Povm) -> float:
    """J = S(rho^S) - sum_i p_i S(rho_i^S), in bits."""
    return _accessible_raw(rho, m.elements)


def discord_given_measurement(rho: DensityMatrix, m: Povm) -> float:
    """Discord relative to a fixed measurement: I - J."""
    return mutual_information(rho) - accessible_information(rho, m)


def qubit_projective_povm(theta_m: float, phi_m: float) -> Povm:
    """Two-outcome projective measurement along the Bloch direction
    (theta_m, phi_m)."""
    v = np.array([np.cos(theta_m / 2), np.exp(1j * phi_m) * np.sin(theta_m / 2)])
    p = np.outer(v, v.conj())
    return Povm((p, np.eye(2) - p))


def random_povm(n_outcomes: int, seed: int, dim: int = 2) -> Povm:
    """Random rank-1 POVM from the rows of a Haar isometry."""
    if n_outcomes < dim:
        raise ValueError("rank-1 POVM needs at least dim outcomes")
    w = random_isometry_mat(dim, n_outcomes, seed)
    return Povm(tuple(np.outer(r.conj(), r) for r in w))


def _grid_best_projective(rho: DensityMatrix) -> list[tuple[float, float, float]]:
    """Evaluate J on the (theta_m, phi_m) grid; return the best cells as
    (J, theta_m, phi_m), best first."""
    d_s, _ = rho.dims
    thetas = np.linspace(0.0, np.pi, GRID_THETA)
    phis = np.linspace(0.0, 2 * np.pi, GRID_PHI, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    tt = tt.ravel()
    pp = pp.ravel()
    v = np.stack([np.cos(tt / 2), np.exp(1j * pp) * np.sin(tt / 2)], axis=1)
    e1 = np.einsum("na,nb->nab", v, v.conj())
    e2 = np.eye(2) - e1

    r = rho.mat.reshape(d_s, 2, d_s, 2)
    s_s = von_neumann_entropy(partial_trace(rho, [0]))
    j = np.full(tt.size, s_s)
    for elems in (e1, e2):
        branches = np.einsum("iajb,nba->nij", r, elems, optimize=True)
        branches = (branches + np.conj(np.swapaxes(branches, 1, 2))) / 2
        probs = np.einsum("nii->n", branches).real
        safe = np.where(probs > ZERO_PROB, probs, 1.0)
        vals = np.linalg.eigvalsh(branches / safe[:, None, None])
        vals = np.clip(vals, 0.0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            ent = -np.sum(np.where(vals > ZERO_PROB, vals * np.log2(vals), 0.0), axis=1)
        j -= np.where(probs > ZERO_PROB, probs * ent, 0.0)

    order = np.argsort(-j, kind="stable")[:REFINE_STARTS]
    return [(float(j[k]), float(tt[k]), float(pp[k])) for k in order]


def _refine_projective(rho: DensityMatrix, starts) -> tuple[float, float, float]:
    """Nelder-Mead refinement of J from each grid start; returns the best
    (J, theta_m, phi_m)."""
    d_s = rho.dims[0]
    r = rho.mat.reshape(d_s, 2, d_s, 2)
    red_s = np.trace(r, axis1=1, axis2=3)
    s_s = entropy_of_spectrum(np.linalg.eigvalsh(red_s))

    def neg_j(x):
        v = np.array([np.cos(x[0] / 2), np.exp(1j * x[1]) * np.sin(x[0] / 2)])
        e = np.outer(v, v.conj())
        b1 = np.tensordot(r, e, axes=([1, 3], [1, 0]))
        b2 = red_s - b1
        cond = 0.0
        for b in (b1, b2):
            p = np.trace(b).real
            if p > ZERO_PROB:
                h = (b + b.conj().T) / (2 * p)
                cond += p * entropy_of_spectrum(np.linalg.eigvalsh(h))
        return cond - s_s

    best = max((j, t, f) for j, t, f in starts)
    for _, t, f in starts:
        res = minimize(
            neg_j,
            x0=np.array([t, f]),
            method="Nelder-Mead",
            options={"fatol": REFINE_FTOL, "xatol": REFINE_FTOL, "maxiter": REFINE_MAXITER},
        )
        cand = (-res.fun, float(res.x[0]), float(res.x[1]))
        if cand[0] > best[0]:
            best = cand
    return best


def _bloch_ket(m: np.ndarray) -> np.ndarray:
    theta = np.arccos(np.clip(m[2], -1.0, 1.0))
    phi = np.arctan2(m[1], m[0])
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def _three_outcome_elements(x: np.ndarray) -> list[np.ndarray] | None:
    """Coplanar three-direction rank-1 POVM from (plane angles, three
    in-plane angles); None when the weight system is infeasible."""
    pt, pf, a1, a2, a3 = x
    nhat = np.array([np.sin(pt) * np.cos(pf), np.sin(pt) * np.sin(pf), np.cos(pt)])
    e1 = np.array([np.cos(pt) * np.cos(pf), np.cos(pt) * np.sin(pf), -np.sin(pt)])
    e2 = np.cross(nhat, e1)
    angles = np.array([a1, a2, a3])
    a = np.vstack([np.ones(3), np.cos(angles), np.sin(angles)])
    try:
        w = np.linalg.solve(a, np.array([2.0, 0.0, 0.0]))
    except np.linalg.LinAlgError:
        return None
    if np.min(w) < 1e-9:
        return None
    elems = []
    for wi, ang in zip(w, angles):
        m = np.cos(ang) * e1 + np.sin(ang) * e2
        v = _bloch_ket(m)
        elems.append(wi * np.outer(v, v.conj()))
    return elems


def _refine_three_outcome(rho: DensityMatrix, proj_theta: float, proj_phi: float,
                          floor: float) -> tuple[float, Povm | None]:
    """Search three-outcome rank-1 POVMs near the optimal projective axis."""

    def neg_j(x):
        elems = _three_outcome_elements(x)
        if elems is None:
            return 1e6
        return -_accessible_raw(rho, elems)

    best_j, best_x = floor, None
    starts = []
    for plane in ((proj_theta + np.pi / 2, proj_phi), (np.pi / 2, 0.0), (np.pi / 2, np.pi / 2)):
        for off in (0.0, np.pi / 6):
            trine = np.array([0.0, 2 * np.pi / 3, 4 * np.pi / 3]) + off
            starts.append(np.array([plane[0], plane[1], *trine]))
    for x0 in starts:
        res = minimize(
            neg_j,
            x0=x0,
            method="Nelder-Mead",
            options={"fatol": REFINE_FTOL, "xatol": REFINE_FTOL, "maxiter": REFINE_MAXITER},
        )
        if -res.fun > best_j:
            best_j, best_x = -res.fun, res.x
    if best_x is None:
        return floor, None
    elems = _three_outcome_elements(best_x)
    # Tidy the completeness residual before constructing the Povm.
    total = sum(elems)
    elems[0] = elems[0] + (np.eye(2) - total)
    return best_j, Povm(tuple(hermitianize(e) for e in elems))


def classical_correlation(rho: DensityMatrix, povm_outcomes: int = 2) -> CorrelationReport:
    """Maximize J over measurements on a qubit apparatus.

    Default searches two-outcome projective measurements (coarse
    64x128 angle grid, then Nelder-Mead from the best 5 cells);
    povm_outcomes=3 additionally searches coplanar three-outcome rank-1
    POVMs. Deterministic for fixed input and configuration.
    """
    if len(rho.dims) != 2:
        raise ValueError(f"expected a bipartite layout, got dims {rho.dims}")
    if rho.dims[1] != 2:
        raise ValueError("measurement optimizer requires a qubit apparatus")
    if povm_outcomes not in (2, 3):
        raise ValueError("povm_outcomes must be 2 or 3")

    i_sa = mutual_information(rho)
    starts = _grid_best_projective(rho)
    j_best, t_best, f_best = _refine_projective(rho, starts)
    measurement = qubit_projective_povm(t_best, f_best)
    if povm_outcomes == 3:
        j3, povm3 = _refine_three_outcome(rho, t_best, f_best, j_best)
        if povm3 is not None and j3 > j_best:
            j_best, measurement = j3, povm3
    return CorrelationReport(
        mutual_info=i_sa,
        classical_info=j_best,
        discord=i_sa - j_best,
        measurement=measurement,
    )
