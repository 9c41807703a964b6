"""Communication protocols: measure-and-prepare (LOCC) transfer,
state-dependent cloning to two recipients, random broadcast isometries,
and the crossover angle where cloning starts to beat LOCC.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlations import Povm, _branch_states, mutual_information
from .koashi_winter import classical_correlation_kw, example_branches, example_state
from .linalg import (
    ISOMETRY_TOL,
    DensityMatrix,
    StateVector,
    hermitianize,
    partial_trace,
    partial_trace_mat,
    random_isometry_mat,
    tensor,
    von_neumann_entropy,
)

CROSSOVER_BRACKET = (0.05 * np.pi, 0.15 * np.pi)
CROSSOVER_TOL = 1e-6


@dataclass(frozen=True)
class PreparedEnsembleChannel:
    """Measure the apparatus, then prepare a fixed state per outcome."""

    measurement: Povm
    prepared: tuple[DensityMatrix, ...]

    def __post_init__(self):
        if len(self.measurement.elements) != len(self.prepared):
            raise ValueError("one prepared state per measurement outcome required")


@dataclass(frozen=True)
class BroadcastIsometry:
    """Isometry from the apparatus into recipients x ancilla."""

    matrix: np.ndarray
    recipient_dims: tuple[int, ...]
    ancilla_dim: int

    def __post_init__(self):
        mat = np.ascontiguousarray(np.asarray(self.matrix, dtype=complex))
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "recipient_dims", tuple(int(d) for d in self.recipient_dims))
        d_out = int(np.prod(self.recipient_dims)) * self.ancilla_dim
        if mat.shape[0] != d_out:
            raise ValueError(f"matrix rows {mat.shape[0]} do not match output dim {d_out}")
        gram = mat.conj().T @ mat
        if np.max(np.abs(gram - np.eye(mat.shape[1]))) > ISOMETRY_TOL:
            raise ValueError("matrix is not an isometry")

    @property
    def d_in(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class ClonerOutput:
    """Joint two-recipient outputs for the two inputs, with the global
    fidelity attained."""

    alpha: StateVector
    beta: StateVector
    fidelity: float


def measure_and_prepare(rho: DensityMatrix, ch: PreparedEnsembleChannel) -> DensityMatrix:
    """Apply the entanglement-breaking map
    sum_i Tr_A[(1 x E_i) rho] x sigma_i."""
    if len(rho.dims) != 2:
        raise ValueError(f"expected a bipartite layout, got dims {rho.dims}")
    d_s = rho.dims[0]
    d_r = ch.prepared[0].dim
    branches, _ = _branch_states(rho, ch.measurement.elements)
    out = np.zeros((d_s * d_r, d_s * d_r), dtype=complex)
    for b, sigma in zip(branches, ch.prepared):
        if sigma.dim != d_r:
            raise ValueError("prepared states must share one dimension")
        out += tensor(b, sigma.mat)
    return DensityMatrix(hermitianize(out), (d_s, d_r))


def locc_transfer_info(rho: DensityMatrix, m: Povm) -> float:
    """I(S:R) after the optimal LOCC relay: measure with m, prepare
    orthonormal pure flag states."""
    k = len(m.elements)
    flags = tuple(
        DensityMatrix(np.diag([1.0 if j == i else 0.0 for j in range(k)]), (k,))
        for i in range(k)
    )
    final = measure_and_prepare(rho, PreparedEnsembleChannel(m, flags))
    return mutual_information(final)


def _cloner_plane(psi: StateVector, phi: StateVector):
    """Orthonormal basis (bisector, difference) of span{|psi psi>, |phi phi>}
    plus the in-plane angles of the target products."""
    pp = np.kron(psi.vec, psi.vec)
    ff = np.kron(phi.vec, phi.vec)
    s2 = np.vdot(pp, ff)
    if abs(s2.imag) > 1e-10:
        raise ValueError("cloner requires a real overlap between the inputs")
    e1 = pp + ff
    e1 = e1 / np.linalg.norm(e1)
    diff = pp - ff
    nd = np.linalg.norm(diff)
    if nd < 1e-12:
        return pp, ff, e1, None, 0.0
    e2 = diff / nd
    omega_big = np.arccos(np.clip(s2.real, -1.0, 1.0))
    return pp, ff, e1, e2, omega_big


def optimal_state_dependent_cloner(psi: StateVector, phi: StateVector) -> ClonerOutput:
    """Symmetric state-dependent cloner for two qubit states with real
    nonnegative overlap s: outputs lie in span{|psi psi>, |phi phi>},
    keep mutual overlap s, and sit symmetrically about the bisector,
    which maximizes the global fidelity
    F = (|<alpha|psi psi>|^2 + |<beta|phi phi>|^2) / 2."""
    if psi.dim != 2 or phi.dim != 2:
        raise ValueError("cloner inputs must be qubits")
    s = np.vdot(psi.vec, phi.vec)
    if abs(s.imag) > 1e-10 or s.real < -1e-10:
        raise ValueError("cloner requires a real nonnegative input overlap")
    s = max(0.0, s.real)
    pp, ff, e1, e2, omega_big = _cloner_plane(psi, phi)
    if e2 is None:
        # Identical inputs: perfect cloning.
        out = StateVector(pp, (2, 2))
        return ClonerOutput(out, out, 1.0)
    omega = np.arccos(np.clip(s, -1.0, 1.0))
    alpha = np.cos(omega / 2) * e1 + np.sin(omega / 2) * e2
    beta = np.cos(omega / 2) * e1 - np.sin(omega / 2) * e2
    fid = 0.5 * (abs(np.vdot(alpha, pp)) ** 2 + abs(np.vdot(beta, ff)) ** 2)
    return ClonerOutput(StateVector(alpha, (2, 2)), StateVector(beta, (2, 2)), float(fid))


def cloner_fidelity_scan(psi: StateVector, phi: StateVector,
                         coarse: float = 1e-3, fine: float = 1e-6) -> float:
    """Brute-force reference for the best global fidelity: scan pairs of
    unit vectors in the real 2-plane of the target products subject to
    the overlap constraint, one angle parameter at the stated resolution."""
    s = max(0.0, np.vdot(psi.vec, phi.vec).real)
    pp, ff, e1, e2, omega_big = _cloner_plane(psi, phi)
    if e2 is None:
        return 1.0
    omega = np.arccos(np.clip(s, -1.0, 1.0))

    def best_over(us: np.ndarray) -> tuple[float, float]:
        # alpha at angle u from |psi psi>; beta constrained so the pair
        # overlap is cos(omega), two sign branches for the constraint.
        f_best, u_best = -1.0, 0.0
        for v in (omega_big - omega - us, omega_big + omega - us):
            f = 0.5 * (np.cos(us) ** 2 + np.cos(v) ** 2)
            k = int(np.argmax(f))
            if f[k] > f_best:
                f_best, u_best = float(f[k]), float(us[k])
        return f_best, u_best

    us = np.arange(-np.pi, np.pi, coarse)
    _, u0 = best_over(us)
    us = np.arange(u0 - 2 * coarse, u0 + 2 * coarse, fine)
    f_best, _ = best_over(us)
    return f_best


def cloning_recipient_info(theta: float) -> float:
    """I(S:R1) (= I(S:R2) by symmetry) after cloning the branch states of
    the example family to two recipients."""
    psi, phi = example_branches(theta)
    out = optimal_state_dependent_cloner(psi, phi)
    p0 = np.diag([1.0, 0.0])
    p1 = np.diag([0.0, 1.0])
    mat = 0.5 * tensor(p0, out.alpha.to_density().mat) + 0.5 * tensor(p1, out.beta.to_density().mat)
    rho = DensityMatrix(mat, (2, 2, 2))
    return mutual_information(partial_trace(rho, [0, 1]))


@dataclass(frozen=True)
class CrossoverResult:
    theta: float
    residual_bits: float
    tolerance_rad: float


def _locc_minus_cloning(theta: float) -> float:
    return classical_correlation_kw(example_state(theta)) - cloning_recipient_info(theta)


def find_crossover() -> CrossoverResult:
    """Bisect for the angle where cloning overtakes LOCC; positive gap
    below the root, negative above."""
    lo, hi = CROSSOVER_BRACKET
    g_lo, g_hi = _locc_minus_cloning(lo), _locc_minus_cloning(hi)
    if not (g_lo > 0 > g_hi):
        # Widen the bracket once about its center, staying inside (0, pi/4).
        c, w = (lo + hi) / 2, hi - lo
        lo = max(1e-6, c - w)
        hi = min(np.pi / 4 - 1e-6, c + w)
        g_lo, g_hi = _locc_minus_cloning(lo), _locc_minus_cloning(hi)
        if not (g_lo > 0 > g_hi):
            raise RuntimeError("no sign change in the crossover bracket")
    while hi - lo > CROSSOVER_TOL:
        mid = (lo + hi) / 2
        if _locc_minus_cloning(mid) > 0:
            lo = mid
        else:
            hi = mid
    root = (lo + hi) / 2
    return CrossoverResult(float(root), float(_locc_minus_cloning(root)), CROSSOVER_TOL)


def classical_copy_isometry() -> BroadcastIsometry:
    """Copy a qubit apparatus in the computational basis: |a> -> |aa>."""
    v = np.zeros((4, 2))
    v[0, 0] = 1.0
    v[3, 1] = 1.0
    return BroadcastIsometry(v, (2, 2), 1)


def random_broadcast_isometry(d_in: int, recipient_dims, ancilla_dim: int,
                              seed: int) -> BroadcastIsometry:
    recipient_dims = tuple(int(d) for d in recipient_dims)
    d_out = int(np.prod(recipient_dims)) * ancilla_dim
    return BroadcastIsometry(random_isometry_mat(d_in, d_out, seed), recipient_dims, ancilla_dim)


def apply_broadcast(state: DensityMatrix | StateVector, iso: BroadcastIsometry) -> DensityMatrix:
    """Send the apparatus factor through the isometry and discard the
    ancilla; output is over system x recipients."""
    dims = state.dims
    if len(dims) != 2:
        raise ValueError(f"expected a bipartite layout, got dims {dims}")
    d_s, d_a = dims
    if iso.d_in != d_a:
        raise ValueError("isometry input does not match the apparatus dimension")
    w = tensor(np.eye(d_s), iso.matrix)
    if isinstance(state, StateVector):
        vec = w @ state.vec
        full = np.outer(vec, vec.conj())
    else:
        full = w @ state.mat @ w.conj().T
    out_dims = (d_s,) + iso.recipient_dims + (iso.ancilla_dim,)
    keep = list(range(len(out_dims) - 1))
    red, kept = partial_trace_mat(full, out_dims, keep)
    return DensityMatrix(hermitianize(red), kept)


def recipient_infos(rho: DensityMatrix) -> list[float]:
    """I(S:R_i) for each recipient factor of a system x recipients state."""
    n = len(rho.dims) - 1
    return [mutual_information(partial_trace(rho, [0, i + 1])) for i in range(n)]


def average_bound_check(psi: StateVector, iso: BroadcastIsometry, tol: float = 1e-8) -> bool:
    """Pure-input average bound: mean_i I(S:R_i) <= S(rho^S) + tol."""
    if not isinstance(psi, StateVector):
        raise ValueError("average bound is proven for pure inputs only")
    if len(iso.recipient_dims) < 2:
        raise ValueError("need at least two recipients")
    out = apply_broadcast(psi, iso)
    s_s = von_neumann_entropy(partial_trace(out, [0]))
    infos = recipient_infos(out)
    return float(np.mean(infos)) <= s_s + tol
