"""Seeded property suites behind the `verify` CLI command.

Each suite draws its own sample seeds from the master seed, checks one
documented invariant, and reports a (name, checks, failures) triple.
Tolerances live in module constants so a harness can tighten them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import correlations as corr
from . import koashi_winter as kw
from . import linalg as la
from . import protocols as proto

TRACE_PRESERVE_TOL = 1e-10
ENTROPY_TOL = 1e-9
ROUNDTRIP_TOL = 1e-9
CHAIN_TOL = 1e-8
CQ_DISCORD_TOL = 1e-6
LOCAL_UNITARY_TOL = 1e-6
PURE_GAP_TOL = 1e-6
KW_AGREEMENT_TOL = 1e-4
CONCURRENCE_TOL = 1e-8
PPT_TOL = 1e-9
LOCC_EQUALS_J_TOL = 1e-9
CLONER_SCAN_TOL = 1e-6
SUM_BOUND_TOL = 1e-8


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, detail: str):
        self.checks += 1
        if not cond:
            self.failures.append(detail)


def _random_bipartite_dm(seed: int, d_s: int = 2, d_a: int = 2) -> la.DensityMatrix:
    return la.DensityMatrix(la.random_density_matrix(d_s * d_a, seed), (d_s, d_a))


def suite_linalg_partial_trace(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("linalg.partial_trace_preserves_trace_hermiticity")
    for k in range(samples):
        rho = _random_bipartite_dm(seed * 1000 + k)
        for keep in ([0], [1]):
            red = la.partial_trace(rho, keep)
            res.check(abs(np.trace(red.mat) - 1.0) < TRACE_PRESERVE_TOL,
                      f"trace not preserved, seed {seed * 1000 + k}")
            res.check(np.max(np.abs(red.mat - red.mat.conj().T)) < TRACE_PRESERVE_TOL,
                      f"hermiticity not preserved, seed {seed * 1000 + k}")
    return res


def suite_linalg_entropy(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("linalg.entropy_additivity_and_unitary_invariance")
    for k in range(samples):
        s = seed * 2000 + k
        a = la.random_density_matrix(2, s)
        b = la.random_density_matrix(3, s + 1)
        lhs = la.von_neumann_entropy(la.tensor(a, b))
        rhs = la.von_neumann_entropy(a) + la.von_neumann_entropy(b)
        res.check(abs(lhs - rhs) < ENTROPY_TOL, f"additivity failed, seed {s}")
        u = la.random_unitary(4, s + 2)
        rho = la.random_density_matrix(4, s + 3)
        res.check(
            abs(la.von_neumann_entropy(u @ rho @ u.conj().T) - la.von_neumann_entropy(rho))
            < ENTROPY_TOL,
            f"unitary invariance failed, seed {s}",
        )
    return res


def suite_linalg_purify(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("linalg.purify_roundtrip_and_spectra")
    for k in range(samples):
        s = seed * 3000 + k
        rho = la.DensityMatrix(la.random_density_matrix(4, s), (4,))
        psi = la.purify(rho)
        back = la.partial_trace(psi.to_density(), [0])
        res.check(np.max(np.abs(back.mat - rho.mat)) < ROUNDTRIP_TOL,
                  f"purify roundtrip failed, seed {s}")
        vals = np.linalg.eigvalsh(rho.mat)
        res.check(vals[0] >= -1e-10 and vals[-1] <= 1 + 1e-10 and abs(vals.sum() - 1) < 1e-9,
                  f"spectrum out of range, seed {s}")
    return res


def suite_corr_chain(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("correlations.sampled_povm_chain_0_J_Ic_I")
    for k in range(max(1, samples // 10)):
        s = seed * 4000 + k
        rho = _random_bipartite_dm(s)
        rep = corr.classical_correlation(rho)
        res.check(rep.classical_info <= rep.mutual_info + CHAIN_TOL,
                  f"Ic exceeds I, seed {s}")
        res.check(rep.discord >= -CHAIN_TOL, f"negative discord, seed {s}")
        for n_out, off in ((2, 0), (3, 500)):
            for j in range(5):
                m = corr.random_povm(n_out, s + off + j)
                jval = corr.accessible_information(rho, m)
                res.check(-CHAIN_TOL <= jval <= rep.classical_info + CHAIN_TOL,
                          f"sampled POVM beats the optimizer, seed {s + off + j}")
    return res


def suite_corr_cq_states(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("correlations.cq_states_have_zero_discord")
    for k in range(max(1, samples // 10)):
        s = seed * 5000 + k
        rng = np.random.default_rng(s)
        p = rng.dirichlet([1.0, 1.0])
        mats = [la.random_density_matrix(2, s + 1), la.random_density_matrix(2, s + 2)]
        mat = sum(
            p[i] * la.tensor(mats[i], np.diag([1.0 if j == i else 0.0 for j in range(2)]))
            for i in range(2)
        )
        rho = la.DensityMatrix(mat, (2, 2))
        rep = corr.classical_correlation(rho)
        res.check(abs(rep.discord) < CQ_DISCORD_TOL, f"cq state has discord, seed {s}")
    return res


def suite_corr_local_unitary(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("correlations.local_unitary_invariance")
    for k in range(max(1, samples // 10)):
        s = seed * 6000 + k
        rho = _random_bipartite_dm(s)
        u = la.tensor(la.random_unitary(2, s + 1), la.random_unitary(2, s + 2))
        rot = la.DensityMatrix(la.hermitianize(u @ rho.mat @ u.conj().T), (2, 2))
        r1 = corr.classical_correlation(rho)
        r2 = corr.classical_correlation(rot)
        res.check(abs(r1.classical_info - r2.classical_info) < LOCAL_UNITARY_TOL,
                  f"Ic not locally unitary invariant, seed {s}")
        res.check(abs(r1.discord - r2.discord) < LOCAL_UNITARY_TOL,
                  f"discord not locally unitary invariant, seed {s}")
    return res


def suite_corr_pure_gap(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("correlations.pure_state_factor_two_gap")
    for k in range(max(1, samples // 10)):
        s = seed * 7000 + k
        psi = la.random_pure_state(4, s)
        rho = la.DensityMatrix(psi.to_density().mat, (2, 2))
        rep = corr.classical_correlation(rho)
        s_s = la.von_neumann_entropy(la.partial_trace(rho, [0]))
        res.check(abs(rep.discord - s_s) < PURE_GAP_TOL, f"discord != S(rho^S), seed {s}")
        res.check(abs(rep.mutual_info - 2 * s_s) < PURE_GAP_TOL, f"I != 2 S(rho^S), seed {s}")
    return res


def suite_kw_agreement(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("koashi_winter.dual_route_agreement_and_monotonicity")
    thetas = np.linspace(0.0, np.pi / 4, min(101, max(3, samples + 1)))
    vals = []
    for t in thetas:
        rho = kw.example_state(t)
        v_kw = kw.classical_correlation_kw(rho)
        v_opt = corr.classical_correlation(rho).classical_info
        vals.append(v_kw)
        res.check(abs(v_kw - v_opt) < KW_AGREEMENT_TOL,
                  f"routes disagree at theta={t:.6f}")
    res.check(all(vals[i + 1] <= vals[i] + 1e-9 for i in range(len(vals) - 1)),
              "kw route not monotone nonincreasing")
    res.check(abs(vals[0] - 1.0) < 1e-9 and abs(vals[-1]) < 1e-9, "endpoint values wrong")
    return res


def suite_kw_concurrence(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("koashi_winter.concurrence_invariance_and_pure_ef")
    for k in range(samples):
        s = seed * 8000 + k
        rho = la.DensityMatrix(la.random_density_matrix(4, s), (2, 2))
        u = la.tensor(la.random_unitary(2, s + 1), la.random_unitary(2, s + 2))
        rot = la.DensityMatrix(la.hermitianize(u @ rho.mat @ u.conj().T), (2, 2))
        res.check(abs(kw.concurrence(rho) - kw.concurrence(rot)) < CONCURRENCE_TOL,
                  f"concurrence not invariant, seed {s}")
        psi = la.random_pure_state(4, s + 3)
        pure = la.DensityMatrix(psi.to_density().mat, (2, 2))
        ef = kw.entanglement_of_formation(pure)
        s_red = la.von_neumann_entropy(la.partial_trace(pure, [0]))
        res.check(abs(ef - s_red) < CONCURRENCE_TOL, f"EF of pure state wrong, seed {s}")
    return res


def suite_proto_entanglement_breaking(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("protocols.measure_and_prepare_outputs_are_ppt")
    for k in range(samples):
        s = seed * 9000 + k
        rho = _random_bipartite_dm(s)
        m = corr.qubit_projective_povm(*np.random.default_rng(s).uniform([0, 0], [np.pi, 2 * np.pi]))
        sigmas = tuple(
            la.DensityMatrix(la.random_density_matrix(2, s + 10 + i), (2,)) for i in range(2)
        )
        out = proto.measure_and_prepare(rho, proto.PreparedEnsembleChannel(m, sigmas))
        pt = la.partial_transpose(out.mat, out.dims, 1)
        res.check(np.linalg.eigvalsh(pt)[0] >= -PPT_TOL, f"output not PPT, seed {s}")
    return res


def suite_proto_locc(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("protocols.locc_transfer_matches_J_and_respects_Ic")
    for k in range(max(1, samples // 20)):
        s = seed * 10000 + k
        rho = _random_bipartite_dm(s)
        ic = corr.classical_correlation(rho).classical_info
        for j in range(10):
            m = corr.qubit_projective_povm(
                *np.random.default_rng(s + j).uniform([0, 0], [np.pi, 2 * np.pi])
            )
            li = proto.locc_transfer_info(rho, m)
            res.check(abs(li - corr.accessible_information(rho, m)) < LOCC_EQUALS_J_TOL,
                      f"locc transfer != J, seed {s + j}")
            res.check(li <= ic + CHAIN_TOL, f"locc transfer beats Ic, seed {s + j}")
    return res


def suite_proto_cloner(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("protocols.cloner_matches_brute_force_scan")
    for t in np.linspace(0.0, np.pi / 4, min(101, max(3, samples + 1))):
        psi, phi = kw.example_branches(t)
        out = proto.optimal_state_dependent_cloner(psi, phi)
        ref = proto.cloner_fidelity_scan(psi, phi)
        res.check(abs(out.fidelity - ref) < CLONER_SCAN_TOL,
                  f"fidelity off the scan at theta={t:.6f}")
        s_in = np.vdot(psi.vec, phi.vec).real
        res.check(abs(np.vdot(out.alpha.vec, out.beta.vec) - s_in) < 1e-8,
                  f"output overlap drifted at theta={t:.6f}")
    return res


def suite_proto_broadcast(seed: int, samples: int) -> SuiteResult:
    res = SuiteResult("protocols.broadcast_sum_and_average_bounds")
    for k in range(samples):
        s = seed * 11000 + k
        psi = la.StateVector(la.random_pure_state(4, s).vec, (2, 2))
        b_dim = (1, 2, 4)[k % 3]
        iso = proto.random_broadcast_isometry(2, (2, 2), b_dim, s + 1)
        out = proto.apply_broadcast(psi, iso)
        infos = proto.recipient_infos(out)
        s_s = la.von_neumann_entropy(la.partial_trace(out, [0]))
        res.check(infos[0] + infos[1] <= 2 * s_s + SUM_BOUND_TOL,
                  f"two-recipient sum bound violated, seed {s}")
        res.check(min(infos) <= s_s + SUM_BOUND_TOL,
                  f"min recipient info exceeds S(rho^S), seed {s}")
    for k in range(max(1, samples // 2)):
        s = seed * 12000 + k
        psi = la.StateVector(la.random_pure_state(4, s).vec, (2, 2))
        iso = proto.random_broadcast_isometry(2, (2, 2, 2), 2, s + 1)
        res.check(proto.average_bound_check(psi, iso, tol=SUM_BOUND_TOL),
                  f"n=3 average bound violated, seed {s}")
    return res


ALL_SUITES = [
    suite_linalg_partial_trace,
    suite_linalg_entropy,
    suite_linalg_purify,
    suite_corr_chain,
    suite_corr_cq_states,
    suite_corr_local_unitary,
    suite_corr_pure_gap,
    suite_kw_agreement,
    suite_kw_concurrence,
    suite_proto_entanglement_breaking,
    suite_proto_locc,
    suite_proto_cloner,
    suite_proto_broadcast,
]


def run_all(seed: int, samples: int) -> list[SuiteResult]:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    return [suite(seed, samples) for suite in ALL_SUITES]
