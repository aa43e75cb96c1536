"""Reproduction checks for the published values of the model.

Each check returns a :class:`CheckResult`; :func:`verify_suite` runs all or a
named subset.  Failures are data, never exceptions.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .charpoly import EXACT, char_poly, secular_coeffs_n8
from .eplocus import ep_cascade, ep_params, inner_block_is_ep, inner_block_z, verify_ep_identity
from .jordan import assemble_Q, exact_chain, jordan_block, jordan_chain_block
from .model import Surd, ZParams, build_hamiltonian, extract_blocks, partition, z_of_t
from .perturb import perturbation_matrix, ring_distance, unfold_ring
from .spectra import POLY, classify, eigenvalues
from .sweep import sweep, to_csv


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: object
    tolerance: object
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: measured={self.measured} tolerance={self.tolerance} {self.detail}".rstrip()


@dataclass
class Options:
    seed: int = 0
    inject_z_perturbation: bool = False
    extra: dict = field(default_factory=dict)


def check_ep_identity(opts: Options) -> CheckResult:
    failed = []
    for n in range(2, 25, 2):
        z = None
        if opts.inject_z_perturbation:
            base = ep_params(n).z
            z = ZParams(n, (base[0] + 1,) + base[1:])
        if not verify_ep_identity(n, z=z).holds:
            failed.append(n)
    return CheckResult("lemma2_ep_identity", not failed, f"failing n={failed}", "exact",
                       "det(H - E I) == E^n for z_k = k(n-k), n = 2..24")


def check_secular_n8(opts: Options) -> CheckResult:
    rng = np.random.default_rng(opts.seed)
    mismatches = 0
    for _ in range(100):
        A, B, C, D = (int(v) for v in rng.integers(-50, 51, size=4))
        p = char_poly(build_hamiltonian(ZParams(8, (D, C, B, A))), EXACT).coeffs
        if (p[6], p[4], p[2], p[0]) != secular_coeffs_n8(A, B, C, D):
            mismatches += 1
    at_ep = secular_coeffs_n8(16, 15, 12, 7)
    ok = mismatches == 0 and at_ep == (0, 0, 0, 0)
    return CheckResult("secular_n8", ok, f"mismatches={mismatches}, f(16,15,12,7)={at_ep}", "exact")


def check_finetuned_spectrum(opts: Options) -> CheckResult:
    worst = 0.0
    for t in (0.25, 1.0, 4.0):
        h = build_hamiltonian(ZParams(4, (3 - 3 * t, 4 - 4 * t)))
        ev = np.sort_complex(eigenvalues(h, POLY).eigenvalues)
        r = math.sqrt(t)
        ref = np.sort_complex(np.array([-3 * r, -r, r, 3 * r], dtype=complex))
        worst = max(worst, float(np.max(np.abs(ev - ref))))
    return CheckResult("finetuned_n4_spectrum", worst <= 1e-10, worst, 1e-10)


def _nonzero_and_zero_cluster(n, t, zero_mult):
    spec = classify(eigenvalues(build_hamiltonian(z_of_t(n, t)), POLY))
    zero = [c for c in spec.clusters if abs(c.center) <= 1e-9]
    zero_ok = len(zero) == 1 and zero[0].multiplicity == zero_mult
    rest = np.sort(spec.eigenvalues[np.abs(spec.eigenvalues) > 1e-6].real)
    return spec, zero_ok, rest


def check_t15(opts: Options) -> CheckResult:
    _, zero_ok, rest = _nonzero_and_zero_cluster(8, 15, 2)
    ref = np.array([9.171029786, 4.311583134, 1.517387080])
    ref = np.sort(np.concatenate([-ref, ref]))
    err = float(np.max(np.abs(rest - ref))) if rest.size == 6 else math.inf
    return CheckResult("n8_t15_spectrum", zero_ok and err <= 1e-6, err, 1e-6,
                       f"zero cluster multiplicity 2: {zero_ok}")


def check_t12(opts: Options) -> CheckResult:
    _, zero_ok, rest = _nonzero_and_zero_cluster(8, 12, 4)
    s6 = math.sqrt(6)
    ref = np.sort([-6 - s6, -6 + s6, 6 - s6, 6 + s6])
    err = float(np.max(np.abs(rest - ref))) if rest.size == 4 else math.inf
    return CheckResult("n8_t12_spectrum", zero_ok and err <= 1e-10, err, 1e-10,
                       f"zero cluster multiplicity 4: {zero_ok}")


Q4_REFERENCE = [
    [Surd(-6), Surd(6), Surd(-3), Surd(1)],
    [Surd(-6, 0, 3), Surd(4, 0, 3), Surd(-1, 0, 3), Surd(0)],
    [Surd(-6, 0, 3), Surd(2, 0, 3), Surd(0), Surd(0)],
    [Surd(-6), Surd(0), Surd(0), Surd(0)],
]


def check_q4(opts: Options) -> CheckResult:
    exact_ok = exact_chain((3, 4)) == Q4_REFERENCE
    ref = np.array([[complex(v) for v in row] for row in Q4_REFERENCE])
    q = jordan_chain_block(build_hamiltonian(ZParams(4, (3, 4))).dense(), 0.0)
    err = float(np.max(np.abs(q - ref)))
    return CheckResult("q4_exact", exact_ok and err <= 1e-14, err, 1e-14,
                       f"exact surd match: {exact_ok}")


def check_finetuned_w4(opts: Options) -> CheckResult:
    jf = assemble_Q(4, 0)
    worst, zeros = 0.0, 0.0
    for t in (0.01, 0.1):
        w = perturbation_matrix(build_hamiltonian(ZParams(4, (3 - 3 * t, 4 - 4 * t))), jf).w
        eta = math.sqrt(1 - t) - 1
        ref = eta * np.array([[-3, 1, 0, 0], [-6, -1, 1, 0], [0, -8, 1, 1], [0, 0, -6, 3]])
        worst = max(worst, float(np.max(np.abs(w - ref))))
        zeros = max(zeros, abs(w[3, 0]), abs(w[2, 0]), abs(w[3, 1]))
    return CheckResult("finetuned_w4", worst <= 1e-12 and zeros <= 1e-12,
                       {"matrix": worst, "W41,W31,W42": float(zeros)}, 1e-12)


def check_generic_w41(opts: Options) -> CheckResult:
    jf = assemble_Q(4, 0)
    ts = np.linspace(1e-3, 1e-2, 10)
    w41 = np.array([perturbation_matrix(build_hamiltonian(z_of_t(4, float(t))), jf).w[3, 0].real
                    for t in ts])
    c2, c1, c0 = np.polyfit(ts, w41, 2)
    rel1 = abs(c1 - 3) / 3
    rel2 = abs(c2 - 7 / 16) / (7 / 16)
    return CheckResult("generic_w41_series", rel1 <= 0.01 and rel2 <= 0.01,
                       {"linear": float(c1), "quadratic": float(c2)}, "1% relative",
                       "expect 3 and 7/16")


def ring_property(seed: int, orders=(4, 6, 8), samples: int = 8):
    """d(lambda) = max eigenvalue-to-ring distance / lambda**(1/N) for random V.

    V has entries uniform in the complex unit disk and |V_N1| = 1.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for big_n in orders:
        for _ in range(samples):
            v = np.sqrt(rng.uniform(0, 1, (big_n, big_n))) * np.exp(
                2j * np.pi * rng.uniform(0, 1, (big_n, big_n)))
            v[big_n - 1, 0] = np.exp(2j * np.pi * rng.uniform())
            d = {}
            for lam in (1e-2, 1e-4, 1e-6):
                w = lam * v
                ev = np.linalg.eigvals(jordan_block(big_n) + w)
                d[lam] = ring_distance(ev, unfold_ring(w[big_n - 1, 0], big_n).ring) / lam ** (1 / big_n)
            rows.append((big_n, d))
    return rows


def check_ring_unfolding(opts: Options) -> CheckResult:
    rows = ring_property(opts.seed)
    worst = max(d[1e-6] for _, d in rows)
    halving = all(d[1e-6] <= d[1e-2] / 2 for _, d in rows)
    return CheckResult("lemma3_unfolding", worst <= 0.05 and halving, worst, 0.05,
                       f"d(1e-6) <= d(1e-2)/2 for all samples: {halving}")


def check_cascade(opts: Options) -> CheckResult:
    c = ep_cascade(8)
    ok = c.times == (0, 7, 12, 15, 16) and c.orders == (8, 6, 4, 2, 0)
    inner = all(inner_block_is_ep(8, t) for t in c.times[:-1])
    spectral = True
    for t, order in zip(c.times, c.orders):
        if order == 0:
            continue
        spec = classify(eigenvalues(build_hamiltonian(z_of_t(8, t))))
        spectral &= any(abs(cl.center) <= 1e-9 and cl.multiplicity == order for cl in spec.clusters)
        jordan_chain_block(_central_block(8, t), 0.0)
    return CheckResult("ep_cascade", ok and inner and spectral,
                       {"times": c.times, "orders": c.orders}, "exact",
                       f"inner blocks at EP: {inner}; zero clusters: {spectral}")


def _central_block(n, t):
    z = z_of_t(n, t)
    p = partition(z)
    h = build_hamiltonian(z)
    return extract_blocks(h, p)[1] if not p.coupled else h.dense()


def _n_real(n, t):
    return classify(eigenvalues(build_hamiltonian(z_of_t(n, t)))).real_count


def check_reality(opts: Options) -> CheckResult:
    n8 = {t: _n_real(8, t) for t in (15.2, 15.5, 15.9, 16.5, 18.0)}
    n4 = {-0.01: _n_real(4, -0.01), 0.01: _n_real(4, 0.01)}
    ok = all(v == 8 for v in n8.values()) and n4[-0.01] == 0 and n4[0.01] == 2
    return CheckResult("reality_pattern", ok, {"n8": n8, "n4": n4}, "classification defaults")


def check_determinism(opts: Options) -> CheckResult:
    a = to_csv(sweep(8, -1.0, 18.0, 400))
    b = to_csv(sweep(8, -1.0, 18.0, 400))
    c = to_csv(sweep(8, -1.0, 18.0, 400, jobs=2))
    return CheckResult("determinism", a == b == c, f"{len(a)} bytes", "byte-identical",
                       "serial x2 and 2 workers")


CHECKS = {
    "lemma2_ep_identity": check_ep_identity,
    "secular_n8": check_secular_n8,
    "finetuned_n4_spectrum": check_finetuned_spectrum,
    "n8_t15_spectrum": check_t15,
    "n8_t12_spectrum": check_t12,
    "q4_exact": check_q4,
    "finetuned_w4": check_finetuned_w4,
    "generic_w41_series": check_generic_w41,
    "lemma3_unfolding": check_ring_unfolding,
    "ep_cascade": check_cascade,
    "reality_pattern": check_reality,
    "determinism": check_determinism,
}


def select(only=None) -> list[str]:
    if not only:
        return list(CHECKS)
    names = [n for n in CHECKS if n == only or n.startswith(only)]
    if not names:
        raise KeyError(f"no check named {only!r}; choose from {sorted(CHECKS)}")
    return names


def verify_suite(only=None, opts: Options | None = None) -> list[CheckResult]:
    opts = opts or Options()
    results = []
    for name in select(only):
        start = time.perf_counter()
        try:
            res = CHECKS[name](opts)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            res = CheckResult(name, False, None, None, f"raised {type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results


def report(results) -> list[dict]:
    return [asdict(r) for r in results]
