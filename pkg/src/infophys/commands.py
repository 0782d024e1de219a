"""Subcommand runners shared by the CLI and the verification suite.

Each runner takes a parameter block and a tolerance table and returns a
:class:`RunResult`: scalar outputs, identity checks and optional curves.
Output keys ending in ``_nats`` are entropic: the report writer strips the
suffix and rescales them under ``--units bits``.  Checks stay in nats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import adia_models as adia
from . import dpt as dpt_mod
from . import ensemble as ens
from . import exponents as ex
from . import gibbs
from . import iso_models as iso
from . import protocol as proto
from .errors import DomainError

TOLERANCES = {
    "identity": 1e-12,
    "fd_relative": 1e-6,
    "dpt": 1e-10,
    "ising_bruteforce": 1e-9,
    "edge_residual": 1e-9,
    "runlength": 1e-12,
    "gaussian_quadrature": 1e-9,
    "bsc_quadrature": 1e-8,
    "exponent_endpoint": 1e-12,
    "convexity": 1e-10,
    "area": 1e-8,
    "chernoff": 1e-9,
    "oracle_slope": 0.01,
    "jarzynski": 1e-12,
    "loglog_slope": 0.1,
    "exponent_integral": 1e-12,
}

DEFAULTS = {
    "ensemble": {"energies": [0.0, 1.0], "beta": 1.0},
    "gibbs": {"energies0": [0.0, 0.0], "energies1": [0.0, 1.0], "beta": 1.0,
              "adiabatic_beta0": 1.0, "adiabatic_beta1": 0.5},
    "dpt": {"pv": [0.5, 0.5], "puv": [[0.9, 0.1], [0.1, 0.9]],
            "pxu": [[1.0, 0.0], [0.0, 1.0]],
            "fano_n": 100, "fano_rate": 0.6, "fano_capacity": 0.3},
    "ising": {"coupling_j": 0.5, "field_k": 0.3, "length_n": 10, "initial_up": 0.5,
              "residual_lengths": [1000, 10000]},
    "runlength": {"mu0": math.log(0.5), "mu1": math.log(0.9)},
    "broadcast-gaussian": {"beta0": 2.0, "beta1": 1.0, "sigma2_v": 1.0, "grid": 51},
    "broadcast-bsc": {"energy_e0": 1.0, "beta0": 1.0, "beta1": 0.5, "grid": 51},
    "exponents": {"p0": [0.9, 0.1], "p1": [0.6, 0.4], "grid": 101,
                  "oracle_lambda": 0.5, "oracle_n": [1000, 10000]},
    "protocol": {"energies0": [0.0, 0.0], "energies1": [0.0, 1.0], "beta": 1.0,
                 "k_values": [1, 2, 4, 8, 16, 32, 64, 128, 256], "optimize_k": 4},
}

SUBCOMMANDS = tuple(DEFAULTS) + ("verify-all",)


@dataclass
class RunResult:
    outputs: dict
    checks: list = field(default_factory=list)
    curves: dict = field(default_factory=dict)  # name -> (columns, rows, entropic columns)
    model: str = ""

    def check(self, name: str, value: float, tolerance: float, passed: bool | None = None):
        value = float(value)
        if passed is None:
            passed = bool(abs(value) <= tolerance)
        self.checks.append({"name": name, "value": value, "tolerance": float(tolerance),
                            "passed": bool(passed)})

    @property
    def ok(self) -> bool:
        return all(c["passed"] for c in self.checks)


def merge_params(name: str, given: dict | None) -> dict:
    """Defaults overlaid with ``given``; unknown keys are rejected."""
    base = dict(DEFAULTS[name])
    for k, v in (given or {}).items():
        if k not in base:
            raise KeyError(f"unknown parameter {k!r} for {name}")
        base[k] = v
    return base


def merge_tolerances(given: dict | None) -> dict:
    tol = dict(TOLERANCES)
    for k, v in (given or {}).items():
        if k not in tol:
            raise KeyError(f"unknown tolerance {k!r}")
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not v > 0:
            raise ValueError(f"tolerance {k!r} must be a positive number")
        tol[k] = float(v)
    return tol


def run_ensemble(p: dict, tol: dict) -> RunResult:
    h = ens.Hamiltonian(p["energies"])
    r = ens.ensemble_report(h, p["beta"])
    fd = ens.internal_energy_fd(h, p["beta"])
    res = RunResult({
        "log_partition_nats": r.log_partition,
        "internal_energy": r.internal_energy,
        "entropy_nats": r.entropy_nats,
        "free_energy": r.free_energy,
        "temperature": r.temperature,
        "internal_energy_fd": fd,
        "probabilities": ens.boltzmann(h, p["beta"]).probs.tolist(),
    }, model="canonical ensemble with k = 1")
    for name, v in r.residuals().items():
        res.check(name, v, tol["identity"])
    res.check("energy_vs_fd_relative", abs(fd - r.internal_energy) / max(abs(r.internal_energy), 1e-300),
              tol["fd_relative"])
    return res


def run_gibbs(p: dict, tol: dict) -> RunResult:
    h0, h1 = ens.Hamiltonian(p["energies0"]), ens.Hamiltonian(p["energies1"])
    beta = p["beta"]
    d = gibbs.gibbs_decomposition(h0, h1, beta)
    direct = gibbs.relative_entropy(ens.boltzmann(h0, beta), ens.boltzmann(h1, beta))
    a = gibbs.adiabatic_clausius(h0, p["adiabatic_beta0"], p["adiabatic_beta1"])
    res = RunResult({
        "avg_work": d.avg_work,
        "delta_f": d.delta_f,
        "dissipation": d.dissipation,
        "divergence_nats": d.divergence_nats,
        "adiabatic_delta_sigma_nats": a.delta_sigma,
        "adiabatic_heat_over_kt1_nats": a.heat_over_kT1,
        "adiabatic_slack_nats": a.slack,
    }, model="abrupt switch with frozen microstate")
    res.check("work_minus_df_minus_dissipation", d.residual, tol["identity"])
    res.check("dissipation_nonnegative", d.dissipation, tol["identity"], d.dissipation >= -tol["identity"])
    res.check("dissipation_vs_direct_divergence", d.dissipation - direct / beta, tol["identity"])
    res.check("adiabatic_slack_vs_divergence", a.slack - a.divergence_nats, tol["identity"])
    res.check("adiabatic_slack_nonnegative", a.slack, tol["identity"], a.slack >= -tol["identity"])
    return res


def run_dpt(p: dict, tol: dict) -> RunResult:
    j = dpt_mod.make_markov(p["pv"], p["puv"], p["pxu"])
    r = dpt_mod.dpt_report(j)
    c = dpt_mod.conditioning_reduces_entropy(j)
    fano = dpt_mod.fano_bound(p["fano_n"], p["fano_rate"], p["fano_capacity"])
    res = RunResult({
        "i_xu_nats": r.i_xu,
        "i_xv_nats": r.i_xv,
        "gap_nats": r.gap,
        "expected_divergence_nats": r.expected_divergence,
        "markov_defect_nats": r.markov_defect,
        "h_x_given_v_nats": c.h_x_given_v,
        "h_x_given_uv_nats": c.h_x_given_uv,
        "fano_block_error_bound": fano,
    }, model="Markov chain V -> U -> X")
    res.check("markov_defect", r.markov_defect, tol["identity"])
    res.check("gap_vs_expected_divergence", r.gap - r.expected_divergence, tol["dpt"])
    res.check("gap_nonnegative", r.gap, tol["dpt"], r.gap >= -tol["dpt"])
    res.check("conditional_rows_normalized", r.max_row_defect, tol["identity"])
    res.check("conditioning_reduces_entropy", c.h_x_given_v - c.h_x_given_uv, tol["identity"],
              c.h_x_given_v >= c.h_x_given_uv - tol["identity"])
    return res


def run_ising(p: dict, tol: dict) -> RunResult:
    m = iso.IsingMismatch(p["coupling_j"], p["field_k"], int(p["length_n"]), p["initial_up"])
    red = iso.ising_redundancy(m)
    work = iso.ising_work_decomposition(m)
    k = iso.ising_kernels(m.coupling_J, m.field_K)
    res = RunResult({
        "z0": k.z0,
        "z1": k.z1,
        "effective_field_b": iso.effective_field(m.coupling_J, m.field_K),
        "redundancy_total_nats": red.total_nats,
        "per_symbol_rate_nats": red.per_symbol_rate,
        "edge_residual_nats": red.edge_residual,
        "avg_work": work.decomposition.avg_work,
        "delta_f": work.decomposition.delta_f,
        "dissipation": work.decomposition.dissipation,
        "approx_field_delta_f": work.approx_delta_f,
        "edge_correction": work.edge_correction,
    }, model="boundary spin x0 shared by both chains")
    zeta_gap = max(abs(k.zeta[i] - iso.zeta_unified(m.coupling_J, m.field_K, s))
                   for i, s in enumerate((-1.0, 1.0)))
    res.check("zeta_branch_vs_unified", zeta_gap, tol["identity"])
    res.check("dissipation_vs_redundancy", work.decomposition.dissipation - red.total_nats,
              tol["dpt"])
    if m.length_n <= 12:
        res.check("chain_vs_bruteforce", red.total_nats - iso.ising_bruteforce_divergence(m),
                  tol["ising_bruteforce"])
    lengths = [int(n) for n in p["residual_lengths"]]
    if len(lengths) >= 2:
        rs = [iso.ising_redundancy(iso.IsingMismatch(m.coupling_J, m.field_K, n, m.initial_up))
              .edge_residual for n in lengths]
        res.outputs["edge_residual_by_length_nats"] = rs
        res.check("edge_residual_stable", rs[-1] - rs[-2], tol["edge_residual"])
    return res


def run_runlength(p: dict, tol: dict) -> RunResult:
    r = iso.runlength_redundancy(p["mu0"], p["mu1"])
    law0 = iso.runlength_law(iso.RunLengthModel(p["mu0"]))
    law1 = iso.runlength_law(iso.RunLengthModel(p["mu1"]))
    res = RunResult({
        "xi0": law0.xi, "xi1": law1.xi,
        "mean_run0": law0.mean_run, "mean_run1": law1.mean_run,
        "pressure0": iso.log_grand_partition(p["mu0"]),
        "pressure1": iso.log_grand_partition(p["mu1"]),
        "divergence_nats": r.divergence,
        "series_divergence_nats": r.series_divergence,
        "pressure_slack_nats": r.pressure_slack,
    }, model="unit volume at beta = 1")
    res.check("closed_vs_series", r.divergence - r.series_divergence, tol["runlength"])
    res.check("pressure_slack_vs_divergence", r.pressure_slack - r.divergence, tol["runlength"])
    return res


def _log_grid(t0: float, t1: float, n: int) -> np.ndarray:
    return np.exp(np.linspace(math.log(t0), math.log(t1), int(n)))


def run_broadcast_gaussian(p: dict, tol: dict) -> RunResult:
    g = adia.GaussianBroadcast(p["beta0"], p["beta1"], p["sigma2_v"])
    ds = adia.gaussian_entropy_increase(g)
    res = RunResult({"delta_sigma_nats": ds, "t0": g.t0, "t1": g.t1},
                    model="additive Gaussian noise of variance T per stage")
    if g.beta1 < g.beta0:
        q = adia.heat_capacity_check(lambda t: 0.5, g.t0, g.t1, ds)
        res.outputs["temperature_quadrature_nats"] = q.integral
        res.check("closed_vs_temperature_quadrature", q.abs_err, tol["gaussian_quadrature"])
    if g.sigma2_v > 0:
        c = adia.immse_check(g)
        res.outputs.update({"immse_closed_nats": c.closed_form,
                            "immse_quadrature_nats": c.quadrature,
                            "immse_mi_difference_nats": c.mi_difference})
        res.check("immse_three_way", c.max_disagreement, tol["gaussian_quadrature"])
    res.check("high_snr_heat_capacity", adia.gaussian_heat_capacity(math.inf, g.t0) - 0.5,
              tol["gaussian_quadrature"])
    ts = _log_grid(g.t0, g.t1, p["grid"]) if g.t1 > g.t0 else np.array([g.t0])
    rows = [(t, adia.gaussian_heat_capacity(math.inf, t),
             adia.gaussian_heat_capacity(g.sigma2_v, t)) for t in ts]
    res.curves["heat_capacity"] = (["t", "c_quadratic", "c_mmse"], rows, ())
    return res


def run_broadcast_bsc(p: dict, tol: dict) -> RunResult:
    b = adia.BscBroadcast(p["energy_e0"], p["beta0"], p["beta1"])
    ds = adia.bsc_entropy_increase(b)
    res = RunResult({"eps0": b.eps0, "eps1": b.eps1, "eps2": b.eps2,
                     "delta_sigma_nats": ds, "t0": 1 / b.beta0, "t1": 1 / b.beta1},
                    model="noise bits are two-level systems with gap E0")
    if b.beta1 < b.beta0:
        q = adia.heat_capacity_check(lambda t: adia.bsc_heat_capacity(b.energy_e0, t),
                                     1 / b.beta0, 1 / b.beta1, ds)
        res.outputs["quadrature_nats"] = q.integral
        res.outputs["quadrature_residual_nats"] = q.abs_err
        res.check("entropy_vs_schottky_quadrature", q.abs_err, tol["bsc_quadrature"])
    res.check("entropy_increase_nonnegative", ds, tol["identity"], ds >= -tol["identity"])
    res.check("crossover_reconstruction", adia.star(b.eps0, b.eps2) - b.eps1, 1e-14)
    ts = _log_grid(1 / b.beta0, 1 / b.beta1, p["grid"]) if b.beta1 < b.beta0 \
        else np.array([1 / b.beta0])
    rows = [(t, adia.bsc_heat_capacity(b.energy_e0, t)) for t in ts]
    res.curves["heat_capacity"] = (["t", "c"], rows, ())
    return res


def _family(p: dict) -> ex.TiltedFamily:
    return ex.TiltedFamily(ens.DiscreteDistribution.from_probs(p["p0"]),
                           ens.DiscreteDistribution.from_probs(p["p1"]))


def run_exponents(p: dict, tol: dict) -> RunResult:
    f = _family(p)
    lams = np.linspace(0.0, 1.0, int(p["grid"]))
    rows = []
    for lam in lams:
        pair = ex.exponent_pair(f, float(lam))
        rows.append((float(lam), pair.e0, pair.e1, ex.log_z(f, float(lam))))
    area = ex.area_equality(f)
    ch = ex.chernoff_point(f)
    d01 = gibbs.relative_entropy(f.p0, f.p1)
    d10 = gibbs.relative_entropy(f.p1, f.p0)
    res = RunResult({
        "d01_nats": d01, "d10_nats": d10,
        "area0_nats": area.area0, "area1_nats": area.area1,
        "chernoff_lambda": ch.lambda_star, "chernoff_exponent_nats": ch.exponent,
    }, model="LRT threshold at the tilted mean of the log-likelihood ratio")
    e_start, e_end = ex.exponent_pair(f, 0.0), ex.exponent_pair(f, 1.0)
    res.check("e0_at_0", e_start.e0, tol["exponent_endpoint"])
    res.check("e1_at_0_vs_d01", e_start.e1 - d01, tol["exponent_endpoint"])
    res.check("e0_at_1_vs_d10", e_end.e0 - d10, tol["exponent_endpoint"])
    res.check("e1_at_1", e_end.e1, tol["exponent_endpoint"])
    lz = np.array([r[3] for r in rows])
    second = lz[2:] - 2 * lz[1:-1] + lz[:-2]
    res.check("lnz_convexity_min_second_difference", float(second.min()) if second.size else 0.0,
              tol["convexity"], bool(second.size == 0 or second.min() >= -tol["convexity"]))
    res.check("area_gap", area.gap, tol["area"])
    res.check("difference_integral", area.difference_integral, tol["area"])
    if not ch.degenerate:
        pair = ex.exponent_pair(f, ch.lambda_star)
        res.check("chernoff_equalization", pair.e0 - pair.e1, tol["chernoff"])
    if f.p0.size <= 3 and not f.degenerate:
        gaps = []
        for n in p["oracle_n"]:
            o = ex.exact_error_oracle(f, int(n), p["oracle_lambda"])
            gaps.append(max(abs(o.slope0 - o.e0), abs(o.slope1 - o.e1)))
            res.outputs[f"oracle_n{int(n)}"] = {"slope0_nats": o.slope0, "slope1_nats": o.slope1,
                                               "c_nats": o.c}
        res.check("oracle_slope_gap_largest_n", gaps[-1], tol["oracle_slope"])
        if len(gaps) >= 2:
            res.check("oracle_gap_shrinks", gaps[-1] - gaps[0], 0.0, gaps[-1] < gaps[0])
    res.curves["exponents"] = (["lambda", "e0", "e1", "lnZ"], rows, ("e0", "e1", "lnZ"))
    return res


def run_protocol(p: dict, tol: dict) -> RunResult:
    h0, h1 = ens.Hamiltonian(p["energies0"]), ens.Hamiltonian(p["energies1"])
    beta = p["beta"]
    ks = [int(k) for k in p["k_values"]]
    reports = {k: proto.protocol_work(h0, h1, beta, proto.ProtocolSchedule.uniform(k)) for k in ks}
    abrupt = gibbs.gibbs_decomposition(h0, h1, beta)
    res = RunResult({"delta_f": abrupt.delta_f}, model="jump-then-equilibrate")
    rows = [(k, r.avg_work, r.dissipation, r.work_variance) for k, r in reports.items()]
    res.curves["dissipation"] = (["k", "avg_work", "dissipation", "work_variance"], rows, ())
    worst = max(abs(r.jarzynski_lhs - r.jarzynski_rhs) for r in reports.values())
    res.check("jarzynski_telescoping", worst, tol["jarzynski"])
    if 1 in reports:
        res.outputs["abrupt_dissipation"] = reports[1].dissipation
        res.check("single_jump_vs_gibbs", reports[1].dissipation - abrupt.dissipation,
                  tol["identity"])
    table = {k: r.dissipation for k, r in reports.items()}
    in_window = [k for k in ks if 16 <= k <= 256]
    if len(in_window) >= 2 and abrupt.dissipation > 0:
        slope = proto.loglog_slope(table)
        res.outputs["loglog_slope"] = slope
        res.check("loglog_slope_minus_one", slope + 1.0, tol["loglog_slope"])
    ordered = sorted(ks)
    res.check("dissipation_nonincreasing",
              max([table[b] - table[a] for a, b in zip(ordered, ordered[1:])] or [0.0]),
              tol["identity"],
              all(table[b] <= table[a] + tol["identity"] for a, b in zip(ordered, ordered[1:])))
    k_opt = int(p["optimize_k"])
    sched = proto.optimize_schedule(h0, h1, beta, k_opt)
    opt = proto.protocol_work(h0, h1, beta, sched).dissipation
    uni = proto.protocol_work(h0, h1, beta, proto.ProtocolSchedule.uniform(k_opt)).dissipation
    res.outputs["optimized_breakpoints"] = list(sched.breakpoints)
    res.outputs["optimized_dissipation"] = opt
    res.outputs["uniform_dissipation"] = uni
    res.check("optimized_not_worse", opt - uni, tol["identity"], opt <= uni + tol["identity"])
    if h0.size == h1.size:
        lp0 = -beta * np.asarray(p["energies0"], float)
        lp1 = -beta * np.asarray(p["energies1"], float)
        f = ex.TiltedFamily(ens.DiscreteDistribution(lp0 - np.logaddexp.reduce(lp0)),
                            ens.DiscreteDistribution(lp1 - np.logaddexp.reduce(lp1)))
        work, esum = proto.work_as_exponent_integral(f, proto.ProtocolSchedule.uniform(ks[-1]))
        res.outputs["hypothesis_testing_work_nats"] = work
        res.check("work_vs_exponent_sum", work - esum, tol["exponent_integral"])
    return res


RUNNERS = {
    "ensemble": run_ensemble,
    "gibbs": run_gibbs,
    "dpt": run_dpt,
    "ising": run_ising,
    "runlength": run_runlength,
    "broadcast-gaussian": run_broadcast_gaussian,
    "broadcast-bsc": run_broadcast_bsc,
    "exponents": run_exponents,
    "protocol": run_protocol,
}


def run_subcommand(name: str, params: dict | None, tol: dict) -> tuple[dict, RunResult]:
    p = merge_params(name, params)
    return p, RUNNERS[name](p, tol)


# randomized invariant sweeps ------------------------------------------------

def _random_ensemble(rng: np.random.Generator, m_max: int = 64):
    m = int(rng.integers(2, m_max + 1))
    return ens.Hamiltonian(rng.uniform(-50, 50, m)), float(10 ** rng.uniform(-3, 3))


def _random_stochastic(rng, rows, cols):
    t = rng.dirichlet(np.ones(cols), size=rows)
    return t


def sweep_invariants(rng: np.random.Generator, tol: dict, size: int = 200) -> RunResult:
    """Randomized property checks across the modules (sizes kept desk-scale)."""
    res = RunResult({"instances_per_sweep": size}, model="randomized invariant sweeps")
    worst = {"ensemble_identity": 0.0, "fd_relative": 0.0, "gibbs_identity": 0.0,
             "dissipation_min": math.inf, "adiabatic_slack": 0.0}
    for _ in range(size):
        h, beta = _random_ensemble(rng)
        r = ens.ensemble_report(h, beta)
        worst["ensemble_identity"] = max(worst["ensemble_identity"], *r.residuals().values())
        fd = ens.internal_energy_fd(h, beta)
        worst["fd_relative"] = max(worst["fd_relative"],
                                   abs(fd - r.internal_energy) / max(abs(r.internal_energy), 1e-300))
        h1 = ens.Hamiltonian(rng.uniform(-50, 50, h.size))
        d = gibbs.gibbs_decomposition(h, h1, beta)
        worst["gibbs_identity"] = max(worst["gibbs_identity"], abs(d.residual))
        worst["dissipation_min"] = min(worst["dissipation_min"], d.dissipation)
        b0, b1 = sorted(10 ** rng.uniform(-1, 1, 2))[::-1]
        a = gibbs.adiabatic_clausius(h, b0, b1) if b1 < b0 else None
        if a is not None:
            worst["adiabatic_slack"] = max(worst["adiabatic_slack"], abs(a.slack - a.divergence_nats))
    res.check("ensemble_identities", worst["ensemble_identity"], tol["identity"])
    res.check("energy_vs_fd_relative", worst["fd_relative"], tol["fd_relative"])
    res.check("gibbs_identity", worst["gibbs_identity"], tol["identity"])
    res.check("dissipation_nonnegative", worst["dissipation_min"], tol["identity"],
              worst["dissipation_min"] >= -tol["identity"])
    res.check("adiabatic_slack_vs_divergence", worst["adiabatic_slack"], tol["identity"])

    gap_err, gap_min = 0.0, math.inf
    for _ in range(size):
        nx, nu, nv = (int(x) for x in rng.integers(2, 6, 3))
        j = dpt_mod.make_markov(rng.dirichlet(np.ones(nv)), _random_stochastic(rng, nv, nu),
                                _random_stochastic(rng, nu, nx))
        r = dpt_mod.dpt_report(j)
        gap_err = max(gap_err, abs(r.gap - r.expected_divergence))
        gap_min = min(gap_min, r.gap)
    res.check("dpt_gap_vs_expected_divergence", gap_err, tol["dpt"])
    res.check("dpt_gap_nonnegative", gap_min, tol["dpt"], gap_min >= -tol["dpt"])

    area_gap, eq_gap = 0.0, 0.0
    for _ in range(max(1, size // 20)):
        f = ex.TiltedFamily(ens.DiscreteDistribution.from_probs(rng.dirichlet(np.ones(3))),
                            ens.DiscreteDistribution.from_probs(rng.dirichlet(np.ones(3))))
        area_gap = max(area_gap, ex.area_equality(f).gap)
        ch = ex.chernoff_point(f)
        pair = ex.exponent_pair(f, ch.lambda_star)
        eq_gap = max(eq_gap, abs(pair.e0 - pair.e1))
    res.check("area_equality", area_gap, tol["area"])
    res.check("chernoff_equalization", eq_gap, tol["chernoff"])

    jz = 0.0
    for _ in range(size):
        m = int(rng.integers(2, 9))
        h0 = ens.Hamiltonian(rng.uniform(-1, 1, m))
        h1 = ens.Hamiltonian(rng.uniform(-1, 1, m))
        beta = float(10 ** rng.uniform(-1, 0.3))
        k = int(rng.integers(1, 33))
        cuts = np.sort(rng.uniform(0, 1, k - 1))
        if np.any(np.diff(cuts) <= 0):
            continue
        s = proto.ProtocolSchedule((0.0, *cuts.tolist(), 1.0))
        r = proto.protocol_work(h0, h1, beta, s)
        jz = max(jz, r.jarzynski_gap)
    res.check("jarzynski_random_schedules", jz, tol["jarzynski"])
    return res
