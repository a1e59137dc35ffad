"""Registry of reproducible experiments driven by the command line.

Each experiment takes a flat parameter dict and returns rows (one CSV line
each, carrying the full parameter tuple) plus a list of checks.  A check is
either an assertion (failure means exit code 2) or a warning (failure only
matters under ``--strict``); genericity claims that can fail at special
parameter values are warnings.
"""

from dataclasses import dataclass, field

import numpy as np

from .gaussian import build_covariance, entanglement_entropy, log_negativity
from .highprec import certified_smeared_nw_rank, certified_standard_rank
from .lattice import CauchyData, LatticeSpec, Region
from .localization import (antilocality_defect, complex_rank, correlation_decay_rate,
                           default_times, nw_subspace_basis, smeared_nw_rank,
                           standard_subspace_basis, vacuum_re_correlation)
from .oneparticle import OneParticleVector, evolve, nw_map, verify_one_particle_structure
from .weyl import commutator_phase, number_expectation, product_state_defect

COMMON_COLUMNS = ["experiment", "n_sites", "spacing", "mass", "region", "times"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    severity: str = "assert"


@dataclass
class Result:
    columns: list
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)


@dataclass(frozen=True)
class Experiment:
    name: str
    description: str
    topic: str
    params: dict
    run: object
    sampled: bool = False


def _lattice(p):
    return LatticeSpec(p["n_sites"], p["spacing"], p["mass"])


def _row(name, lat, region="", times=""):
    return {"experiment": name, "n_sites": lat.n_sites, "spacing": lat.spacing,
            "mass": lat.mass, "region": region, "times": times}


def _fmt_times(times):
    return ";".join(repr(float(t)) for t in times)


def run_structure_check(p):
    lat = _lattice(p)
    rep = verify_one_particle_structure(lat, p["tolerance"], p["n_pairs"], p["seed"],
                                        tuple(p["times"]))
    res = Result(COMMON_COLUMNS + ["seed", "check", "value", "threshold", "passed"])
    entries = [("symplectic_residual", rep.symplectic_residual, p["tolerance"],
                rep.symplectic_residual < p["tolerance"])]
    for t, r in sorted(rep.intertwining_by_time.items()):
        entries.append((f"intertwining_residual_t={t!r}", r, p["tolerance"], r < p["tolerance"]))
    entries.append(("complex_rank", rep.complex_rank, lat.n_sites, rep.rank_ok))
    for check, value, thr, ok in entries:
        row = _row("structure-check", lat, times=_fmt_times(p["times"]))
        row.update(seed=p["seed"], check=check, value=value, threshold=thr, passed=ok)
        res.rows.append(row)
        res.checks.append(Check(check, bool(ok), f"{value!r} vs {thr!r}"))
    return res


def run_cyclicity(p):
    lat = _lattice(p)
    n = lat.n_sites
    sizes = p["region_sizes"] or list(range(1, n + 1))
    res = Result(COMMON_COLUMNS + [
        "region_size", "standard_rank", "nw_rank", "smeared_rank", "generic_standard_rank",
        "certified_standard_rank", "certified_smeared_rank"])
    prev_std = prev_nw = -1
    monotone = True
    for size in sorted(sizes):
        if not 1 <= size <= n:
            raise ValueError(f"region size {size} outside [1, {n}]")
        region = Region.interval(n, p["start"], size)
        times = default_times(n, size, p["half_width"]) if p["n_times"] == 0 else \
            [-p["half_width"] + 2 * p["half_width"] * (i + 1) / (p["n_times"] + 1)
             for i in range(p["n_times"])]
        std = complex_rank(standard_subspace_basis(lat, region), p["rtol"])
        nw = complex_rank(nw_subspace_basis(lat, region), p["rtol"])
        smeared = smeared_nw_rank(lat, region, times, p["rtol"])
        cert_std = cert_sm = ""
        if p["certify_dps"] > 0:
            cert_std = certified_standard_rank(lat, region, p["certify_dps"])
            cert_sm = certified_smeared_nw_rank(lat, region, times, p["certify_dps"])
        generic = min(2 * size, n)
        row = _row("cyclicity", lat, region.describe(), _fmt_times(times))
        row.update(region_size=size, standard_rank=std, nw_rank=nw, smeared_rank=smeared,
                   generic_standard_rank=generic, certified_standard_rank=cert_std,
                   certified_smeared_rank=cert_sm)
        res.rows.append(row)
        res.checks.append(Check(f"nw_rank[{size}]", nw == size, f"{nw} vs {size}"))
        res.checks.append(Check(f"standard_rank_generic[{size}]", std == generic,
                                f"{std} vs {generic}", "warn"))
        res.checks.append(Check(f"smeared_rank_full[{size}]", smeared == n,
                                f"{smeared} vs {n}", "warn"))
        if cert_std != "":
            res.checks.append(Check(f"certified_standard_rank[{size}]", cert_std == generic,
                                    f"{cert_std} vs {generic}"))
        monotone &= std >= prev_std and nw >= prev_nw
        prev_std, prev_nw = std, nw
    res.checks.append(Check("monotone_in_region", monotone))
    return res


def run_antilocality(p):
    lat = _lattice(p)
    n = lat.n_sites
    res = Result(COMMON_COLUMNS + ["exponent", "region_size", "defect"])
    worst = np.inf
    starts = range(n) if p["all_starts"] else [0]
    for exponent in p["exponents"]:
        for size in range(1, n):
            for start in starts:
                region = Region.interval(n, start, size)
                d = antilocality_defect(lat, exponent, region)
                worst = min(worst, d)
                row = _row("antilocality", lat, region.describe())
                row.update(exponent=exponent, region_size=size, defect=d)
                res.rows.append(row)
    res.checks.append(Check("defect_positive", worst > 0.0, f"min defect {worst!r}"))
    res.checks.append(Check("defect_above_threshold", worst > p["threshold"],
                            f"min defect {worst!r} vs {p['threshold']!r}", "warn"))
    return res


def run_correlations(p):
    lat = _lattice(p)
    n = lat.n_sites
    seps = list(range(p["min_separation"], p["max_separation"] + 1))
    rate, _ = correlation_decay_rate(lat, seps, p["site"])
    res = Result(COMMON_COLUMNS + [
        "separation", "re_field_field", "re_momentum_momentum", "re_field_momentum",
        "product_defect_standard", "product_defect_nw", "fitted_rate"])
    site = p["site"]
    for d in seps:
        other = (site + d) % n
        f0, f1 = CauchyData.delta(lat, site, 0), CauchyData.delta(lat, site, 1)
        g0, g1 = CauchyData.delta(lat, other, 0), CauchyData.delta(lat, other, 1)
        row = _row("correlations", lat, f"{site};{other}")
        row.update(separation=d,
                   re_field_field=vacuum_re_correlation(f0, g0),
                   re_momentum_momentum=vacuum_re_correlation(f1, g1),
                   re_field_momentum=vacuum_re_correlation(f0, g1),
                   product_defect_standard=product_state_defect(nw_map(f0), nw_map(g0)),
                   product_defect_nw=product_state_defect(OneParticleVector.site(lat, site),
                                                          OneParticleVector.site(lat, other)),
                   fitted_rate=rate)
        res.rows.append(row)
    rel = abs(rate - lat.mass) / lat.mass
    res.checks.append(Check("decay_rate_near_mass", rel <= p["rate_tolerance"],
                            f"rate {rate!r}, mass {lat.mass!r}, rel dev {rel:.3g}"))
    res.checks.append(Check("nw_product_state",
                            max(r["product_defect_nw"] for r in res.rows) < 1e-15))
    return res


def run_entanglement(p):
    lat = _lattice(p)
    n = lat.n_sites
    sizes = p["region_sizes"] or [n // 2]
    res = Result(COMMON_COLUMNS + ["scheme", "region_size", "entropy_nats", "max_nu",
                                   "log_negativity"])
    std_entropies = []
    for size in sorted(sizes):
        if not 1 <= size < n:
            raise ValueError(f"region size {size} outside [1, {n - 1}]")
        region = Region.interval(n, p["start"], size)
        comp = region.complement()
        for scheme in ("nw", "standard"):
            if scheme == "nw":
                a, b, real = nw_subspace_basis(lat, region), nw_subspace_basis(lat, comp), False
            else:
                a, b, real = (standard_subspace_basis(lat, region),
                              standard_subspace_basis(lat, comp), True)
            cov = build_covariance(a, real_span=real)
            s = entanglement_entropy(cov)
            ln = log_negativity(a, b, real_span=real)
            row = _row("entanglement", lat, region.describe())
            row.update(scheme=scheme, region_size=size, entropy_nats=s,
                       max_nu=float(cov.nu.max()), log_negativity=ln)
            res.rows.append(row)
            if scheme == "nw":
                res.checks.append(Check(f"nw_pure[{size}]", s < 1e-10 and ln == 0.0,
                                        f"S={s!r}, LN={ln!r}"))
            else:
                std_entropies.append(s)
                res.checks.append(Check(f"standard_mixed[{size}]", s > 0 and ln > 0,
                                        f"S={s!r}, LN={ln!r}"))
    upto_half = [s for size, s in zip(sorted(sizes), std_entropies) if size <= n // 2]
    res.checks.append(Check("standard_entropy_monotone",
                            all(x <= y + 1e-12 for x, y in zip(upto_half, upto_half[1:])),
                            severity="warn"))
    return res


def _max_phase(left, right, t_left, t_right):
    return max(abs(commutator_phase(evolve(f, t_left), evolve(g, t_right)))
               for f in left for g in right)


def run_microcausality(p):
    lat = _lattice(p)
    n = lat.n_sites
    r1 = Region(n, [p["site"]])
    r2 = Region(n, [(p["site"] + p["separation"]) % n])
    res = Result(COMMON_COLUMNS + ["scheme", "separation", "time_1", "time_2",
                                   "commutator_phase"])
    values = {}
    for scheme, basis in (("standard", standard_subspace_basis),
                          ("nw", nw_subspace_basis)):
        left, right = basis(lat, r1), basis(lat, r2)
        for t1, t2 in ((0.0, 0.0), (p["time_1"], p["time_2"])):
            v = _max_phase(left, right, t1, t2)
            values[scheme, t1 == t2] = v
            row = _row("microcausality", lat, f"{r1.describe()}|{r2.describe()}",
                       _fmt_times([t1, t2]))
            row.update(scheme=scheme, separation=p["separation"], time_1=t1, time_2=t2,
                       commutator_phase=v)
            res.rows.append(row)
    for scheme in ("standard", "nw"):
        res.checks.append(Check(f"equal_time_{scheme}", values[scheme, True] < 1e-12,
                                repr(values[scheme, True])))
    nw_v, std_v = values["nw", False], values["standard", False]
    res.checks.append(Check("nw_unequal_time_violation", nw_v > p["ratio"] * std_v,
                            f"nw {nw_v!r} vs standard {std_v!r}"))
    return res


def run_numberops(p):
    lat = _lattice(p)
    n = lat.n_sites
    rng = np.random.default_rng(p["seed"])
    amp = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    g = OneParticleVector(lat, amp)
    g = (np.sqrt(p["norm_sq"]) / g.norm()) * g
    total = 0.5 * p["norm_sq"]
    region = Region.interval(n, p["start"], p["region_size"])
    res = Result(COMMON_COLUMNS + ["seed", "scheme", "number_expectation", "total_number",
                                   "subspace_rank"])
    for scheme, basis in (("standard", standard_subspace_basis), ("nw", nw_subspace_basis)):
        vecs = basis(lat, region)
        val = number_expectation(vecs, g)
        row = _row("numberops", lat, region.describe())
        row.update(seed=p["seed"], scheme=scheme, number_expectation=val,
                   total_number=total, subspace_rank=complex_rank(vecs, 1e-13))
        res.rows.append(row)
        if scheme == "standard" and 2 * len(region) >= n:
            res.checks.append(Check("standard_collapses_to_total", abs(val - total) < 1e-8,
                                    f"{val!r} vs {total!r}"))
        if scheme == "nw":
            inside = 0.5 * lat.spacing * float(np.sum(np.abs(g.amplitudes[list(region)]) ** 2))
            res.checks.append(Check("nw_counts_inside_only", abs(val - inside) < 1e-10,
                                    f"{val!r} vs {inside!r}"))
            if len(region) < n:
                res.checks.append(Check("nw_strictly_below_total", val < total))
    return res


_LATTICE = {"n_sites": 64, "spacing": 1.0, "mass": 1.0}

REGISTRY = {
    e.name: e for e in [
        Experiment("antilocality",
                   "smallest singular value of H^p blocks over contiguous regions",
                   "anti-local operators; anti-locality of H and its powers",
                   dict(_LATTICE, n_sites=16, exponents=[1.0, -1.0, 0.5, -0.5],
                        threshold=1e-8, all_starts=1),
                   run_antilocality),
        Experiment("correlations",
                   "vacuum Re-correlations and product-state defects vs separation",
                   "vacuum not a product state across disjoint regions (standard scheme)",
                   dict(_LATTICE, n_sites=256, site=0, min_separation=4, max_separation=32,
                        rate_tolerance=0.25),
                   run_correlations),
        Experiment("cyclicity",
                   "standard, NW and time-smeared NW complex ranks per region size",
                   "fixed-time Reeh-Schlieder vs NW non-cyclicity; time-smeared NW cyclicity",
                   dict(_LATTICE, n_sites=32, region_sizes=[], start=0, half_width=0.1,
                        n_times=0, rtol=None, certify_dps=0),
                   run_cyclicity),
        Experiment("entanglement",
                   "Williamson spectra, entropy and log-negativity of region restrictions",
                   "mixed/entangled standard restriction vs pure NW product restriction",
                   dict(_LATTICE, mass=0.1, region_sizes=[], start=0),
                   run_entanglement),
        Experiment("microcausality",
                   "commutator phases at equal and unequal times across disjoint regions",
                   "fixed-time microcausality; its failure for NW at unequal times",
                   dict(_LATTICE, n_sites=256, site=0, separation=16, time_1=0.0, time_2=1.0,
                        ratio=1e3),
                   run_microcausality),
        Experiment("numberops",
                   "region number operators in a coherent state",
                   "local number operators: collapse to total N (standard) vs NW N_G",
                   dict(_LATTICE, n_sites=32, region_size=24, start=0, norm_sq=4.0, seed=None),
                   run_numberops, sampled=True),
        Experiment("structure-check",
                   "one-particle structure conditions: density, symplectic, intertwining",
                   "one-particle structure over the classical phase space; uniqueness",
                   dict(_LATTICE, seed=None, n_pairs=32, times=[0.3, 0.9], tolerance=1e-10),
                   run_structure_check, sampled=True),
    ]
}

ALIASES = {"cyclicity-sweep": "cyclicity", "structure": "structure-check"}

PARAM_TYPES = {
    "n_sites": int, "spacing": float, "mass": float, "seed": int, "n_pairs": int,
    "times": [float], "tolerance": float, "region_sizes": [int], "start": int,
    "half_width": float, "n_times": int, "rtol": float, "certify_dps": int,
    "exponents": [float], "threshold": float, "all_starts": int, "site": int,
    "min_separation": int, "max_separation": int, "rate_tolerance": float,
    "separation": int, "time_1": float, "time_2": float, "ratio": float,
    "region_size": int, "norm_sq": float,
}


def lookup(name):
    name = ALIASES.get(name, name)
    if name not in REGISTRY:
        raise KeyError(name)
    return REGISTRY[name]
