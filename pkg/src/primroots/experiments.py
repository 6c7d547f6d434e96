"""Measured-vs-predicted experiments behind the CLI subcommands.

Each ``cmd_*`` function is deterministic given its arguments and returns a
:class:`ScanReport` (``cmd_constants`` returns plain records).  Per-prime
work goes through :func:`_pmap`, which preserves ascending-p order whatever
the worker count.
"""

from __future__ import annotations

import math
import random
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal
from fractions import Fraction

import numpy as np
from scipy import stats

from .arith import euler_phi, factorize, primes_upto
from .configurations import count_tuples, least_primes_with_runs, max_run
from .densities import (
    DEFAULT_CUTOFF,
    REFERENCE_CONSTANTS,
    coprime_pair_density,
    named_constant_values,
    predict_main_term,
    truncated_euler_product,
    tuple_euler_product,
    zeta_reciprocal,
)
from .errors import ContractError
from .families import classify_prime, predicted_run_class
from .residues import SCAN_CEILING, primroots_by_generator, scan_field
from .report import ScanReport, make_row
from .sieves import (
    build_sieve,
    correlation_spowerfree,
    correlation_squarefree_coprime,
    omega_leading_term,
    omega_progression_sum,
    summatory_spowerfree,
    summatory_squarefree,
    summatory_squarefree_coprime,
    summatory_squarefree_progression,
)
from .specs import TupleSpec

SAMPLE_SEED = 0
SUBSET_EXPONENT = 0.8


def _pmap(fn, items, threads: int = 1):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def primes_between(pmin: int, pmax: int) -> list[int]:
    if pmin > pmax:
        raise ValueError(f"empty range: pmin={pmin} > pmax={pmax}")
    if pmax > SCAN_CEILING:
        raise ValueError(f"pmax={pmax} exceeds the scan ceiling {SCAN_CEILING}")
    return [p for p in primes_upto(pmax).tolist() if p >= pmin]


def sample_primes(pmin: int, pmax: int, count: int, seed: int = SAMPLE_SEED) -> list[int]:
    """``count`` distinct primes drawn uniformly from [pmin, pmax], ascending."""
    pool = primes_between(pmin, pmax)
    return sorted(random.Random(seed).sample(pool, min(count, len(pool))))


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1e3


def cmd_scan_runs(pmin: int, pmax: int, threads: int = 1) -> ScanReport:
    """Maximal run of consecutive primitive roots and its merit for each prime."""

    def one(p):
        t0 = time.perf_counter()
        run = max_run(scan_field(p))
        fam = classify_prime(p)
        return make_row(
            p, "max_run", run.max_run, family=fam.family, runtime_ms=_ms(t0),
            merit=run.merit, witness=run.witness, omega_pm1=fam.omega_pm1,
        )

    rows = _pmap(one, [p for p in primes_between(pmin, pmax) if p >= 3], threads)
    return ScanReport("scan-runs", {"pmin": pmin, "pmax": pmax}, rows)


def cmd_least_prime(kmax: int, p_ceiling: int) -> ScanReport:
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    t0 = time.perf_counter()
    found = least_primes_with_runs(kmax, p_ceiling)
    rows = []
    for k, p in found.items():
        merit = k / math.log(p) if p is not None else None
        fam = classify_prime(p).family if p is not None else ""
        rows.append(make_row(p, f"run={k}", k, family=fam, merit=merit, found=p is not None))
    report = ScanReport("least-prime", {"kmax": kmax, "p_ceiling": p_ceiling}, rows)
    report.summary["runtime_ms"] = round(_ms(t0), 3)
    return report


def _subset_size(p: int, m) -> int:
    if m == "auto":
        return math.ceil(p**SUBSET_EXPONENT)
    return int(m)


def cmd_count(
    spec: TupleSpec,
    pmin: int,
    pmax: int,
    cutoff: int = DEFAULT_CUTOFF,
    subset_interval=None,
    sample: int | None = None,
    seed: int = SAMPLE_SEED,
    threads: int = 1,
) -> ScanReport:
    """Exact configuration counts against the predicted main term, per prime."""
    primes = sample_primes(pmin, pmax, sample, seed) if sample else primes_between(pmin, pmax)
    primes = [p for p in primes if p >= 3]
    sieve = build_sieve(max(primes[-1], 2)) if primes and spec.sieve_s else None

    def one(p):
        t0 = time.perf_counter()
        subset = None
        population = None
        if subset_interval is not None:
            m = _subset_size(p, subset_interval)
            subset = (1, m)
            population = min(m, p - 1)
        measured = count_tuples(scan_field(p), spec, sieve, subset=subset)
        model = predict_main_term(spec, p, cutoff, population=population)
        if model.main_term == 0 and measured != 0:
            raise ContractError(f"p={p}: predicted 0 but measured {measured}")
        extra = {"population": population} if population is not None else {}
        return make_row(
            p, spec.summary(), measured, model.main_term,
            family=classify_prime(p).family, runtime_ms=_ms(t0), **extra,
        )

    rows = _pmap(one, primes, threads)
    params = {
        "spec": spec.summary(), "offsets": list(spec.offsets), "restriction": spec.restriction,
        "s": spec.s, "q": spec.q, "wraparound": spec.wraparound, "pmin": pmin, "pmax": pmax,
        "cutoff": cutoff, "subset_interval": subset_interval, "sample": sample, "seed": seed,
    }
    report = ScanReport("count", params, rows)
    report.summary.update(deviation_summary(rows))
    return report


def deviation_summary(rows) -> dict:
    devs = [r["rel_dev"] for r in rows if r["rel_dev"] is not None]
    if not devs:
        return {}
    arr = np.array(devs)
    return {
        "n": len(devs),
        "rel_dev_mean": float(arr.mean()),
        "rel_dev_median": float(np.median(arr)),
        "rel_dev_p90": float(np.quantile(arr, 0.9)),
        "rel_dev_max": float(arr.max()),
    }


def cmd_exponent_experiment(q: int, a: int, pmin: int, pmax: int, threads: int = 1) -> ScanReport:
    """Fit pair counts n, n+a coprime to q against totient-ratio exponents 1 and 2."""
    spec = TupleSpec((0, a), "coprime", q=q)
    vanishing = coprime_pair_density(q, a) == 0

    def one(p):
        t0 = time.perf_counter()
        measured = count_tuples(scan_field(p), spec)
        e1 = float(predict_main_term(spec, p, totient_exponent=1).main_term)
        e2 = float(predict_main_term(spec, p, totient_exponent=2).main_term)
        return make_row(
            p, spec.summary(), measured, e2, family=classify_prime(p).family, runtime_ms=_ms(t0),
            predicted_e1=e1, rel_dev_e1=abs(measured - e1) / max(e1, 1.0),
            predicted_e2=e2, rel_dev_e2=abs(measured - e2) / max(e2, 1.0),
        )

    rows = _pmap(one, [p for p in primes_between(pmin, pmax) if p >= 3], threads)
    report = ScanReport("exponent-experiment", {"q": q, "a": a, "pmin": pmin, "pmax": pmax}, rows)
    summary = {"primes": len(rows), "c2": str(coprime_pair_density(q, a) / Fraction(euler_phi(factorize(q)), q) ** 2)}
    if vanishing:
        summary["vanishing"] = True
        summary["all_measured_zero"] = all(r["measured"] == 0 for r in rows)
        summary["verdict"] = "vanishing configuration: c2(q,a) = 0, both models predict 0"
    elif rows:
        m1 = statistics.fmean(r["rel_dev_e1"] for r in rows)
        m2 = statistics.fmean(r["rel_dev_e2"] for r in rows)
        summary.update(mean_rel_dev_e1=m1, mean_rel_dev_e2=m2, vanishing=False)
        best = 1 if m1 < m2 else 2
        summary["preferred_exponent"] = best
        summary["verdict"] = (
            f"exponent {best} fits better: mean relative deviation "
            f"{m1:.6f} (exponent 1) vs {m2:.6f} (exponent 2)"
        )
    report.summary = summary
    return report


def cmd_constants(cutoff: int = DEFAULT_CUTOFF) -> list[dict]:
    """The five named Euler-product constants at ``cutoff`` against their reference values."""
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    out = []
    for name, value in named_constant_values(cutoff).items():
        reference = Decimal(REFERENCE_CONSTANTS[name])
        out.append({
            "name": name,
            "cutoff": cutoff,
            "value": str(value),
            "reference_value": REFERENCE_CONSTANTS[name],
            "abs_diff": float(abs(value - reference)),
        })
    return out


def _squarefree_density(cutoff):
    return zeta_reciprocal(2, cutoff)


def cmd_summatory(xs, kind: str = "squarefree", s: int = 2, q: int = 1, a: int = 0, cutoff: int = DEFAULT_CUTOFF) -> ScanReport:
    """Summatory sums of mu^2, mu_s, omega over [1, x] against their main terms.

    The ``p`` column carries x for these sieve experiments.
    """
    xs = sorted(int(x) for x in xs)
    sieve = build_sieve(xs[-1])
    rows = []
    for x in xs:
        t0 = time.perf_counter()
        extra = {}
        if kind == "squarefree":
            measured = summatory_squarefree(sieve, x)
            predicted = float(_squarefree_density(cutoff)) * x
            extra = {"bound": 2 * math.sqrt(x), "within_bound": abs(measured - predicted) <= 2 * math.sqrt(x)}
            label = "mu^2"
        elif kind == "spowerfree":
            measured = summatory_spowerfree(sieve, s, x)
            predicted = float(zeta_reciprocal(s, cutoff)) * x
            label = f"mu_{s}"
        elif kind == "progression":
            measured = summatory_squarefree_progression(sieve, x, q, a)
            predicted = None
            if math.gcd(a, q) == 1:
                local = Fraction(1)
                for r in factorize(q).primes:
                    local /= 1 - Fraction(1, r * r)
                predicted = float(_squarefree_density(cutoff)) * float(local) * x / q
            label = f"mu^2, n={a} mod {q}"
        elif kind == "coprime":
            measured = summatory_squarefree_coprime(sieve, x, q)
            local = Fraction(1)
            for r in factorize(q).primes:
                local *= Fraction(r, r + 1)
            predicted = float(_squarefree_density(cutoff)) * float(local) * x
            label = f"mu^2, gcd(n,{q})=1"
        elif kind == "omega":
            measured = omega_progression_sum(sieve, x, q, a)
            predicted = omega_leading_term(x, q)
            label = f"omega, n={a} mod {q}"
        else:
            raise ValueError(f"unknown summatory kind {kind!r}")
        rows.append(make_row(x, label, measured, predicted, runtime_ms=_ms(t0), **extra))
    params = {"kind": kind, "x": xs, "s": s, "q": q, "a": a, "cutoff": cutoff}
    return ScanReport("summatory", params, rows)


def cmd_correlation(xs, offsets, s: int = 2, q: int | None = None, cutoff: int = DEFAULT_CUTOFF) -> ScanReport:
    """Correlation sums prod mu_s(n + a_i) over n <= x against the tuple Euler product.

    With ``q`` (pairs only) the members must also be coprime to q; those rows
    test a conjectural formula and carry data only, no pass/fail.
    """
    xs = sorted(int(x) for x in xs)
    offsets = sorted(int(v) for v in offsets)
    shift = offsets[0]
    offsets = [v - shift for v in offsets]
    sieve = build_sieve(xs[-1] + offsets[-1])
    rows = []
    for x in xs:
        t0 = time.perf_counter()
        if q is None:
            measured = correlation_spowerfree(sieve, x, offsets, s)
            density = tuple_euler_product(offsets, s, cutoff)
            rows.append(make_row(
                x, "[" + " ".join(map(str, offsets)) + f"] mu_{s}", measured, float(density) * x, runtime_ms=_ms(t0),
                ratio=measured / x, density=float(density), tolerance=5 * x ** (-1 / 3),
            ))
            continue
        if len(offsets) != 2:
            raise ValueError("coprime correlation takes a pair of offsets")
        a = offsets[1]
        measured = correlation_squarefree_coprime(sieve, x, a, q, s)
        exact_local = tuple_euler_product(offsets, s, cutoff, exclude_divisors_of=q)
        coprime = coprime_pair_density(q, a)
        predicted = float(exact_local) * float(coprime) * x
        # Conjectured form, with the product over p | q (the p not dividing q version diverges).
        phi_ratio = Fraction(euler_phi(factorize(q)), q)
        c2 = coprime / phi_ratio**2
        cross = Fraction(1)
        for r in factorize(q).primes:
            cross *= Fraction(r, r + 1) ** s
        literal = float(c2 * cross) * float(truncated_euler_product(lambda r: 2, s, cutoff)) * x
        rows.append(make_row(
            x, f"[0 {a}] mu_{s} coprime(q={q})", measured, predicted, runtime_ms=_ms(t0),
            status="conjecture-test", conjecture_form=literal,
        ))
    params = {"x": xs, "offsets": offsets, "s": s, "q": q, "cutoff": cutoff}
    return ScanReport("correlation", params, rows)


def cmd_families(pmin: int, pmax: int, threads: int = 1) -> ScanReport:
    """Family, omega(p-1), predicted run class and measured maximal run per prime."""

    def one(p):
        t0 = time.perf_counter()
        fam = classify_prime(p)
        run = max_run(scan_field(p))
        return make_row(
            p, "max_run", run.max_run, family=fam.family, runtime_ms=_ms(t0),
            omega_pm1=fam.omega_pm1, totient_ratio=float(fam.totient_ratio),
            run_class=predicted_run_class(p), merit=run.merit,
        )

    rows = _pmap(one, [p for p in primes_between(pmin, pmax) if p >= 5], threads)
    report = ScanReport("families", {"pmin": pmin, "pmax": pmax}, rows)
    report.summary = run_class_summary(rows)
    return report


def run_class_summary(rows) -> dict:
    rank = {"short": 0, "medium": 1, "long": 2}
    out = {}
    for cls in rank:
        merits = [r["merit"] for r in rows if r["run_class"] == cls]
        out[f"{cls}_count"] = len(merits)
        out[f"{cls}_mean_merit"] = statistics.fmean(merits) if merits else None
    out["merit_max"] = max((r["merit"] for r in rows), default=None)
    if len({r["run_class"] for r in rows}) > 1:
        rho = stats.spearmanr([rank[r["run_class"]] for r in rows], [r["merit"] for r in rows])
        out["spearman_class_vs_merit"] = float(rho.statistic)
    return out


def cmd_oracle_check(pmin: int, pmax: int, threads: int = 1) -> ScanReport:
    """Order-test bitmap vs generator powers, and the count vs phi(p-1), per prime."""

    def one(p):
        t0 = time.perf_counter()
        scan = scan_field(p)
        match = set(scan.roots()) == primroots_by_generator(p)
        phi = euler_phi(factorize(p - 1))
        return make_row(p, "order-test vs generator", scan.primroot_count, phi, runtime_ms=_ms(t0), sets_equal=match)

    rows = _pmap(one, [p for p in primes_between(pmin, pmax) if p >= 3], threads)
    report = ScanReport("oracle-check", {"pmin": pmin, "pmax": pmax}, rows)
    report.summary = {
        "primes": len(rows),
        "set_mismatches": sum(not r["sets_equal"] for r in rows),
        "count_mismatches": sum(r["measured"] != r["predicted"] for r in rows),
    }
    return report
