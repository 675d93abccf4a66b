"""Proof-pipeline traces and the global inequality suite.

A trace replays a proof's pigeonhole and averaging steps on a concrete
set.  Every step carries its recorded exact values; steps with status
"asserted-exact" store (lhs, relation, rhs) as canonical fraction strings
so an offline checker can re-verify the inequality from the trace alone.
Rows whose statement hides an absorbed constant are "report-only" and are
never asserted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, log

from .certificates import (
    doubling_certificate,
    induced_symmetry_certificate,
    katz_koester_rows,
    symmetry_certificate,
    trivial_certificate,
    trivial_sum_certificate,
)
from .core import (
    RatSet,
    dilate,
    format_scalar,
    inverse_set,
    productset,
    quotientset,
    slice_set,
    sumset,
)
from .energy import (
    additive_energy,
    energy_via_slices,
    multiplicative_energy,
    quotient_slice_profile,
)
from .errors import DomainError, InvariantError
from .exactmath import ceil_log2, floor_log2
from .szt import empirical_szt_scan, linear_equation_report, sumset_growth_report

SCHEMA_TRACE = "sumprod.trace/1"
SCHEMA_SUITE = "sumprod.suite/1"

_RELATIONS = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "==": lambda a, b: a == b,
}


def _frac_str(x: Fraction | int) -> str:
    return format_scalar(Fraction(x))


@dataclass
class TraceStep:
    name: str
    status: str  # asserted-exact | report-only | conditional | precondition-unmet | degenerate
    inequality: str
    values: dict[str, str] = field(default_factory=dict)
    holds: bool | None = None

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "inequality": self.inequality,
            "values": self.values,
            "holds": self.holds,
        }


@dataclass
class ProofTrace:
    pipeline: str
    mode: str
    input_digest: str
    steps: list[TraceStep] = field(default_factory=list)

    def add_exact(
        self,
        name: str,
        lhs: Fraction | int,
        relation: str,
        rhs: Fraction | int,
        inequality: str,
        extra: dict | None = None,
    ) -> None:
        """Append an asserted-exact step; raises if the relation fails."""
        ok = _RELATIONS[relation](Fraction(lhs), Fraction(rhs))
        values = {"lhs": _frac_str(lhs), "relation": relation, "rhs": _frac_str(rhs)}
        if extra:
            values.update(extra)
        self.steps.append(
            TraceStep(name, "asserted-exact", inequality, values, holds=ok)
        )
        if not ok:
            raise InvariantError(
                f"trace step {name!r} failed: {_frac_str(lhs)} {relation} {_frac_str(rhs)}"
            )

    def add_report(self, name: str, inequality: str, values: dict) -> None:
        self.steps.append(TraceStep(name, "report-only", inequality, values, None))

    def add_status(self, name: str, status: str, inequality: str, values: dict) -> None:
        self.steps.append(TraceStep(name, status, inequality, values, None))

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA_TRACE,
            "pipeline": self.pipeline,
            "mode": self.mode,
            "input_digest": self.input_digest,
            "steps": [s.to_json_dict() for s in self.steps],
        }


def recheck_trace(trace: dict) -> bool:
    """Re-verify every asserted-exact step of a serialized trace."""
    from .core import parse_scalar

    for step in trace["steps"]:
        if step["status"] != "asserted-exact":
            continue
        values = step["values"]
        lhs = parse_scalar(values["lhs"])
        rhs = parse_scalar(values["rhs"])
        if not _RELATIONS[values["relation"]](lhs, rhs):
            return False
    return True


# -- dyadic band machinery ----------------------------------------------------------


def level_band(a: RatSet, tau: Fraction | int) -> RatSet:
    """{λ in A/A : tau < |A ∩ λA| <= 2 tau}."""
    tau = Fraction(tau)
    profile = quotient_slice_profile(a)
    return RatSet(lam for lam, c in profile.items() if tau < c <= 2 * tau)


def _band_candidates(n: int, threshold: Fraction) -> list[Fraction]:
    """Candidate band levels: 1/2, the integers, and threshold * 2^j.

    Including the threshold-anchored geometric levels makes the realized
    pigeonhole constant provable even though eligibility censors levels
    below the threshold.
    """
    cands = {Fraction(1, 2)} | {Fraction(t) for t in range(1, n + 1)}
    level = threshold
    while level <= n:
        cands.add(level)
        level *= 2
    return sorted(c for c in cands if c >= threshold)


def energy_band_witness(a: RatSet, mode: str = "quotient") -> dict:
    """Locate a slice-size band carrying a log-fraction of the energy.

    Scans bands S_tau = {λ : tau < |A_λ| <= 2 tau} over the candidate
    levels at or above the exact threshold E_x(A) / (2|A|^2) and returns
    the band maximizing |S_tau| tau^2 (ties to the larger tau).  Asserts
    the realized constant

        8 (ceil(log2 |A|) + 1) |S_tau| tau^2  >=  E_x(A)

    exactly on every invocation; the tighter target constant
    2 (floor(log2 |A|) + 1) is recorded, not asserted.  Also returns the
    per-λ ratio data |A_λ/A_λ| (or |A_λ A_λ| in product mode) against
    tau^2 L^{-16}, and the half-density subset S'_tau maximizing the
    minimum of that quantity, as a concrete witness.
    """
    if mode not in ("quotient", "product"):
        raise DomainError(f"unknown mode {mode!r}")
    a.require_nonempty("A")
    a.require_zero_free("A")
    n = len(a)
    profile = quotient_slice_profile(a)
    energy = sum(c * c for c in profile.values())
    threshold = Fraction(energy, 2 * n**2)

    size_hist: dict[int, int] = {}
    for c in profile.values():
        size_hist[c] = size_hist.get(c, 0) + 1
    best: tuple[Fraction, Fraction, int] | None = None  # (score, tau, count)
    for tau in _band_candidates(n, threshold):
        count = sum(m for c, m in size_hist.items() if tau < c <= 2 * tau)
        score = count * tau * tau
        if best is None or score > best[0] or (score == best[0] and tau > best[1]):
            best = (score, tau, count)
    assert best is not None
    score, tau, count = best

    log1 = ceil_log2(n) + 1 if n > 1 else 1
    if 8 * log1 * score < energy:
        raise InvariantError(
            f"band witness guarantee failed: 8*{log1}*{score} < {energy}"
        )

    s_tau = RatSet(lam for lam, c in profile.items() if tau < c <= 2 * tau)
    pi = quotientset(a, a) if mode == "quotient" else productset(a, a)
    big_l = Fraction(len(sumset(a, a)) ** 2 * len(pi), n**4)
    ratio_floor = tau * tau / big_l**16

    rows = []
    for lam in s_tau:
        sl = slice_set(a, lam)
        grown = quotientset(sl, sl) if mode == "quotient" else productset(sl, sl)
        rows.append({"lambda": lam, "slice_size": len(sl), "grown_size": len(grown)})
    rows.sort(key=lambda r: (-r["grown_size"], r["lambda"]))
    half = (len(rows) + 1) // 2
    s_prime = RatSet(r["lambda"] for r in rows[:half])
    t_witness = min((r["grown_size"] for r in rows[:half]), default=0)

    return {
        "mode": mode,
        "tau": tau,
        "band_count": count,
        "score": score,
        "energy": energy,
        "threshold": threshold,
        "s_tau": s_tau,
        "s_prime": s_prime,
        "t_witness": t_witness,
        "rows": rows,
        "big_l": big_l,
        "ratio_floor": ratio_floor,
        "target_bound_ok": 2 * (floor_log2(n) + 1) * score >= energy,
        "log_constant": log1,
    }


# -- the level-set sum bound ----------------------------------------------------------


def level_bound_check(
    a: RatSet,
    tau: Fraction | int,
    s_prime: RatSet,
    sigma: int,
    sigma_exact: bool = True,
) -> dict:
    """Verify the square-root level bound on a concrete witness.

    Given tau, a subset S' of the band {λ : tau < |A_λ| <= 2 tau}, and a
    triple-count bound sigma, checks the precondition

        32 sigma <= tau^2 <= |A+A| sqrt(sigma)

    (second half squared to stay rational) and, when it holds, asserts the
    conclusion  |A+A|^2 >= tau^3 |S'| / (128 sqrt(sigma))  through its
    squared form  16384 |A+A|^4 sigma >= tau^6 |S'|^2.  The conclusion is
    "asserted-exact" only when sigma is the exact supremum; otherwise the
    status is "conditional".
    """
    tau = Fraction(tau)
    if tau <= 0:
        raise DomainError("tau must be positive")
    if sigma < 0:
        raise DomainError("sigma must be nonnegative")
    profile = quotient_slice_profile(a)
    for lam in s_prime:
        c = profile.get(lam, 0)
        if not (tau < c <= 2 * tau):
            raise DomainError(
                f"S' member {lam} outside the dyadic band: |A_lambda| = {c}"
            )
    sum_size = len(sumset(a, a))
    pre_lower = 32 * sigma <= tau * tau
    pre_upper = tau**4 <= sum_size**2 * sigma
    report = {
        "tau": tau,
        "s_prime_size": len(s_prime),
        "sigma": sigma,
        "sigma_exact": sigma_exact,
        "sumset_size": sum_size,
        "pre_lower_ok": pre_lower,
        "pre_upper_ok": pre_upper,
    }
    if not (pre_lower and pre_upper):
        report["status"] = "precondition-unmet"
        report["conclusion_ok"] = None
        return report
    lhs = 16384 * Fraction(sum_size) ** 4 * sigma
    rhs = tau**6 * len(s_prime) ** 2
    ok = lhs >= rhs
    report["status"] = "asserted-exact" if sigma_exact else "conditional"
    report["conclusion_ok"] = ok
    report["conclusion_lhs"] = lhs
    report["conclusion_rhs"] = rhs
    if sigma_exact and not ok:
        raise InvariantError(
            f"level bound conclusion failed: {lhs} < {rhs} at tau = {tau}"
        )
    return report


# -- main pipeline traces --------------------------------------------------------------


def trace_sum_product(a: RatSet, mode: str = "quotient") -> ProofTrace:
    """Replay the main sum-product pipeline on A.

    Chain: energy band witness -> per-slice dilate-intersection growth
    (exact) -> symmetry containment at the realized level t -> averaging
    to a dense dilate A' (exact strict bound) -> validated symmetry
    certificate for A' -> final exponent rows (report-only).
    """
    a.require_nonempty("A")
    a.require_zero_free("A")
    trace = ProofTrace("sum-product", mode, a.digest())
    n = len(a)
    witness = energy_band_witness(a, mode=mode)
    tau, s_prime = witness["tau"], witness["s_prime"]
    trace.add_exact(
        "energy-band",
        8 * witness["log_constant"] * witness["score"],
        ">=",
        witness["energy"],
        "8 (ceil log2 |A| + 1) |S_tau| tau^2 >= E_x(A)",
        extra={
            "tau": _frac_str(tau),
            "band_count": str(witness["band_count"]),
            "threshold": _frac_str(witness["threshold"]),
            "target_2log_ok": str(witness["target_bound_ok"]),
        },
    )

    if mode == "quotient":
        pi = quotientset(a, a)
        grow = lambda s: quotientset(s, s)  # noqa: E731
        r_set = pi  # Pi is inversion-symmetric, so R^{-1} = Pi
    else:
        pi = productset(a, a)
        grow = lambda s: productset(s, s)  # noqa: E731
        r_set = inverse_set(pi)  # xR^{-1} = x Pi

    # Dilate-intersection inclusion per lambda gives the symmetry level.
    t_level = None
    for lam in s_prime:
        sl = slice_set(a, lam)
        grown = grow(sl)
        inside = all(g in pi and g / lam in pi for g in grown)
        if not inside:
            raise InvariantError(f"dilate-intersection inclusion failed at {lam}")
        t_level = len(grown) if t_level is None else min(t_level, len(grown))
    if t_level is None or t_level < 1:
        raise InvariantError("empty band witness; cannot form a symmetry level")
    trace.add_exact(
        "katz-koester-level",
        witness["t_witness"],
        "==",
        t_level,
        "t = min over S' of the grown slice size; inclusions verified per lambda",
        extra={"s_prime_size": str(len(s_prime))},
    )

    # Averaging: some dilate a*S' meets A in more than tau |S'| / |A| points.
    best_a, best_hits = None, -1
    for x in a:
        hits = sum(1 for lam in s_prime if x * lam in a)
        if hits > best_hits:
            best_a, best_hits = x, hits
    assert best_a is not None
    trace.add_exact(
        "averaging",
        Fraction(best_hits * n),
        ">",
        tau * len(s_prime),
        "|A'| |A| > tau |S'| for the best dilate",
        extra={"best_a": format_scalar(best_a), "a_prime_size": str(best_hits)},
    )

    a_prime = RatSet(x for x in a if x / best_a in s_prime)
    assert len(a_prime) == best_hits
    cert = symmetry_certificate(a_prime, dilate(pi, best_a), r_set, t_level, kind="mult")
    formula_bound = Fraction(len(pi) ** 4) * witness["big_l"] ** 48 / (
        Fraction(len(a_prime)) * tau**6
    )
    trace.add_report(
        "certificate",
        "certificate value vs |Pi|^4 L^48 / (|A'| tau^6) (absorbed constants)",
        {
            "value": _frac_str(cert.value),
            "formula_bound": _frac_str(formula_bound),
            "t": str(t_level),
            "q_size": str(len(cert.q_set)),
            "r_size": str(len(cert.r_set)),
            "ratio": f"{float(cert.value / formula_bound):.6g}" if formula_bound else "inf",
        },
    )

    other = quotientset(a, a) if mode == "quotient" else productset(a, a)
    measured = max(len(sumset(a, a)), len(other))
    base_ok = Fraction(measured) ** 3 >= Fraction(n) ** 4
    # 4/3 + 5/9813 = 4363/3271 in lowest terms.
    refined_ok = Fraction(measured) ** 3271 >= Fraction(n) ** 4363
    trace.add_report(
        "final-exponent",
        "max{|A+A|, |Pi|} vs |A|^{4/3} and |A|^{4/3 + 5/9813} (report-only)",
        {
            "measured": str(measured),
            "exponent": f"{log(measured) / log(n):.6f}" if n > 1 else "inf",
            "meets_4_3": str(bool(base_ok)),
            "meets_refined": str(bool(refined_ok)),
        },
    )
    return trace


def _kappa_formula(n: int, big_k: Fraction) -> float:
    """kappa = |A|^{7/830} K^{-59/415}, as a float for reporting."""
    return float(n) ** (7 / 830) * float(big_k) ** (-59 / 415)


def trace_small_quotient(
    a: RatSet,
    kappa: Fraction | str = "auto",
    gamma: Fraction = Fraction(1, 16),
) -> ProofTrace:
    """Replay the small-quotient-set pipeline on A.

    Splits a Dirichlet band by the relative size of |A_λ/A| into a small
    side (per-slice doubling certificates, exact) and a large side
    (dilate-intersection containment, averaging, and a validated symmetry
    certificate).  kappa "auto" uses the median split with the realized
    threshold; an explicit kappa in (0, 1] splits by value.
    """
    a.require_nonempty("A")
    a.require_zero_free("A")
    n = len(a)
    trace = ProofTrace("small-quotient", "quotient", a.digest())
    pi = quotientset(a, a)
    if len(pi) < 2:
        trace.add_status(
            "degenerate",
            "degenerate",
            "|A/A| < 2: nothing to split",
            {"pi_size": str(len(pi))},
        )
        return trace

    big_k = Fraction(len(pi), n)
    gate_low = big_k**23 >= Fraction(n) ** 5  # K >= |A|^{5/23}
    gate_high = big_k**4 <= gamma**4 * n  # K <= gamma |A|^{1/4}
    trace.add_report(
        "regime-gate",
        "|A|^{5/23} <= K <= gamma |A|^{1/4} (scope of the pipeline)",
        {
            "K": _frac_str(big_k),
            "gamma": _frac_str(gamma),
            "gate_low": str(bool(gate_low)),
            "gate_high": str(bool(gate_high)),
        },
    )

    # Dirichlet level: |S_tau| tau carries a log fraction of |A|^2.
    profile = quotient_slice_profile(a)
    threshold = Fraction(n**2, 2 * len(pi))  # |A| / (2K)
    size_hist: dict[int, int] = {}
    for c in profile.values():
        size_hist[c] = size_hist.get(c, 0) + 1
    best: tuple[Fraction, Fraction, int] | None = None
    for tau in _band_candidates(n, threshold):
        count = sum(m for c, m in size_hist.items() if tau < c <= 2 * tau)
        score = count * tau
        if best is None or score > best[0] or (score == best[0] and tau > best[1]):
            best = (score, tau, count)
    assert best is not None
    score, tau, count = best
    log1 = ceil_log2(n) + 1 if n > 1 else 1
    trace.add_exact(
        "dirichlet-band",
        4 * log1 * score,
        ">=",
        Fraction(n**2),
        "4 (ceil log2 |A| + 1) |S_tau| tau >= |A|^2",
        extra={
            "tau": _frac_str(tau),
            "band_count": str(count),
            "threshold": _frac_str(threshold),
            "target_1log_ok": str(bool((floor_log2(n) + 1) * score >= n**2)),
        },
    )
    s_tau = RatSet(lam for lam, c in profile.items() if tau < c <= 2 * tau)

    # kappa split on v(lambda) = |A_lambda / A|.
    values = {}
    for lam in s_tau:
        values[lam] = len(quotientset(slice_set(a, lam), a))
    ordered = sorted(s_tau, key=lambda lam: (values[lam], lam))
    if kappa == "auto":
        half = (len(ordered) + 1) // 2
        low_side = ordered[:half]
        high_side = ordered[half:]
        kappa_label = "auto(median)"
    else:
        kappa_val = Fraction(kappa)
        if not 0 < kappa_val <= 1:
            raise DomainError("kappa must lie in (0, 1]")
        cut = kappa_val * len(pi)
        low_side = [lam for lam in ordered if values[lam] <= cut]
        high_side = [lam for lam in ordered if values[lam] >= cut]
        kappa_label = _frac_str(kappa_val)
    kappa_low = (
        Fraction(max(values[lam] for lam in low_side), len(pi)) if low_side else None
    )
    kappa_high = (
        Fraction(min(values[lam] for lam in high_side), len(pi)) if high_side else None
    )
    trace.add_report(
        "kappa-split",
        "S' (small |A_lambda/A|) and S'' (large) with realized thresholds",
        {
            "kappa": kappa_label,
            "kappa_formula": f"{_kappa_formula(n, big_k):.6g}",
            "s_low_size": str(len(low_side)),
            "s_high_size": str(len(high_side)),
            "kappa_low_realized": "none" if kappa_low is None else _frac_str(kappa_low),
            "kappa_high_realized": "none" if kappa_high is None else _frac_str(kappa_high),
        },
    )

    # Small side: per-slice doubling certificates, exact.
    if low_side and kappa_low is not None:
        inv_a = inverse_set(a)
        for lam in low_side:
            sl = slice_set(a, lam)
            dcert = doubling_certificate(sl, inv_a)
            induced = induced_symmetry_certificate(dcert)
            bound = kappa_low**2 * len(pi) ** 2 / (Fraction(len(sl)) * n)
            if induced.value > bound:
                raise InvariantError(
                    f"slice certificate above the split bound at {lam}"
                )
        trace.add_exact(
            "small-side-certificates",
            Fraction(max(values[lam] for lam in low_side)),
            "<=",
            kappa_low * len(pi),
            "per-slice value |A_lambda/A| <= kappa |Pi|; certificates validated",
            extra={"slices": str(len(low_side))},
        )
    else:
        trace.add_status(
            "small-side-certificates",
            "precondition-unmet",
            "empty small side",
            {},
        )

    # Large side: containment at level t, averaging, certificate.
    if high_side and kappa_high is not None:
        t_level = min(values[lam] for lam in high_side)
        for lam in high_side:
            sl = slice_set(a, lam)
            grown = quotientset(sl, a)
            if not all(g in pi and g / lam in pi for g in grown):
                raise InvariantError(f"containment failed on the large side at {lam}")
        trace.add_exact(
            "large-side-containment",
            Fraction(t_level),
            ">=",
            kappa_high * len(pi),
            "|Pi ∩ lambda Pi| >= |A_lambda/A| >= kappa'' |Pi| on S''",
            extra={"t": str(t_level)},
        )
        high_set = RatSet(high_side)
        best_a, best_hits = None, -1
        for x in a:
            hits = sum(1 for lam in high_set if x * lam in a)
            if hits > best_hits:
                best_a, best_hits = x, hits
        assert best_a is not None
        trace.add_exact(
            "large-side-averaging",
            Fraction(best_hits * n),
            ">",
            tau * len(high_set),
            "|A'| |A| > tau |S''| for the best dilate",
            extra={"best_a": format_scalar(best_a)},
        )
        a_prime = RatSet(x for x in a if x / best_a in high_set)
        cert = symmetry_certificate(
            a_prime, dilate(pi, best_a), pi, t_level, kind="mult"
        )
        kappa_f = float(kappa_high)
        formula = float(len(pi)) / (len(a_prime) * kappa_f**3) if kappa_f else float("inf")
        trace.add_report(
            "large-side-certificate",
            "certificate value vs |Pi| / (|A'| kappa^3) (absorbed constants)",
            {
                "value": _frac_str(cert.value),
                "formula_bound": f"{formula:.6g}",
                "t": str(t_level),
                "a_prime_size": str(len(a_prime)),
            },
        )
    else:
        trace.add_status(
            "large-side-certificate",
            "precondition-unmet",
            "empty large side",
            {},
        )

    # Branch bound rows and the collected conditions (report-only).
    sum_size = len(sumset(a, a))
    k_f, n_f = float(big_k), float(n)
    bound_small = n_f ** (19 / 12) * k_f ** (-5 / 6) * (
        float(kappa_low) ** (-1 / 6) if kappa_low else 1.0
    )
    bound_large = (
        n_f ** (58 / 37) * k_f ** (-21 / 37) * float(kappa_high) ** (63 / 37)
        if kappa_high
        else float("nan")
    )
    combined = n_f ** (1313 / 830) * k_f ** (-336 / 415)
    cond33 = None
    if kappa_low is not None:
        cond33 = bool(
            tau**8 <= Fraction(sum_size) ** 6 * big_k**2 * n * kappa_low**2
        )
    trace.add_report(
        "branch-bounds",
        "|A+A| vs the two branch bounds and the combined exponent (report-only)",
        {
            "sumset_size": str(sum_size),
            "bound_small_side": f"{bound_small:.6g}",
            "bound_large_side": f"{bound_large:.6g}",
            "bound_combined": f"{combined:.6g}",
            "condition_33_ok": "none" if cond33 is None else str(cond33),
        },
    )
    return trace


# -- the global inequality suite --------------------------------------------------------


@dataclass
class SuiteRow:
    row_id: str
    status: str  # pass | fail | report
    detail: str

    def to_dict(self) -> dict:
        return {"row": self.row_id, "status": self.status, "detail": self.detail}


@dataclass
class SuiteReport:
    input_digest: str
    set_size: int
    rows: list[SuiteRow]

    @property
    def all_pass(self) -> bool:
        return all(r.status != "fail" for r in self.rows)

    @property
    def failures(self) -> list[SuiteRow]:
        return [r for r in self.rows if r.status == "fail"]

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA_SUITE,
            "input_digest": self.input_digest,
            "set_size": self.set_size,
            "rows": [r.to_dict() for r in self.rows],
            "all_pass": self.all_pass,
        }


def _row(rows: list[SuiteRow], row_id: str, ok: bool, detail: str) -> None:
    rows.append(SuiteRow(row_id, "pass" if ok else "fail", detail))


def _report_row(rows: list[SuiteRow], row_id: str, detail: str) -> None:
    rows.append(SuiteRow(row_id, "report", detail))


def inequality_suite(
    a: RatSet,
    seed: int = 0,
    bipartitions: int = 10,
    kk_work_cap: int = 1_500_000,
) -> SuiteReport:
    """Run every exactly-assertable inequality on A plus the report rows.

    Asserted rows must all pass on any input (they are proved facts with
    explicit constants); a fail signals an implementation bug and makes
    the CLI exit nonzero.  Report rows carry measured ratios for the
    statements whose constants are absorbed.
    """
    a.require_nonempty("A")
    a.require_zero_free("A")
    n = len(a)
    if n < 2:
        raise DomainError("the suite needs |A| >= 2")
    rows: list[SuiteRow] = []

    sum_a = sumset(a, a)
    prod_a = productset(a, a)
    quot_a = quotientset(a, a)
    e_mult = multiplicative_energy(a)
    e_add = additive_energy(a)

    # Doubling lower bounds with the explicit log constant (base 2).
    const = 4 * ceil_log2(n)
    lhs_q = len(sum_a) ** 2 * len(quot_a) * const
    lhs_p = len(sum_a) ** 2 * len(prod_a) * const
    _row(rows, "doubling-quotient", lhs_q >= n**4, f"{lhs_q} >= {n**4}")
    _row(rows, "doubling-product", lhs_p >= n**4, f"{lhs_p} >= {n**4}")
    nat_const = 4 * max(1, ceil(log(n)))
    _report_row(
        rows,
        "doubling-natural-log",
        f"natural-log constant variant: {len(sum_a)**2 * len(quot_a) * nat_const} vs {n**4}",
    )

    # Slice identity for the multiplicative energy.
    via = energy_via_slices(a)
    _row(rows, "energy-slice-identity", via == e_mult, f"{via} == {e_mult}")

    # Cauchy-Schwarz energy lower bounds, full set and deterministic halves.
    _row(
        rows,
        "cs-quotient",
        e_mult * len(quot_a) >= n**4,
        f"{e_mult} * {len(quot_a)} >= {n**4}",
    )
    _row(
        rows,
        "cs-product",
        e_mult * len(prod_a) >= n**4,
        f"{e_mult} * {len(prod_a)} >= {n**4}",
    )
    half = (n + 1) // 2
    a1 = RatSet(a.elements[:half])
    a2 = RatSet(a.elements[half:]) if n > half else a1
    cross = multiplicative_energy(a1, a2)
    target = len(a1) ** 2 * len(a2) ** 2
    _row(
        rows,
        "cs-cross-quotient",
        cross * len(quot_a) >= target,
        f"{cross} * {len(quot_a)} >= {target}",
    )
    _row(
        rows,
        "cs-cross-product",
        cross * len(prod_a) >= target,
        f"{cross} * {len(prod_a)} >= {target}",
    )

    # Energy subadditivity over seeded random bipartitions.  The union is
    # always A itself, so its two energies are computed once.
    from .exactmath import compare_fourth_root_sums

    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < bipartitions and attempts < 50 * bipartitions:
        attempts += 1
        mask = [rng.getrandbits(1) for _ in range(n)]
        left = RatSet(x for x, m in zip(a.elements, mask) if m)
        right = RatSet(x for x, m in zip(a.elements, mask) if not m)
        if not len(left) or not len(right):
            continue
        add_parts = [additive_energy(left), additive_energy(right)]
        mul_parts = [multiplicative_energy(left), multiplicative_energy(right)]
        add_ok = compare_fourth_root_sums([e_add], add_parts) <= 0
        mul_ok = compare_fourth_root_sums([e_mult], mul_parts) <= 0
        _row(
            rows,
            f"subadditivity-add-{done}",
            add_ok,
            f"E+({e_add}) vs parts {add_parts}",
        )
        _row(
            rows,
            f"subadditivity-mult-{done}",
            mul_ok,
            f"Ex({e_mult}) vs parts {mul_parts}",
        )
        done += 1
    if done < bipartitions:
        _row(rows, "subadditivity-draws", False, "could not draw bipartitions")

    # Dilate-intersection (Katz-Koester) witnesses, both growth modes.
    for mode in ("quotient", "product"):
        pi = quot_a if mode == "quotient" else prod_a
        kk = katz_koester_rows(a, mode=mode, work_cap=kk_work_cap, pi=pi)
        bad = [r for r in kk if not r["holds"]]
        _row(
            rows,
            f"katz-koester-{mode}",
            not bad,
            f"{len(kk)} lambdas checked"
            + ("" if not bad else f"; first failure at {bad[0]['lambda']}"),
        )

    # Certificate consistency: the C-witness and its induced symmetry form.
    dcert = doubling_certificate(a, a)
    induced = induced_symmetry_certificate(dcert)
    _row(
        rows,
        "certificate-induced-equal",
        induced.value == dcert.value,
        f"{induced.value} == {dcert.value}",
    )
    triv = trivial_certificate(a)
    best_value = min(triv.value, induced.value)
    _row(
        rows,
        "certificate-best-le-doubling",
        best_value <= dcert.value,
        f"{best_value} <= {dcert.value}",
    )

    # Report rows: exponent measurements and decay-parameter ratios.
    measured = max(len(sum_a), len(prod_a))
    _report_row(
        rows,
        "max-growth-exponent",
        f"max(|A+A|,|AA|) = {measured}; exponent {log(measured)/log(n):.4f}"
        f"; meets 4/3: {measured**3 >= n**4}",
    )
    d_upper = min(Fraction(n), dcert.value)
    growth = sumset_growth_report(a, d_upper)
    _report_row(
        rows,
        "sumset-growth-37",
        f"|A+A|^37 d^21 / |A|^58 = {float(growth['ratio_power37']):.4g}"
        f"; meets: {growth['meets_bound']}",
    )
    lin = linear_equation_report((a, a, a), (1, 1, -1), d_upper)
    _report_row(
        rows,
        "linear-solutions-6",
        f"sigma = {lin['sigma']}; sigma^6/rhs = {float(lin['sigma_ratio_power6']):.4g}",
    )
    add_scan = empirical_szt_scan(a, [a], kind="add", upper_value=d_upper)
    _report_row(
        rows,
        "szt-additive-ratio",
        f"max lower witness {float(add_scan.max_bound):.4g}"
        f" vs upper {float(d_upper):.4g}"
        f"; anomalies: {sum(1 for c in add_scan.cells if c.anomaly)}",
    )
    # Multiplicative level sets pair with the additive-symmetry upper bound.
    d_plus_upper = trivial_sum_certificate(a).value
    mult_scan = empirical_szt_scan(a, [a], kind="mult", upper_value=d_plus_upper)
    _report_row(
        rows,
        "szt-mult-ratio",
        f"max lower witness {float(mult_scan.max_bound):.4g}"
        f" vs additive-symmetry upper {float(d_plus_upper):.4g}"
        f"; anomalies: {sum(1 for c in mult_scan.cells if c.anomaly)}",
    )
    big_k = Fraction(len(quot_a), n)
    bound3 = float(n) ** (19 / 12) * float(big_k) ** (-5 / 6)
    bound5 = float(n) ** (1313 / 830) * float(big_k) ** (-336 / 415)
    _report_row(
        rows,
        "small-quotient-bounds",
        f"|A+A| = {len(sum_a)} vs branch bounds {bound3:.4g} / {bound5:.4g} (K = {float(big_k):.3g})",
    )
    return SuiteReport(input_digest=a.digest(), set_size=n, rows=rows)
