"""Deterministic test-set families across the additive/multiplicative
structure spectrum, and the batch scan harness.

All randomness flows through ``random.Random(seed)`` (Mersenne Twister,
stable across platforms and Python versions), so every family is
reproducible byte for byte.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from .core import RatSet, make_scalar, productset, quotientset, sumset
from .decompose import greedy_energy_accumulate, low_energy_decomposition
from .energy import additive_energy, multiplicative_energy
from .errors import DomainError, SumprodError
from .tracer import inequality_suite, trace_small_quotient, trace_sum_product

KINDS = (
    "ap",
    "gp",
    "random-integer",
    "ap-union-gp",
    "convex",
    "sidon-greedy",
    "perturbed",
)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    size: int
    start: str = "1"
    step: str = "1"
    ratio: str = "2"
    seed: int = 0
    value_range: int | None = None  # cap for random draws / greedy growth
    include_zero: bool = False

    def label(self) -> str:
        return f"{self.kind}-{self.size}-s{self.seed}"

    def to_json_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json_dict(cls, data: dict) -> "FamilySpec":
        allowed = {f for f in cls.__dataclass_fields__}  # type: ignore[attr-defined]
        unknown = set(data) - allowed
        if unknown:
            raise DomainError(f"unknown FamilySpec fields: {sorted(unknown)}")
        return cls(**data)


def _sidon_greedy(size: int, cap: int) -> list[int]:
    """Greedy B2 sequence: accept the next integer keeping all pairwise
    sums distinct.  Deterministic; raises when cap is too small."""
    chosen: list[int] = []
    sums: set[int] = set()
    candidate = 1
    while len(chosen) < size:
        if candidate > cap:
            raise DomainError(
                f"sidon-greedy cannot reach size {size} within range {cap}"
            )
        new_sums = {candidate + x for x in chosen} | {2 * candidate}
        if not (new_sums & sums):
            sums |= new_sums
            chosen.append(candidate)
        candidate += 1
    return chosen


def generate(spec: FamilySpec) -> RatSet:
    """Produce the deterministic set described by spec (exactly spec.size
    elements); 0 is rejected unless explicitly requested."""
    if spec.kind not in KINDS:
        raise DomainError(f"unknown family kind {spec.kind!r}")
    if spec.size < 1:
        raise DomainError("size must be >= 1")
    n = spec.size
    start = make_scalar(spec.start)
    step = make_scalar(spec.step)
    ratio = make_scalar(spec.ratio)

    if spec.kind == "ap":
        if step == 0:
            raise DomainError("ap step must be nonzero")
        elems = [start + k * step for k in range(n)]
    elif spec.kind == "gp":
        if start == 0 or ratio in (Fraction(0), Fraction(1), Fraction(-1)):
            raise DomainError("gp needs start != 0 and ratio not in {0, 1, -1}")
        elems = [start * ratio**k for k in range(n)]
    elif spec.kind == "random-integer":
        cap = spec.value_range or max(n**3, n)
        rng = random.Random(spec.seed)
        elems = [Fraction(v) for v in rng.sample(range(1, cap + 1), n)]
    elif spec.kind == "ap-union-gp":
        ap_part = (n + 1) // 2
        gp_part = n - ap_part
        base = ap_part + 1
        elems = [Fraction(k) for k in range(1, ap_part + 1)]
        elems += [Fraction(base * 2**k) for k in range(gp_part)]
    elif spec.kind == "convex":
        elems = [Fraction(k * k) for k in range(1, n + 1)]
    elif spec.kind == "sidon-greedy":
        cap = spec.value_range or max(8 * n**3, 16)
        elems = [Fraction(v) for v in _sidon_greedy(n, cap)]
    else:  # perturbed: an AP with seeded sub-step jitter, gaps stay > jitter
        rng = random.Random(spec.seed)
        gap = max(n, 2)
        elems = [Fraction(k * gap * gap + rng.randrange(gap)) for k in range(1, n + 1)]

    out = RatSet(elems)
    if len(out) != n:
        raise DomainError(f"family {spec.kind} produced {len(out)} != {n} elements")
    if not spec.include_zero and not out.excludes_zero:
        raise DomainError(f"family {spec.kind} produced 0; pass include_zero to allow")
    return out


def default_corpus(sizes: list[int], seed: int = 0) -> list[FamilySpec]:
    """One spec per (kind, size), in deterministic order."""
    return [FamilySpec(kind=k, size=s, seed=seed) for k in KINDS for s in sizes]


# -- batch scans -----------------------------------------------------------------------

SCAN_OPERATIONS = ("growth", "suite", "decompose", "accumulate", "trace-sum-product", "trace-small-quotient")


def _scan_cell(args: tuple[FamilySpec, str, int]) -> list[dict]:
    """One (spec, operation) cell -> flat metric rows; must stay picklable."""
    spec, operation, seed = args
    base = {"family": spec.label(), "kind": spec.kind, "size": spec.size, "op": operation}
    try:
        a = generate(spec)
        rows: list[dict] = []
        if operation == "growth":
            s, p = len(sumset(a, a)), len(productset(a, a))
            rows.append(base | {"metric": "sumset_size", "value": str(s)})
            rows.append(base | {"metric": "productset_size", "value": str(p)})
            rows.append(base | {"metric": "quotientset_size", "value": str(len(quotientset(a, a)))})
            rows.append(base | {"metric": "max_growth", "value": str(max(s, p))})
            rows.append(base | {"metric": "add_energy", "value": str(additive_energy(a))})
            rows.append(base | {"metric": "mult_energy", "value": str(multiplicative_energy(a))})
        elif operation == "suite":
            report = inequality_suite(a, seed=seed)
            fails = len(report.failures)
            rows.append(base | {"metric": "suite_rows", "value": str(len(report.rows))})
            rows.append(base | {"metric": "suite_failures", "value": str(fails)})
            rows.append(base | {"metric": "suite_all_pass", "value": str(report.all_pass)})
        elif operation == "decompose":
            result = low_energy_decomposition(a, "auto")
            rows.append(base | {"metric": "b_size", "value": str(len(result.b_set))})
            rows.append(base | {"metric": "c_size", "value": str(len(result.c_set))})
            rows.append(base | {"metric": "steps", "value": str(len(result.steps))})
            rows.append(base | {"metric": "stop_reason", "value": result.stop_reason})
            e_b = additive_energy(result.b_set) if len(result.b_set) else 0
            e_c = multiplicative_energy(result.c_set) if len(result.c_set) else 0
            rows.append(base | {"metric": "add_energy_b", "value": str(e_b)})
            rows.append(base | {"metric": "mult_energy_c", "value": str(e_c)})
        elif operation == "accumulate":
            a1, diag = greedy_energy_accumulate(a, flavor="mult")
            rows.append(base | {"metric": "a1_size", "value": str(len(a1))})
            rows.append(base | {"metric": "driving_energy", "value": str(diag["driving_energy"])})
            rows.append(base | {"metric": "stop_reason", "value": diag["stop_reason"]})
        elif operation == "trace-sum-product":
            trace = trace_sum_product(a)
            rows.append(base | {"metric": "trace_steps", "value": str(len(trace.steps))})
            rows.append(base | {"metric": "trace_ok", "value": "True"})
        elif operation == "trace-small-quotient":
            trace = trace_small_quotient(a)
            rows.append(base | {"metric": "trace_steps", "value": str(len(trace.steps))})
            rows.append(base | {"metric": "trace_ok", "value": "True"})
        else:
            raise DomainError(f"unknown scan operation {operation!r}")
        return rows
    except SumprodError as exc:
        return [base | {"metric": "error", "value": f"{type(exc).__name__}: {exc}"}]


def family_scan(
    specs: list[FamilySpec],
    operations: tuple[str, ...] = ("growth",),
    seed: int = 0,
    jobs: int = 1,
) -> list[dict]:
    """Run the requested operations over every spec; per-cell errors are
    recorded as rows and the scan continues.  Output order is the
    deterministic (spec, operation) order regardless of jobs."""
    if not specs:
        raise DomainError("empty spec list")
    for op in operations:
        if op not in SCAN_OPERATIONS:
            raise DomainError(f"unknown scan operation {op!r}")
    cells = [(spec, op, seed) for spec in specs for op in operations]
    if jobs <= 1:
        results = [_scan_cell(c) for c in cells]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_cell, cells))
    return [row for cell_rows in results for row in cell_rows]
