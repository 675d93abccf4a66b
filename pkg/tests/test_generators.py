"""Family generator and scan harness tests."""

import pytest

from sumprod.core import RatSet, productset, sumset
from sumprod.errors import DomainError
from sumprod.generators import KINDS, FamilySpec, family_scan, generate


def test_ap_gp_examples():
    assert generate(FamilySpec(kind="ap", size=4)) == RatSet([1, 2, 3, 4])
    assert generate(FamilySpec(kind="gp", size=4)) == RatSet([1, 2, 4, 8])


def test_every_kind_generates_exact_size():
    for kind in KINDS:
        for size in (1, 2, 7, 16):
            s = generate(FamilySpec(kind=kind, size=size))
            assert len(s) == size
            assert s.excludes_zero


def test_determinism_across_runs():
    for kind in KINDS:
        s1 = generate(FamilySpec(kind=kind, size=24, seed=5))
        s2 = generate(FamilySpec(kind=kind, size=24, seed=5))
        assert s1.to_text() == s2.to_text()
    assert generate(FamilySpec(kind="random-integer", size=24, seed=5)) != generate(
        FamilySpec(kind="random-integer", size=24, seed=6)
    )


def test_ap_union_gp_structure():
    s = generate(FamilySpec(kind="ap-union-gp", size=32))
    ap_part = RatSet(range(1, 17))
    assert ap_part.issubset(s)
    # both growth statistics exceed the extremal single-structure values
    assert len(sumset(s, s)) > 2 * 32 - 1
    assert len(productset(s, s)) > 2 * 32 - 1


def test_sidon_property():
    s = generate(FamilySpec(kind="sidon-greedy", size=12))
    sums = [x + y for i, x in enumerate(s) for y in list(s)[i:]]
    assert len(sums) == len(set(sums))


def test_sidon_range_too_small():
    with pytest.raises(DomainError):
        generate(FamilySpec(kind="sidon-greedy", size=20, value_range=25))


def test_invalid_specs():
    with pytest.raises(DomainError):
        generate(FamilySpec(kind="nope", size=3))
    with pytest.raises(DomainError):
        generate(FamilySpec(kind="gp", size=3, ratio="1"))
    with pytest.raises(DomainError):
        generate(FamilySpec(kind="ap", size=3, step="0"))
    with pytest.raises(DomainError):
        generate(FamilySpec(kind="ap", size=0))
    with pytest.raises(DomainError):
        # AP through zero is rejected unless explicitly requested
        generate(FamilySpec(kind="ap", size=3, start="-1"))
    ok = generate(FamilySpec(kind="ap", size=3, start="-1", include_zero=True))
    assert not ok.excludes_zero


def test_spec_json_round_trip():
    spec = FamilySpec(kind="gp", size=9, ratio="3/2", seed=2)
    assert FamilySpec.from_json_dict(spec.to_json_dict()) == spec
    with pytest.raises(DomainError):
        FamilySpec.from_json_dict({"kind": "ap", "size": 2, "bogus": 1})


def test_convex_and_perturbed_values():
    conv = generate(FamilySpec(kind="convex", size=5))
    assert conv == RatSet([1, 4, 9, 16, 25])
    pert = generate(FamilySpec(kind="perturbed", size=6, seed=1))
    gaps = [b - a for a, b in zip(pert, list(pert)[1:])]
    assert all(g > 0 for g in gaps)


def test_family_scan_rows_and_errors():
    specs = [
        FamilySpec(kind="ap", size=8),
        FamilySpec(kind="sidon-greedy", size=20, value_range=25),  # will error
    ]
    rows = family_scan(specs, operations=("growth",))
    assert any(r["metric"] == "max_growth" for r in rows)
    errors = [r for r in rows if r["metric"] == "error"]
    assert len(errors) == 1 and "DomainError" in errors[0]["value"]


def test_family_scan_deterministic_and_parallel_safe():
    specs = [FamilySpec(kind=k, size=8) for k in ("ap", "gp", "random-integer")]
    sequential = family_scan(specs, operations=("growth", "suite"), jobs=1)
    parallel = family_scan(specs, operations=("growth", "suite"), jobs=2)
    assert sequential == parallel


def test_family_scan_validates_operations():
    with pytest.raises(DomainError):
        family_scan([FamilySpec(kind="ap", size=4)], operations=("nope",))
    with pytest.raises(DomainError):
        family_scan([], operations=("growth",))
