"""sumprod: exact-arithmetic sum-product set statistics.

Everything is computed over arbitrary-precision rationals; no asserted
comparison ever touches floating point.
"""

from .core import (
    RatSet,
    Scalar,
    dilate,
    difference_set,
    format_scalar,
    inverse_set,
    make_scalar,
    negate,
    parse_scalar,
    productset,
    quotientset,
    slice_set,
    sumset,
    translate,
)
from .energy import (
    additive_energy,
    additive_third_moment,
    energy_via_slices,
    multiplicative_energy,
    quotient_slice_profile,
    sigma_count,
    sigma_sup,
    sigma_sup_with_witness,
    subadditivity_check,
    third_moment,
)
from .certificates import (
    DoublingCertificate,
    SymmetryCertificate,
    best_symmetry_certificate,
    doubling_certificate,
    induced_symmetry_certificate,
    katz_koester_rows,
    quotient_structure_certificate,
    sum_doubling_certificate,
    sym_add,
    sym_mult,
    symmetry_certificate,
    trivial_certificate,
    trivial_sum_certificate,
)
from .szt import (
    Line,
    Point,
    additive_level_set,
    empirical_szt_scan,
    incidence_report,
    incidences,
    linear_equation_report,
    mult_level_set,
    sumset_growth_report,
)
from .decompose import (
    DecompositionResult,
    find_low_energy_subset,
    greedy_energy_accumulate,
    low_energy_decomposition,
    pigeonhole_uniform_subset,
)
from .tracer import (
    ProofTrace,
    energy_band_witness,
    inequality_suite,
    level_bound_check,
    recheck_trace,
    trace_small_quotient,
    trace_sum_product,
)
from .generators import FamilySpec, family_scan, generate
from .errors import (
    BudgetError,
    CertificateError,
    DomainError,
    InvariantError,
    ParseError,
    SumprodError,
)

__version__ = "0.1.0"

__all__ = [
    "RatSet",
    "Scalar",
    "sumset",
    "difference_set",
    "productset",
    "quotientset",
    "slice_set",
    "dilate",
    "translate",
    "negate",
    "inverse_set",
    "make_scalar",
    "parse_scalar",
    "format_scalar",
    "additive_energy",
    "multiplicative_energy",
    "energy_via_slices",
    "third_moment",
    "additive_third_moment",
    "quotient_slice_profile",
    "sigma_count",
    "sigma_sup",
    "sigma_sup_with_witness",
    "subadditivity_check",
    "SymmetryCertificate",
    "DoublingCertificate",
    "sym_mult",
    "sym_add",
    "symmetry_certificate",
    "trivial_certificate",
    "trivial_sum_certificate",
    "doubling_certificate",
    "induced_symmetry_certificate",
    "sum_doubling_certificate",
    "best_symmetry_certificate",
    "katz_koester_rows",
    "quotient_structure_certificate",
    "Point",
    "Line",
    "incidences",
    "incidence_report",
    "additive_level_set",
    "mult_level_set",
    "empirical_szt_scan",
    "linear_equation_report",
    "sumset_growth_report",
    "pigeonhole_uniform_subset",
    "find_low_energy_subset",
    "low_energy_decomposition",
    "greedy_energy_accumulate",
    "DecompositionResult",
    "ProofTrace",
    "energy_band_witness",
    "level_bound_check",
    "trace_sum_product",
    "trace_small_quotient",
    "inequality_suite",
    "recheck_trace",
    "FamilySpec",
    "generate",
    "family_scan",
    "SumprodError",
    "ParseError",
    "DomainError",
    "InvariantError",
    "CertificateError",
    "BudgetError",
    "__version__",
]
