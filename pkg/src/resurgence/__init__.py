"""Symbolic powers of ideals of fat flats, their containment in ordinary
powers, and the resurgence that measures the gap.

All arithmetic is exact over a prime field F_p (default p = 32003).
"""

from .criteria import (
    ContainmentVerdict,
    ResurgenceBracket,
    SeshadriEntry,
    check_containment,
    gen_theorem_report,
    genprop_check,
    huneke_table,
    pell_square_binomials,
    resurgence_bracket,
    rho_skeleton,
    sccor_rho,
    seshadri_entry,
    sweep,
)
from .ideal import (
    Budget,
    Ideal,
    ResourceError,
    eliminate,
    groebner_basis,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_quotient,
    ideal_subset,
    ideal_sum,
    saturate,
)
from .invariants import (
    GammaBracket,
    HilbertTable,
    InvariantReport,
    alpha,
    gamma_bracket,
    hilbert_function,
    invariant_report,
    omega,
    regularity,
    satdeg,
    tau_sigma,
)
from .ring import DEFAULT_PRIME, FieldElement, MonomialOrder, Polynomial, PolynomialRing
from .schemes import (
    FatFlatScheme,
    LinearFlat,
    SchemeError,
    SkeletonSpec,
    collinear_fixture,
    cone_scheme,
    generic_points,
    scheme_from_json,
    skeleton_scheme,
    symbolic_power,
)

__version__ = "0.1.0"
