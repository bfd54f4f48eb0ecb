"""Exact computations with quasi-spline modules.

Polynomials over Q, Gröbner bases for ideals and submodules of R^s,
quasi-spline kernels of ideal difference-conditions, homogenization,
Hilbert data with Gotzmann numbers, and rank strata of parameter families.
"""

from .groebner import (
    FreeModuleElement,
    Ideal,
    Submodule,
    colon,
    eliminate,
    ideal_intersection,
    module_intersection,
    saturate_by_element,
    saturate_irrelevant,
    syzygy_kernel,
)
from .hilbert import (
    HilbertPolynomial,
    HilbertSeries,
    NotHilbertPolynomialError,
    NotHomogeneousError,
    gotzmann_expansion,
    gotzmann_number,
    gotzmann_sum,
    hilbert_function,
    hilbert_polynomial,
    hilbert_series,
    quasispline_hilbert_data,
    regularity_bound,
)
from .homogenization import (
    bounded_slice_dim,
    dehomogenize,
    graded_slice_dim,
    homogenize,
    homogenized_conditions_commute,
    round_trip_check,
    unit_defect_check,
    z_saturate,
)
from .poly import PolyRing, Polynomial, format_polynomial, parse_polynomial
from .quasispline import (
    DifferenceConditions,
    FamilyReport,
    QuasiSplineModule,
    check_quasispline_algebra,
    restriction_compare,
    specialize,
    spline_kernel,
)
from .strata import delta_matrix, generic_rank, rank_exact, spline_dimension, sweep
from .univariate import UPoly

__version__ = "0.1.0"
