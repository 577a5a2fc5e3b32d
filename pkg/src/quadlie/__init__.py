"""Exact computations with quadratic Lie algebras over the Gaussian rationals."""

from .dblext import (
    DoubleExtensionData,
    amalgamate,
    builtin,
    canonical_space,
    double_extend,
    extract_double_extension,
    g_lambda_mu,
    g_of_partition,
    jordan_type_algebra,
    split_nonsolvable_singular,
)
from .errors import DomainError, ParseError, QuadLieError
from .exterior import AltForm, brackets_from_threeform, contract, super_poisson, threeform_from_brackets, wedge
from .iso import IsoVerdict, centromorphisms, decide_iso, dup_transport_check, quadratic_dimension
from .linalg import Mat, QuadSpace, SkewMap
from .orbits import OrbitInvariant, enumerate_Pprime, orbit_invariant, projective_equal
from .qla import QLA, dup, orthogonal_sum, reduce
from .scalar import GaussInt, GaussScalar, Poly, gauss_factor, gauss_parse, gauss_print, poly_roots_gaussian

__version__ = "0.1.0"
