"""Construction, classification and verification of cubic sublattices of Z³."""

from .cubic import (
    ClassifyResult,
    CubicLattice,
    NotCubic,
    classify,
    cubic_basis_extract,
    enumerate_cubic_containing,
    gamma,
    gamma_any,
    gamma_decompositions,
    gamma_membership_def,
    gcd2_witness,
    gcd3_witness,
)
from .errors import CubicLatticeError
from .int3 import (
    Basis3,
    HnfBasis3,
    coords_in_basis,
    cross,
    gram,
    hnf_of_generators,
    max_square_divisor,
    primitive_part,
)
from .numtheory import (
    ReverseTrace,
    coprime_three_squares_necessary,
    prime_vector,
    reverse_construct,
    scale_down,
    scale_up,
)
from .perp import MSublattice, PlaneLattice, m_sublattice, perp_basis, phi_lift
from .poset import (
    CubicFamily,
    divisor_family,
    lattice_leq,
    maximal_cubic_under,
    minimal_cubic_over,
)

__version__ = "0.1.0"
