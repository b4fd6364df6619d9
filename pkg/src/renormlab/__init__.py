"""Combinatorics and numerics of real quadratic renormalization."""
from .errors import *  # noqa: F401,F403
from .core import fixed_points, iterate, multiplier, periodic_orbit, real_intervals
from .shuffle import (
    CHI, CHI_PRIME, GAMMA, GAMMA_PRIME, ReturnHom, Shuffle, SignedSemigroup, compare_itineraries,
    is_admissible, is_shuffle, parse_cycle, shuffle_from_kneading, shuffle_of_center, sigma3_n,
    star_product, validate_shuffle,
)
from .sequence import Cascade, ReturnTypeSequence, goes_through_twice, sigma3_sequence, two_cascades
from .solver import (
    center_from_kneading, center_of_shuffle, centers_sigma3, inner_class_real, kneading_at, root_of_copy,
)
from .nest import (
    PrincipalNest, build_nest, c_of_end, compact_coords, detect_cascades, end_of, essential_period,
    essentially_equivalent, insert_neglectable, return_type_sequence, sequence_of_shuffle, truncate,
)
from .renorm import RenormGerm, detect_renormalizable, first_return_map, renorm_orbit, renormalize
from .fatou import (
    converge1_check, detect_parabolic, douady_chart, fatou_coordinate, parabolic_pair,
    parabolic_renormalization, parabolic_renormalize_eval,
)
from .render import RenderConfig, read_pgm, render, write_pgm

__version__ = "0.1.0"
