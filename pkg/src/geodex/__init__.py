"""geodex: exact index iteration and Morse-theory audits for closed
geodesics on spheres.

The engine works from block descriptors of linearized return maps.  It
evaluates iterated Morse indices and nullities exactly, produces the
loop-space Betti ladders, checks the Morse inequalities and the mean-index
identity, and searches for / verifies common-index-jump certificates along
with the counting arguments built on them.
"""

__version__ = "0.1.0"

from .errors import (CertificateError, ContradictionError, DegenerateError,
                     GeodexError, InputError, PrecisionError, SearchExhausted,
                     WindowError)
from .scalars import (BoundedReal, as_fraction, ceil_int, floor_int,
                      format_rational, frac_part, is_noninteger,
                      simplest_rational_between)
from .symplectic import (BlockFamily, Block2x2, NormalFormDescriptor,
                         RotationNumber, SymplecticMatrix, assemble_descriptor,
                         check_symplectic, classify_2x2, descriptor_consistent,
                         elliptic_height, hyperbolic_block, identity_block,
                         rotation_block, shear_block, symplectic_direct_sum,
                         twisted_block)
from .iteration import (GeodesicRecord, bott_deviation_bound, index_at,
                        index_parity_class, index_table, mean_index,
                        nullity_at, splitting_number_at_one)
from .homology import (BettiLadder, alternating_betti_sum, betti,
                       mean_index_constant, poincare_series_coeffs)
from .morse import (CurvatureAssumption, IdentityReport, MorseWindow,
                    SphereConfiguration, avg_chi, avg_chi_partial,
                    check_mean_index_identity, check_morse_inequalities,
                    critical_module_dim, euler_chi, morse_counts)
from .jump import (JumpCertificate, check_alternating_morse_sum,
                   check_prejump_gap, check_weighted_euler_sum,
                   find_common_jump, find_top_degree_witness,
                   forced_ellipticity, replay_proof, validate_certificate,
                   verify_jump)
from .config import (parse_certificate, parse_config, parse_config_document,
                     serialize_certificate, serialize_config)
