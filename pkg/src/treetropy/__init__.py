"""Decide and certify zero topological entropy for periodic tree patterns."""
from .collapse import (BlockStructure, CollapseCertificate, audit_certificate, block_structure,
                       combinatorial_collapse, is_strongly_collapsible, maximal_trivial_structure,
                       trivial_block_divisors)
from .enumeration import (cross_validate, enumerate_patterns, enumerate_star_patterns,
                          verify_theorem_c)
from .errors import *  # noqa: F401,F403
from .explosion import EE2, Custom, NonExpanding, base_pattern, double
from .formats import format_json, format_line, parse_json, parse_line, parse_pattern
from .paths import (PathMatrix, basic_paths, covers, entropy, is_zero_entropy_spectral, opening,
                    path_matrix, spectral_radius)
from .pattern import (IncidenceTree, Pattern, StarClass, StarKind, canonical_form, endpoints,
                      equivalent, incidence_tree, rotate, star_class, tree_path, validate, valence)
from .stars import (bitrev_pattern, central_split, ee2_chain, star_map_zero, star_zero_pattern,
                    zero_possible, zero_possible_relaxed)

__version__ = "0.1.0"
