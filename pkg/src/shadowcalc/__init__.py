"""shadowcalc: exact combinatorial calculus for decorated-graph 2-skeleta
of 4-manifolds with low connected complexity."""

__version__ = "0.1.0"

from .catalog import Catalog, Parity, get_catalog, load_catalog, set_catalog
from .graph import DecoratedGraph, ParseError, Violation, parse_graph, serialize_graph, validate_graph
from .halfint import HalfInteger
from .regions import Region, connected_complexity, reconstruct_regions
from .linalg import H1Group, IntMatrix, cokernel, kernel_basis, smith_normal_form
from .invariants import h2_lattice, intersection_form, invariants_report, is_spin
from .plumbing import (BoundaryVerdict, PlumbingLine, apply_plumbing_move, lemma_case,
                       plumbing_det, reduce_plumbing)
from .dehn import FillingVerdict, Slope, borromean_surgery_yields, filling_yields, h1_filling
from .cusps import CuspLattice, cusp_lattice, short_slopes, shortest_levels, square_cusp_slope_sets
from .blocks import (Assembly, Block, assemble, block_catalog, chi_sigma, connected_sum,
                     enumerate_assemblies, parse_assembly, shadow_of_double)
from .presentations import (Presentation, cstar_upper_bound, deficiency, family,
                            chi_of_boundary_thickening, stabilize)
from .boundary import (BranchTorsion, Segment, TreeWithLevels, branch_torsion,
                       branch_torsion_line, extract_plumbing, fiber_pieces, validate_tree)

__all__ = [name for name in dir() if not name.startswith("_")]
