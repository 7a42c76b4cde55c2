"""Tree independence number toolkit.

Exact tree-alpha over elimination orderings, induced-pattern detection
(walls, multiclaws, line graphs), constructive Ramsey extraction,
covering of shared vertex sets, b-system dichotomies and loose
alpha-separability, balanced-separator decomposition construction, and
an exact MWIS solver over decompositions.
"""

from .bounds import (BoundsTable, assembly_bound, beta, dichotomy_constants,
                     f as f_recursion, packing_domination_bound, twograph_bound)
from .covering import (CoverWitness, SharedVertexGraphs, cover_many, cover_two,
                       exchange_neighborhoods, optimal_cover_oracle)
from .decomp import (TreeDecomposition, WeightFunction, build_decomposition,
                     decomposition_alpha, dominant_set_system, exact_tree_alpha,
                     exact_treewidth, fplus_packing_reduction,
                     is_balanced_separator, separator_dominated_search,
                     ta_pipeline, validate)
from .errors import (CapExceeded, ContractBreach, FormatError,
                     HypothesisViolation, TreeAlphaError)
from .formats import from_graph6, load_graph, save_graph, to_graph6
from .graphs import (Graph, Path, alpha, anticomplete, components,
                     from_edge_list_text, make_path, max_stable_set,
                     to_edge_list_text, xy_paths)
from .patterns import (PatternSpec, contains_induced,
                       contains_line_of_wall_subdivision, figure_multiclaw,
                       line_graph, parse_pattern, realize, wall)
from .ramsey import (ProductColoring, SubsetColoring, mono_product,
                     mono_subset, product_threshold, subset_threshold)
from .solver import mwis_bruteforce, mwis_over_decomposition
from .systems import (BSystem, DichotomyVerdict, SeparabilityVerdict,
                      disentangle, force_ends, hit_vs_anti, hit_vs_far,
                      loose_separability_check, max_anticomplete_subsystem,
                      min_alpha_hitting_set, path_hitting_set, truncate_paths)

__version__ = "0.1.0"
