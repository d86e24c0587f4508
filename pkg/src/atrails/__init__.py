"""A-trails (non-crossing Eulerian circuits) on torus and composite grids."""

from .checkerboard import (BLUE, RED, CheckerboardColoring, NotColorable, atrail_from_covering_tree,
                           checkerboard_color, color_graph, covering_tree_atrails, parity_precheck,
                           smoothing_system)
from .composite import (CertifiedUnknot, CompositeGraph, Gluing, NotCertified, certify_unknot,
                        chain_gluings, chain_with_systems, connected_sum, decompose, glue,
                        triangular_composite_dichotomy)
from .constructions import (diagonal_system, find_one_vertex_decoration, rect_unknotted_atrail,
                            shifted_system, triangular_atrail)
from .errors import AtrailError, BudgetExceeded, InvalidInput
from .grids import (AltshulerParams, OneVertexParams, RectParams, altshuler, is_sah, one_vertex_grid,
                    rect_grid)
from .links import TorusKnot, TorusLink, TrivialLink, Unclassified, Unknot, classify
from .surface import EmbeddedGraph, Layout
from .transitions import (TransitionSystem, enumerate_atrails, find_atrail, is_atrail, system_from_bits,
                          trace)

__version__ = "0.1.0"

__all__ = [
    "BLUE", "RED", "CheckerboardColoring", "NotColorable", "atrail_from_covering_tree",
    "checkerboard_color", "color_graph", "covering_tree_atrails", "parity_precheck",
    "smoothing_system", "CertifiedUnknot", "CompositeGraph", "Gluing", "NotCertified",
    "certify_unknot", "chain_gluings", "chain_with_systems", "connected_sum", "decompose", "glue",
    "triangular_composite_dichotomy", "diagonal_system", "find_one_vertex_decoration",
    "rect_unknotted_atrail", "shifted_system", "triangular_atrail", "AtrailError", "BudgetExceeded",
    "InvalidInput", "AltshulerParams", "OneVertexParams", "RectParams", "altshuler", "is_sah",
    "one_vertex_grid", "rect_grid", "TorusKnot", "TorusLink", "TrivialLink", "Unclassified",
    "Unknot", "classify", "EmbeddedGraph", "Layout", "TransitionSystem", "enumerate_atrails",
    "find_atrail", "is_atrail", "system_from_bits", "trace", "__version__",
]
