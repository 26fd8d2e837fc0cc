"""Khovanov homology from planar diagrams, with combinatorial flow-category checks."""

from .cube import resolve, surgery
from .decorated import decorated_configs, interval_boundary, khovanov_skeleton
from .errors import *  # noqa: F401,F403
from .flow import (
    FlowCategorySkeleton,
    cube_flow_category,
    d_squared_from_boundary,
    face_poset,
    floer_complex,
    verify_face_axioms,
)
from .homology import HomologyTable, graded_euler, homology, jones, khovanov_homology
from .kauffman import kauffman_bracket, kauffman_jones
from .khcomplex import differential, generators
from .laurent import LaurentPolynomial
from .pd import LinkDiagram, mirror, parse_pd, permute_crossings, serialize
from .snf import smith_normal_form

__version__ = "0.1.0"
