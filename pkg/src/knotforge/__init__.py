"""Knot and link polynomials, periodicity criteria, geometric knot
generators and the skein module of the solid torus."""

from .polyring import LaurentPoly, mono, const
from .diagram import BraidWord, PlanarDiagram, braid_closure, torus_braid, load_knot
from .bracket import kauffman_bracket, jones
from .skein import homflypt, kauffman_F, dubrovnik_Fstar, alexander, burau_alexander
from .periodicity import period_report
from .geomknots import LissajousSpec, BilliardSpec, lissajous_diagram, billiard_prism_diagram
from .kbsm import AnnularElement, annulus_bracket

__all__ = [
    "LaurentPoly", "mono", "const",
    "BraidWord", "PlanarDiagram", "braid_closure", "torus_braid", "load_knot",
    "kauffman_bracket", "jones",
    "homflypt", "kauffman_F", "dubrovnik_Fstar", "alexander", "burau_alexander",
    "period_report",
    "LissajousSpec", "BilliardSpec", "lissajous_diagram", "billiard_prism_diagram",
    "AnnularElement", "annulus_bracket",
]
