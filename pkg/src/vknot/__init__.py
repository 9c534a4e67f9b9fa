"""Virtual knot invariants and the unknotting index from Gauss diagrams."""

from .gauss import GaussDiagram, emit_gauss_code, parse_gauss_code
from .writhe import PairBound, odd_writhe, writhe_polynomial

__all__ = ["GaussDiagram", "PairBound", "emit_gauss_code", "odd_writhe", "parse_gauss_code", "writhe_polynomial"]
__version__ = "0.1.0"
