"""Focal-free uniform hypergraphs and codes: detection, bounds, constructions and exact search."""

__version__ = "0.1.0"

from .core import QaryCode, UniformFamily, lambda_of, threshold_t  # noqa: E402
from .focal import FocalWitness, find_focal, is_focal_free  # noqa: E402
from .matching import m_resolve  # noqa: E402
from .bounds import code_bounds, hypergraph_bounds  # noqa: E402
from .search import exact_f, exact_f_code  # noqa: E402

__all__ = [
    "__version__",
    "QaryCode",
    "UniformFamily",
    "threshold_t",
    "lambda_of",
    "FocalWitness",
    "find_focal",
    "is_focal_free",
    "m_resolve",
    "hypergraph_bounds",
    "code_bounds",
    "exact_f",
    "exact_f_code",
]
