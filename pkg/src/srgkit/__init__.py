"""Feasible parameters, constructions and star-complement reconstruction
for strongly regular graphs."""

from .errors import DomainError, NotInScope, NotPSD, NotZeroOne, ParseError, Singular
from .exactmat import BitMatrix, ExactMatrix, det, gram, inverse, psd_check
from .graphs import Graph, SrgCertificate, decode_graph6, encode_graph6, verify_srg
from .params import (
    DerivedParams,
    FeasibilityVerdict,
    ParamTriple,
    Status,
    algebraic_family,
    derive,
    feasibility,
    feasible_c_list,
    n_bounds,
    scan,
)

__version__ = "0.1.0"
