"""Exact and numeric tools for polynomial zero loci and their linear preservers."""
from .errors import PreserverLabError
from .scalar import QQi, I, rationalize
from .poly import Poly1, Poly2, PolyN, all_roots
from .domains import INF, Mobius, CircularDomain, classify_domain, named_domain
from .classify import (is_hyperbolic, is_stable1, is_domain_stable1,
                       pencil_relation, hb_split, szasz_bound)
from .operators import LinearOperator, MultiplierSeq, DiffOpForm, symbol, range_analysis
from .stab2 import decide, certify, falsify, gen_real_stable
from .preservers import (PreserverReport, finitehyp_classify, finitehypC_classify,
                         finitestab_classify, circular_classify, boundary_classify,
                         algebraic_sweep, transcendental_probe, multiplier_test,
                         counterexample_search)

__version__ = "0.1.0"
