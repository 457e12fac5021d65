"""Exact distance spectra of wheel-like graph families.

The package builds generalized wheels, their multi-apex extensions,
K_{p,p} joined with a cycle and dumbbells of wheels; computes their
distance and distance-Laplacian matrices exactly; certifies spectrum
integrality through exact characteristic polynomials; and reruns the
integrality classifications both as Diophantine sweeps and as
brute-force matrix checks.
"""

from .characterize import TheoremReport, run_theorem
from .errors import (
    DisconnectedGraphError,
    DistSpecError,
    Graph6ParseError,
    InvalidInputError,
    InvalidParameterError,
    NotEquitableError,
)
from .graph6 import emit_graph6, parse_graph6
from .graphs import (
    ExactMatrix,
    Graph,
    build_family,
    complete,
    complete_bipartite,
    cycle,
    distance_laplacian,
    distance_matrix,
    dumbbell,
    egw,
    empty_graph,
    generalized_wheel,
    join,
    kpp_join_cycle,
    transmission,
    union,
)
from .linalg import (
    IntegerRootFactorization,
    IntPolynomial,
    char_poly,
    factor_pairs,
    float_eigenvalues,
    integer_roots,
    is_perfect_square,
    pythagorean_with_leg,
)
from .report import SpectrumReport, read_report, spectrum_report, write_report
from .spectra import (
    CosTerm,
    EquitablePartition,
    Int,
    Spectrum,
    Surd,
    closed_form_spectrum,
    equitable_quotient,
    lemma3_spectrum,
    normalize,
    spectrum_is_integral,
)

__version__ = "0.1.0"
