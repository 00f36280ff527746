"""Exact computations for small Q-polynomial association schemes.

The library classifies partially metric Q-polynomial association schemes
whose first multiplicity is four.  It is organized as a pipeline:

- :mod:`schemeforge.exactnum` — exact arithmetic in Q and Q(sqrt(p))
- :mod:`schemeforge.graphs` — small graphs, generation, locally-H extension
- :mod:`schemeforge.schemes` — scheme axioms, spectra, cosines, Krein data
- :mod:`schemeforge.localclass` — feasible nearest-neighbourhood graphs
- :mod:`schemeforge.diagsearch` — relation-distribution diagram generation
- :mod:`schemeforge.catalogue` — the bundled schemes and the classified pairs
- :mod:`schemeforge.cli` — command-line surface and golden data files
"""

from .exactnum import (
    ExactMatrix,
    ExactPolynomial,
    FieldMismatchError,
    QuadNumber,
    bounded_algebraic_integers,
    char_poly,
    is_psd,
    minimal_polynomial,
    nullspace,
    quad_sqrt,
    rank,
    squarefree_decompose,
)
from .graphs import (
    ExtensionResult,
    Graph,
    enumerate_regular_graphs,
    extend_locally,
    from_graph6,
    identify_graph,
    is_locally,
    named_graph,
    to_graph6,
)
from .schemes import (
    Scheme,
    SchemeRefutation,
    SchemeResult,
    Spectra,
    SplittingFieldError,
    embedding_gram,
    is_light_tail,
    krein_check,
    light_tail_bound,
    nearest_neighbour_relation,
    partially_metric_level,
    q_poly_orderings,
    qpolynomial_spectra,
    scheme_from_graph_distances,
    spectra,
    verify_scheme,
)
from .localclass import (
    ClassifyLocalResult,
    LocalGramProblem,
    LocalSolution,
    classify_local,
    delsarte_bound,
    rank_constraints,
)
from .diagsearch import (
    KISSING_NUMBER_R4,
    CosineColumns,
    DistributionDiagram,
    SearchConfig,
    SearchOutcome,
    SearchResult,
    candidate_radicands,
    generate_diagrams,
    match_known,
)
from .catalogue import CATALOGUE, CLASSIFIED, catalogue_graph, catalogue_scheme

__version__ = "0.1.0"

__all__ = [
    "CATALOGUE",
    "CLASSIFIED",
    "ClassifyLocalResult",
    "CosineColumns",
    "DistributionDiagram",
    "ExactMatrix",
    "ExactPolynomial",
    "ExtensionResult",
    "FieldMismatchError",
    "Graph",
    "KISSING_NUMBER_R4",
    "LocalGramProblem",
    "LocalSolution",
    "QuadNumber",
    "Scheme",
    "SchemeRefutation",
    "SchemeResult",
    "SearchConfig",
    "SearchOutcome",
    "SearchResult",
    "Spectra",
    "SplittingFieldError",
    "bounded_algebraic_integers",
    "candidate_radicands",
    "catalogue_graph",
    "catalogue_scheme",
    "char_poly",
    "classify_local",
    "delsarte_bound",
    "embedding_gram",
    "enumerate_regular_graphs",
    "extend_locally",
    "from_graph6",
    "generate_diagrams",
    "identify_graph",
    "is_light_tail",
    "is_locally",
    "is_psd",
    "krein_check",
    "light_tail_bound",
    "match_known",
    "minimal_polynomial",
    "named_graph",
    "nearest_neighbour_relation",
    "nullspace",
    "partially_metric_level",
    "q_poly_orderings",
    "qpolynomial_spectra",
    "quad_sqrt",
    "rank",
    "rank_constraints",
    "scheme_from_graph_distances",
    "spectra",
    "squarefree_decompose",
    "to_graph6",
    "verify_scheme",
]
