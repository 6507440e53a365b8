"""Prime edge-sum labelings of bipartite graphs."""

from .apsearch import (APCache, PrimeAP, SearchBudget, SearchExhausted, find_ap,
                       find_ap_with_p_gt_d, validate_ap)
from .errors import InvalidArgumentError, ParseError, PrimeLabelError, ResourceLimitError
from .graph import (Coloring, Graph, HypercubeEmbedding, OddCycle, bipartition,
                    check_certificate, complete_bipartite, embed_hypercube, hypercube,
                    parse_edge_list, serialize_edge_list)
from .labeling import (ConstructionPlan, Labeling, Report, construct_labeling,
                       plan_construction, restrict_to_subgraph, verify_labeling)
from .oracle import (BudgetExhausted, Found, Infeasible, brute_force_label,
                     check_paths_prime, enumerate_hamiltonian_paths)
from .primes import PrimeTable, is_prime, primorial, sieve

__version__ = "0.1.0"
