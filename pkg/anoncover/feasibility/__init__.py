from anoncover.feasibility.counterexample import CounterexampleReport, PairVerification, counterexample_search, \
    verify_counterexample_pair
from anoncover.feasibility.generation import graphs_with_degree_sequence, regular_graphs
from anoncover.feasibility.verdicts import FeasibilityVerdict, Witness, spanning_tree_feasible, \
    topology_recognition_feasible
from anoncover.feasibility.yk import YKResult, share_degree_refinement, yk_sufficient_condition
