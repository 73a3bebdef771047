from anoncover.lifts.canonical import CanonicalForm, Isomorphism, canonical_form, is_isomorphic
from anoncover.lifts.reidemeister import PermAssignment, bfs_spanning_tree, cotree_representatives, perm_from_cycles, \
    reidemeister_lift
from anoncover.lifts.enumerate import LiftClass, LiftEnumeration, enumerate_lifts, n_assignments, \
    unique_simple_connected_lift
