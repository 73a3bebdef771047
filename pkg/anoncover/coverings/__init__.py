from anoncover.coverings.morphism import CoveringMap, MorphismReport, bouquet, classify_covering, classify_morphism, \
    compose, covering_from_factorization, fibre_forest_check, identity_covering, search_arc_maps, sheets_of, \
    undirected_covering
from anoncover.coverings.partitions import FibrePartition, coarsest_equitable_partition, equitable_partitions, \
    is_equitable, refine_colors
from anoncover.coverings.quotient import BaseEnumeration, MinimalityResult, admits_covering, block_loop_options, \
    enumerate_bases, is_minimal, partition_to_base
from anoncover.coverings.oracle import brute_force_base_oracle
