from .cutcount import (BLUE, GREEN, RED, WHITE, CountStats, DpTable, TreewidthResult,
                       count_nice_triples, sample_isolation_weights, solve_treewidth)
from .decomposition import (FORGET, INTRODUCE_EDGE, INTRODUCE_VERTEX, JOIN, LEAF,
                            ExtendedNiceDecomposition, NiceNode, TreeDecomposition,
                            check_extended_nice, heuristic_decomposition, make_extended_nice,
                            parse_td, read_td, validate_decomposition, write_td)
