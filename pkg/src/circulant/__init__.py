"""Automorphism groups of circulant graphs: exact solvers for prime, two-prime
and square-free orders, a brute-force oracle, and classification predicates."""

from .errors import (
    BudgetExceeded,
    CirculantError,
    ClassificationViolation,
    DichotomyViolation,
    NonUnitError,
    RangeViolation,
    SymmetryViolation,
    UnsupportedOrder,
)
from .zmod import (
    Modulus,
    UnitSubgroup,
    all_unit_subgroups,
    crt_combine,
    crt_split,
    factorize,
    is_union_of_cosets,
    multiplier_stabilizer,
    subgroup_generated,
)
from .graphs import (
    CirculantGraph,
    ConnectionSet,
    DenseGraph,
    complement,
    is_connected,
    new_circulant,
    parse_graph_text,
    subgroup_induced,
    wreath_decomposition,
    wreath_graph,
)
from .permgroup import (
    BlockSystem,
    DirectProduct,
    GeneratedBy,
    GroupDescription,
    HolomorphSubgroup,
    PermGroup,
    Permutation,
    Symmetric,
    Wreath,
    affine,
    are_conjugate,
    cyclic_block_systems,
    direct_product_crt,
    group_equal,
    identity,
    is_primitive,
    minimal_blocks,
    realize,
    reflection,
    rotation,
    symbolic_order,
    wreath_group,
)
from .oracle import (
    DEFAULT_BUDGET,
    SearchBudget,
    are_isomorphic,
    brute_force_aut,
    ci_counterexample,
    ci_via_conjugacy,
    edge_orbit_count,
    find_noncyclic_regular,
    is_ci_graph,
    is_ci_group,
    regular_subgroups,
    symmetric_connection_sets,
    two_arc_transitive,
)
from .autsolver import (
    SquareFreeWorkspace,
    aut,
    aut_pq,
    aut_prime,
    aut_squarefree,
    merge_symmetric_primes,
    prime_part_group,
    squarefree_workspace,
)
from .classify import (
    TwoArcClass,
    edge_transitive_prime,
    is_normal_circulant,
    noncyclic_regular_sufficient,
    prime_power_dichotomy,
    two_arc_classify,
    zhang_classify,
)

__version__ = "0.1.0"
