"""Classification predicates: prime-order edge-transitivity, the connected
2-arc-transitive families, the both-sides-edge-transitive trichotomy, the
gcd certificate for noncyclic regular subgroups, normality of the rotation
subgroup, and the prime-power wreath/Sylow dichotomy.

The predicates are pure pattern matchers. Where a theorem promises a
complete case list, a violation raises instead of mislabelling, so the
acceptance tests falsify a wrong implementation rather than mask it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceeded, ClassificationViolation, DichotomyViolation
from .graphs import CirculantGraph, complement, is_connected, wreath_decomposition
from .oracle import DEFAULT_BUDGET, SearchBudget, brute_force_aut, edge_orbit_count
from .permgroup import rotation
from .zmod import all_unit_subgroups, is_union_of_cosets, multiplier_stabilizer

COMPLETE = "Complete"
COMPLETE_BIPARTITE = "CompleteBipartite"
COMPLETE_BIPARTITE_MINUS_FACTOR = "CompleteBipartiteMinusFactor"
CYCLE = "Cycle"
NOT_TWO_ARC_TRANSITIVE = "NotTwoArcTransitive"


@dataclass(frozen=True)
class TwoArcClass:
    label: str
    detail: str


def edge_transitive_prime(X: CirculantGraph) -> bool:
    """Edge-transitivity on a prime number of vertices: S empty, or S a
    single coset of an even-order subgroup of the units."""
    if X.directed:
        raise ValueError("edge-transitivity predicate expects an undirected graph")
    if not X.modulus.is_prime:
        raise ValueError(f"order {X.n} is not prime")
    s = set(X.elements)
    if not s:
        return True
    for H in all_unit_subgroups(X.modulus):
        if len(H) % 2 == 0 and len(H) == len(s) and is_union_of_cosets(s, H):
            return True
    return False


def two_arc_classify(X: CirculantGraph) -> TwoArcClass:
    """Match X against the connected 2-arc-transitive families.

    Each family has exactly one circulant presentation (the bipartition of a
    complete bipartite circulant is forced onto the even/odd classes, and
    the removable 1-factor is forced onto the half-order difference), so
    set-level matching is complete. Everything else is not 2-arc-transitive.
    """
    if X.directed or X.connection.is_coloured:
        raise ValueError("2-arc classification expects a plain undirected graph")
    n = X.n
    s = set(X.elements)
    if not is_connected(X):
        return TwoArcClass(NOT_TWO_ARC_TRANSITIVE, "not connected")
    if n >= 2 and len(s) == n - 1:
        return TwoArcClass(COMPLETE, "exactly 2-arc-transitive")
    odds = set(range(1, n, 2))
    if n % 2 == 0 and s == odds:
        return TwoArcClass(COMPLETE_BIPARTITE, "exactly 3-arc-transitive")
    if n % 2 == 0 and n >= 10 and (n // 2) % 2 == 1 and s == odds - {n // 2}:
        return TwoArcClass(COMPLETE_BIPARTITE_MINUS_FACTOR, "exactly 2-arc-transitive")
    if n >= 3 and len(s) == 2:
        return TwoArcClass(CYCLE, "k-arc-transitive for every k >= 0")
    return TwoArcClass(NOT_TWO_ARC_TRANSITIVE, "no family matches")


def _is_additive_subgroup(n: int, cell: set[int]) -> bool:
    return 0 in cell and all((a + b) % n in cell for a in cell for b in cell)


def _squares(n: int) -> set[int]:
    return {a * a % n for a in range(1, n)} - {0}


def zhang_classify(X: CirculantGraph, budget: SearchBudget = DEFAULT_BUDGET):
    """When X and its complement are both edge-transitive, name the family:
    disjoint complete graphs, their complement, or a Paley graph. None when
    the hypothesis fails; a hypothesis match outside the three families
    raises, falsifying the classification."""
    if X.directed or X.connection.is_coloured:
        raise ValueError("classification expects a plain undirected graph")
    n = X.n
    if edge_orbit_count(X, budget) != 1:
        return None
    if edge_orbit_count(complement(X), budget) != 1:
        return None
    s = set(X.elements)
    if _is_additive_subgroup(n, s | {0}):
        return "mKn"
    comp = set(range(1, n)) - s
    if _is_additive_subgroup(n, comp | {0}):
        return "complement_mKn"
    if X.modulus.is_prime and n % 4 == 1 and s == _squares(n):
        return "paley"
    raise ClassificationViolation(
        f"{X.text()}: both sides edge-transitive but no known family matches"
    )


def noncyclic_regular_sufficient(X: CirculantGraph):
    """The smallest prime dividing gcd(n, |stabilizer of S in the units|),
    or None when that gcd is 1. A hit certifies a noncyclic regular subgroup
    of Aut(X); None carries no conclusion."""
    if X.directed:
        raise ValueError("predicate expects an undirected graph")
    g = math.gcd(X.n, len(multiplier_stabilizer(X.modulus, X.elements)))
    if g <= 1:
        return None
    p = 2
    while g % p != 0:
        p += 1
    return p


def is_normal_circulant(X: CirculantGraph, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """True iff the rotation subgroup is normal in Aut(X): conjugating the
    rotation by every generator lands back on a rotation power."""
    from .autsolver import aut
    from .permgroup import realize

    group = realize(aut(X, budget))
    n = X.n
    rho = rotation(n)
    rotations = {rotation(n, k).images for k in range(n)}
    for g in group.generators:
        conj = (g.inverse() * rho * g).images
        if conj not in rotations:
            return False
    return True


def prime_power_dichotomy(
    X: CirculantGraph, budget: SearchBudget = DEFAULT_BUDGET
) -> tuple[bool, bool]:
    """(wreath-decomposable, Aut has a normal Sylow p-subgroup) for a
    circulant on p^e vertices; at least one must hold, else this raises.

    Sylow normality is decided by counting elements of p-power order: the
    count equals the Sylow order exactly when the Sylow subgroup is unique.
    """
    if X.directed or X.connection.is_coloured:
        raise ValueError("dichotomy expects a plain undirected graph")
    factors = X.modulus.prime_factors
    if len(factors) != 1 or factors[0][1] < 2:
        raise ValueError(f"order {X.n} is not a proper prime power")
    p = factors[0][0]
    n = X.n
    wreath = any(
        wreath_decomposition(X, d) is not None
        for d in X.modulus.divisors()
        if 1 < d < n
    )
    G = brute_force_aut(X, budget)
    order = G.order()
    if order > budget.max_group_order_for_enumeration:
        raise BudgetExceeded(f"Aut order {order} exceeds enumeration budget")
    sylow = 1
    while order % (sylow * p) == 0:
        sylow *= p
    count = 0
    for el in G.elements_iter(budget.max_group_order_for_enumeration):
        o = _element_order(el)
        while o % p == 0:
            o //= p
        if o == 1:
            count += 1
    normal_sylow = count == sylow
    if not (wreath or normal_sylow):
        raise DichotomyViolation(
            f"{X.text()}: neither wreath-decomposable nor normal Sylow {p}-subgroup"
        )
    return wreath, normal_sylow


def _element_order(images: tuple) -> int:
    n = len(images)
    seen = [False] * n
    out = 1
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = images[j]
            length += 1
        out = math.lcm(out, length)
    return out
