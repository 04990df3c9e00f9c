"""Exact automorphism-group solvers for circulant graphs.

Three routes: prime order (multiplier stabilizer or the full symmetric
group), an order with two distinct prime factors (wreath, CRT-product or
holomorph answers), and general square-free order (a generating set grown
from coordinate groups, merged symmetric parts and block-local extensions).

Soundness is unconditional: every generator the square-free solver emits is
individually checked to preserve adjacency before insertion, so the
generated group is always a subgroup of Aut(X). Completeness is validated by
the brute-force oracle in the acceptance suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import UnsupportedOrder
from .graphs import CirculantGraph, subgroup_induced
from .oracle import DEFAULT_BUDGET, SearchBudget, brute_force_aut
from .permgroup import (
    DirectProduct,
    GeneratedBy,
    GroupDescription,
    HolomorphSubgroup,
    PermGroup,
    Permutation,
    Symmetric,
    Wreath,
    affine,
    cyclic_block_systems,
    group_equal,
    realize,
)
from .zmod import (
    UnitSubgroup,
    crt_combine,
    intersect_subgroups,
    multiplier_stabilizer,
    subgroup_generated,
)


def _require_plain(X: CirculantGraph):
    if X.directed or X.connection.is_coloured:
        raise ValueError("exact solvers accept undirected, uncoloured graphs only")


def _adjacency_checker(X: CirculantGraph):
    """Fast closure testing whether an image tuple preserves adjacency.

    Mapping every edge to an edge suffices: a bijection that maps the edge
    set into itself maps it onto itself.
    """
    n = X.n
    sset = frozenset(X.elements)

    def preserves(images) -> bool:
        for i in range(n):
            vi = images[i]
            for s in sset:
                if (images[(i + s) % n] - vi) % n not in sset:
                    return False
        return True

    return preserves


# ---------------------------------------------------------------------------
# Prime order


def aut_prime(X: CirculantGraph) -> GroupDescription:
    """Aut of a prime-order circulant: the full symmetric group for the empty
    and complete graphs, otherwise the affine maps T_{a,b} whose multiplier
    fixes S. The multiplier stabilizer is the largest subgroup of which S is
    a union of cosets, and S = -S forces its order even."""
    _require_plain(X)
    if not X.modulus.is_prime:
        raise ValueError(f"order {X.n} is not prime")
    p = X.n
    if len(X.elements) in (0, p - 1):
        return Symmetric(p)
    return HolomorphSubgroup(p, multiplier_stabilizer(X.modulus, X.elements))


# ---------------------------------------------------------------------------
# Two distinct prime factors


def _subgroup_cycle(n: int, member_mod: int, step: int) -> Permutation:
    """The permutation cycling the subgroup {x : x = 0 mod member_mod} by
    +step and fixing every other vertex."""
    return Permutation(
        (x + step) % n if x % member_mod == 0 else x for x in range(n)
    )


def _part_promoted(A: UnitSubgroup, n: int, p: int) -> bool:
    """True when the multipliers fixing the co-factor coordinate act as the
    full unit group on the Z_p coordinate, i.e. the local affine group has
    order p(p-1)."""
    cof = n // p
    return sum(1 for a in A if a % cof == 1) == p - 1


def _cofactor_description(X: CirculantGraph, keep: int, other: int) -> GroupDescription:
    """Aut of the structure induced on the Z_keep coordinate when the other
    coordinate is fully symmetric.

    Two relations constrain it: differences inside the order-keep subgroup
    and differences outside it. Both trivial gives the symmetric group; else
    the affine maps whose multiplier stabilizes both relations.
    """
    n = X.n
    inner = sorted({s % keep for s in X.elements if s % other == 0})
    outer = sorted({s % keep for s in X.elements if s % other != 0} - {0})
    full = set(range(1, keep))
    if set(inner) in (set(), full) and set(outer) in (set(), full):
        return Symmetric(keep)
    stab = intersect_subgroups(
        multiplier_stabilizer(keep, inner), multiplier_stabilizer(keep, outer)
    )
    return HolomorphSubgroup(keep, stab)


def aut_pq(X: CirculantGraph) -> GroupDescription:
    """Aut of a circulant on pq vertices, p < q distinct primes.

    Checks, in order: trivial graphs; the two wreath cases over the cosets
    of the order-q and order-p subgroups (membership of the literal
    subgroup-cycling permutation); the two full-coordinate cases; and the
    holomorph answer when nothing larger applies.
    """
    _require_plain(X)
    factors = X.modulus.prime_factors
    if len(factors) != 2 or any(e != 1 for _, e in factors):
        raise ValueError(f"order {X.n} is not a product of two distinct primes")
    n = X.n
    p, q = factors[0][0], factors[1][0]
    if len(X.elements) in (0, n - 1):
        return Symmetric(n)
    check = _adjacency_checker(X)
    # order-q subgroup is the multiples of p; cycle it by +p
    if check(_subgroup_cycle(n, p, p).images):
        return Wreath(aut_prime(subgroup_induced(X, q)), aut_prime(subgroup_induced(X, p)))
    if check(_subgroup_cycle(n, q, q).images):
        return Wreath(aut_prime(subgroup_induced(X, p)), aut_prime(subgroup_induced(X, q)))
    A = multiplier_stabilizer(X.modulus, X.elements)
    if _part_promoted(A, n, p):
        return DirectProduct(Symmetric(p), _cofactor_description(X, q, p), p)
    if _part_promoted(A, n, q):
        return DirectProduct(_cofactor_description(X, p, q), Symmetric(q), p)
    return HolomorphSubgroup(n, A)


# ---------------------------------------------------------------------------
# Square-free order


def _part_symmetric_gens(n: int, part: int) -> list[Permutation]:
    """Generators of the symmetric group acting on the Z_part CRT coordinate
    and fixing the complementary coordinate."""
    cof = n // part
    gens = []
    if part >= 2:
        swap01 = {0: 1, 1: 0}
        gens.append(
            Permutation(
                crt_combine(n, part, (swap01.get(x % part, x % part), x % cof))
                for x in range(n)
            )
        )
    if part >= 3:
        gens.append(
            Permutation(
                crt_combine(n, part, ((x % part + 1) % part, x % cof))
                for x in range(n)
            )
        )
    return gens


def prime_part_group(X: CirculantGraph, A: UnitSubgroup, p: int) -> PermGroup:
    """The local group on the Z_p coordinate: translations by n/p together
    with the multipliers of A that fix the complementary coordinate;
    promoted to the full symmetric coordinate action when it reaches the
    affine order p(p-1)."""
    n = X.n
    if _part_promoted(A, n, p):
        return PermGroup(n, _part_symmetric_gens(n, p))
    cof = n // p
    local = [a for a in A if a % cof == 1]
    gens = [affine(n, 1, cof)]
    gens.extend(affine(n, a, 0) for a in subgroup_generated(X.modulus, local).generators())
    return PermGroup(n, gens)


def merge_symmetric_primes(X: CirculantGraph, symmetric_primes: list[int]):
    """Partition the fully-promoted primes: two merge when the paired
    transposition swapping n/p_i + k p_i p_j with n/p_j + k p_i p_j for all k
    preserves adjacency; classes are the transitive closure. Returns
    (primes, product) per class, sorted by smallest prime."""
    n = X.n
    check = _adjacency_checker(X)
    parent = {p: p for p in symmetric_primes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ps = sorted(symmetric_primes)
    for i, pi in enumerate(ps):
        for pj in ps[i + 1 :]:
            images = list(range(n))
            block = pi * pj
            for k in range(n // block):
                a = (n // pi + k * block) % n
                b = (n // pj + k * block) % n
                images[a], images[b] = images[b], images[a]
            if check(tuple(images)) and find(pi) != find(pj):
                parent[find(pj)] = find(pi)
    cells: dict[int, list[int]] = {}
    for p in ps:
        cells.setdefault(find(p), []).append(p)
    classes = []
    for root in sorted(cells):
        primes = tuple(sorted(cells[root]))
        classes.append((primes, math.prod(primes)))
    return classes


@dataclass
class SquareFreeWorkspace:
    """Intermediate state of the square-free solver, kept for inspection.

    Every stored group's generators preserve adjacency of the input graph,
    so each one generates a subgroup of Aut(X) at every stage.
    """

    graph: CirculantGraph
    multipliers: UnitSubgroup
    prime_groups: dict[int, PermGroup] = field(default_factory=dict)
    symmetric_primes: list[int] = field(default_factory=list)
    merged_classes: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    divisor_groups: dict[int, PermGroup] = field(default_factory=dict)
    divisor_multipliers: dict[int, UnitSubgroup] = field(default_factory=dict)
    extended_groups: dict[int, PermGroup] = field(default_factory=dict)
    group: PermGroup | None = None


def squarefree_workspace(X: CirculantGraph) -> SquareFreeWorkspace:
    """Run the square-free computation and keep all intermediate groups.

    Steps: multiplier stabilizer; one local group per prime coordinate with
    promotion to the symmetric coordinate action; merging of promoted primes
    via the paired-transposition test; per-divisor groups assembled from
    class intersections and unpromoted locals, extended by the multipliers
    congruent to 1 modulo the co-divisor; finally, for every pair of
    invariant coset partitions (block size k inside block size K), if
    rotating one K-block by n/k point-fixes the rest of the graph, the
    k-divisor group is restricted onto each K-block. Every emitted generator
    is adjacency-verified before insertion, so a wrong restriction can only
    lose completeness, never soundness.
    """
    _require_plain(X)
    mod = X.modulus
    if not mod.is_squarefree or mod.is_prime or mod.n < 6:
        raise ValueError(f"order {mod.n} is not a square-free composite")
    n = X.n
    check = _adjacency_checker(X)
    ws = SquareFreeWorkspace(X, multiplier_stabilizer(mod, X.elements))
    A = ws.multipliers

    for p in mod.primes:
        ws.prime_groups[p] = prime_part_group(X, A, p)
        if _part_promoted(A, n, p):
            ws.symmetric_primes.append(p)

    ws.merged_classes = merge_symmetric_primes(X, ws.symmetric_primes)
    promoted = set(ws.symmetric_primes)

    for m in mod.divisors():
        if m == 1:
            continue
        gens: list[Permutation] = []
        for primes, product in ws.merged_classes:
            shared = math.gcd(product, m)
            if shared > 1:
                gens.extend(_part_symmetric_gens(n, shared))
        for p in mod.primes:
            if m % p == 0 and p not in promoted:
                gens.extend(ws.prime_groups[p].generators)
        ws.divisor_groups[m] = PermGroup(n, gens)
        cof = n // m
        local = tuple(a for a in A if a % cof == 1 % cof)
        ws.divisor_multipliers[m] = UnitSubgroup(mod, local)
        ext = list(gens)
        ext.extend(affine(n, a, 0) for a in subgroup_generated(mod, local).generators())
        ws.extended_groups[m] = PermGroup(n, ext)

    collected: list[Permutation] = list(ws.extended_groups[n].generators)
    have = set(collected)
    sizes = [bs.block_size for bs in cyclic_block_systems(ws.extended_groups[n])]
    for k in sizes:
        if k in (1, n):
            continue
        for big in sizes:
            if big == n or big % k != 0:
                continue
            blocks_mod = n // big
            shift = n // k
            probe = tuple(
                (x + shift) % n if x % blocks_mod == 0 else x for x in range(n)
            )
            if not check(probe):
                continue
            for c in range(blocks_mod):
                for g in ws.extended_groups[k].generators:
                    img = g.images
                    cand = tuple(
                        img[x] if x % blocks_mod == c else x for x in range(n)
                    )
                    if cand not in have and check(cand):
                        perm = Permutation(cand)
                        collected.append(perm)
                        have.add(cand)
    ws.group = PermGroup(n, sorted(collected))
    return ws


def aut_squarefree(X: CirculantGraph) -> GroupDescription:
    """Aut of a square-free composite circulant, as a generating set."""
    ws = squarefree_workspace(X)
    return GeneratedBy(X.n, ws.group.generators)


# ---------------------------------------------------------------------------
# Dispatcher


def aut(X: CirculantGraph, budget: SearchBudget = DEFAULT_BUDGET) -> GroupDescription:
    """Route to the exact solver for the order of X.

    Prime orders use the multiplier answer; two distinct prime factors take
    the structured solver, cross-checked against the square-free one;
    other square-free orders take the square-free solver; anything else
    falls back to the oracle within the vertex budget.
    """
    _require_plain(X)
    n = X.n
    if n == 1:
        return Symmetric(1)
    mod = X.modulus
    if mod.is_prime:
        return aut_prime(X)
    if mod.is_squarefree:
        if len(mod.primes) == 2:
            desc = aut_pq(X)
            cross = aut_squarefree(X)
            if not group_equal(realize(desc), realize(cross)):
                raise RuntimeError(
                    f"internal cross-check failed on {X.text()}: structured and "
                    "square-free answers disagree"
                )
            return desc
        return aut_squarefree(X)
    if n <= budget.max_vertices:
        return GeneratedBy(n, brute_force_aut(X, budget).generators)
    raise UnsupportedOrder(n)
