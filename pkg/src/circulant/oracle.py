"""Desk-scale ground truth: brute-force automorphism groups, circulant
isomorphism, CI checks, regular-subgroup enumeration and edge orbits.

The search core is a plain backtracking matcher over vertex images with
forward checking on bitmask candidate sets. Vertices are classed by their
arc-label signature (degree, colour, direction all fold into the labels),
candidates are pruned against every placed vertex, and ties break towards
the smallest index, so results are deterministic.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass

from .errors import BudgetExceeded
from .graphs import CirculantGraph, DenseGraph, new_circulant
from .permgroup import (
    PermGroup,
    Permutation,
    _compose,
    _invert,
    rotation,
)
from .zmod import factorize


@dataclass(frozen=True)
class SearchBudget:
    """Hard limits for the brute-force procedures."""

    max_vertices: int = 32
    max_group_order_for_enumeration: int = 10**6
    time_limit: float | None = None

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_group_order_for_enumeration < 1:
            raise ValueError("budget bounds must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")


DEFAULT_BUDGET = SearchBudget()


def _label_matrix(graph, intern: dict) -> list[list[int]]:
    n = graph.order
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        row = mat[i]
        for j in range(n):
            if i == j:
                continue
            lab = graph.arc_label(i, j)
            row[j] = intern.setdefault(lab, len(intern) + 1)
    return mat


class _Matcher:
    """Finds label-preserving bijections from graph g1 onto graph g2."""

    def __init__(self, g1, g2, budget: SearchBudget = DEFAULT_BUDGET):
        if g1.order != g2.order:
            raise ValueError("matcher needs graphs of equal order")
        if g1.directed != g2.directed:
            raise ValueError("matcher needs graphs of equal directedness")
        self.n = n = g1.order
        self.directed = g1.directed
        intern: dict = {}
        self.m1 = _label_matrix(g1, intern)
        self.m2 = _label_matrix(g2, intern)
        width = len(intern) + 2
        self.msk_out = [[0] * width for _ in range(n)]
        self.msk_in = [[0] * width for _ in range(n)] if self.directed else None
        for w in range(n):
            for y in range(n):
                if w == y:
                    continue
                self.msk_out[w][self.m2[w][y]] |= 1 << y
                if self.directed:
                    self.msk_in[w][self.m2[y][w]] |= 1 << y

        def signature(mat, i):
            row = Counter(mat[i][j] for j in range(n) if j != i)
            if self.directed:
                col = Counter(mat[j][i] for j in range(n) if j != i)
                return (tuple(sorted(row.items())), tuple(sorted(col.items())))
            return tuple(sorted(row.items()))

        sigs: dict = {}
        self.class1 = [sigs.setdefault(signature(self.m1, i), len(sigs)) for i in range(n)]
        class2 = [sigs.setdefault(signature(self.m2, i), len(sigs)) for i in range(n)]
        self.cand0 = [0] * n
        for v in range(n):
            mask = 0
            for w in range(n):
                if class2[w] == self.class1[v]:
                    mask |= 1 << w
            self.cand0[v] = mask
        self._deadline = (
            time.monotonic() + budget.time_limit if budget.time_limit else None
        )
        self._nodes = 0

    def _tick(self):
        self._nodes += 1
        if self._deadline is not None and self._nodes % 1024 == 0:
            if time.monotonic() > self._deadline:
                raise BudgetExceeded("time limit hit during backtracking search")

    def search(self, forced=()) -> tuple | None:
        """First complete mapping extending the forced pairs, or None."""
        n = self.n
        m1 = self.m1
        msk_out = self.msk_out
        msk_in = self.msk_in
        cand = list(self.cand0)
        img = [-1] * n
        state = {"used": 0}

        def place(v, w):
            img[v] = w
            state["used"] |= 1 << w
            row_v = m1[v]
            out_w = msk_out[w]
            keep = ~(1 << w)
            for t in range(n):
                if img[t] >= 0 or t == v:
                    continue
                c = cand[t] & out_w[row_v[t]] & keep
                if msk_in is not None:
                    c &= msk_in[w][m1[t][v]]
                cand[t] = c
                if c == 0:
                    return False
            return True

        for v, w in forced:
            if img[v] == w:
                continue
            if img[v] >= 0 or not (cand[v] >> w) & 1 or (state["used"] >> w) & 1:
                return None
            if not place(v, w):
                return None

        def pick():
            best_v, best_c = -1, None
            for v in range(n):
                if img[v] < 0:
                    c = cand[v].bit_count()
                    if best_c is None or c < best_c:
                        best_v, best_c = v, c
                        if c <= 1:
                            break
            return best_v

        def dfs():
            self._tick()
            v = pick()
            if v < 0:
                return True
            options = cand[v]
            while options:
                bit = options & -options
                options ^= bit
                w = bit.bit_length() - 1
                saved_cand = cand.copy()
                saved_used = state["used"]
                if place(v, w) and dfs():
                    return True
                cand[:] = saved_cand
                img[v] = -1
                state["used"] = saved_used
            return False

        if dfs():
            return tuple(img)
        return None


def _orbit_set(x: int, gens: list[tuple]) -> set[int]:
    seen = {x}
    frontier = [x]
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = g[v]
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    return seen


def brute_force_aut(graph, budget: SearchBudget = DEFAULT_BUDGET) -> PermGroup:
    """Full automorphism group found by backtracking, as a canonical sorted
    generator list.

    Works level by level along a fixed base: for each base point, one search
    per candidate image outside the known orbit. The collected mappings form
    a strong generating set, so large groups (15! and beyond) come out as a
    handful of generators without element enumeration.
    """
    n = graph.order
    if n > budget.max_vertices:
        raise BudgetExceeded(f"{n} vertices exceed budget {budget.max_vertices}")
    if n <= 1:
        return PermGroup(n, ())
    matcher = _Matcher(graph, graph, budget)
    base_seq = sorted(range(n), key=lambda v: (matcher.class1[v], v))
    gens: list[tuple] = []
    prefix: list[int] = []
    for v in base_seq:
        sub = [g for g in gens if all(g[b] == b for b in prefix)]
        orb = _orbit_set(v, sub)
        base_forced = [(b, b) for b in prefix]
        for w in range(n):
            if w == v or w in orb:
                continue
            if not (matcher.cand0[v] >> w) & 1:
                continue
            if any(
                matcher.m1[v][b] != matcher.m1[w][b] or matcher.m1[b][v] != matcher.m1[b][w]
                for b in prefix
            ):
                continue
            res = matcher.search(base_forced + [(v, w)])
            if res is not None:
                gens.append(res)
                sub.append(res)
                orb = _orbit_set(v, sub)
        prefix.append(v)
    return PermGroup(n, sorted(Permutation(g) for g in set(gens)))


def are_isomorphic(X, Y, budget: SearchBudget = DEFAULT_BUDGET):
    """A witness isomorphism X -> Y, or None.

    Circulant pairs try multiplier maps first; everything else (and
    multiplier misses) falls back to the backtracking matcher.
    """
    if X.order != Y.order:
        raise ValueError("isomorphism test needs graphs of equal order")
    n = X.order
    if n > budget.max_vertices:
        raise BudgetExceeded(f"{n} vertices exceed budget {budget.max_vertices}")
    if isinstance(X, CirculantGraph) and isinstance(Y, CirculantGraph):
        if X.directed == Y.directed:
            sx, sy = set(X.elements), set(Y.elements)
            for a in X.modulus.units():
                if {a * s % n for s in sx} != sy:
                    continue
                if X.connection.is_coloured or Y.connection.is_coloured:
                    if not X.connection.is_coloured or not Y.connection.is_coloured:
                        continue
                    if any(
                        X.connection.colour_of(s) != Y.connection.colour_of(a * s % n)
                        for s in sx
                    ):
                        continue
                return Permutation(a * i % n for i in range(n))
    res = _Matcher(X, Y, budget).search()
    return Permutation(res) if res is not None else None


def symmetric_connection_sets(n: int):
    """All S with S = -S and 0 not in S, by bitmask over the inverse pairs."""
    atoms = [(s, n - s) for s in range(1, (n + 1) // 2)]
    if n % 2 == 0 and n >= 2:
        atoms.append((n // 2, n // 2))
    for mask in range(1 << len(atoms)):
        out = set()
        for i, (a, b) in enumerate(atoms):
            if (mask >> i) & 1:
                out.add(a)
                out.add(b)
        yield tuple(sorted(out))


def ci_counterexample(X: CirculantGraph, budget: SearchBudget = DEFAULT_BUDGET):
    """A connection set S' with X(n;S') isomorphic to X but not a multiplier
    image of S, or None when X has the CI property."""
    if X.directed or X.connection.is_coloured:
        raise ValueError("CI check expects a plain undirected graph")
    n = X.n
    if n > budget.max_vertices:
        raise BudgetExceeded(f"{n} vertices exceed budget {budget.max_vertices}")
    s = set(X.elements)
    units = X.modulus.units()
    multiplier_images = {tuple(sorted({a * x % n for x in s})) for a in units}
    for cand in symmetric_connection_sets(n):
        if len(cand) != len(s):
            continue
        if cand in multiplier_images:
            continue
        other = new_circulant(n, cand)
        if are_isomorphic(X, other, budget) is not None:
            return cand
    return None


def is_ci_graph(X: CirculantGraph, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """Exhaustive check of the Cayley-isomorphism property for X."""
    return ci_counterexample(X, budget) is None


def _is_full_cycle(images: tuple) -> bool:
    n = len(images)
    x = 0
    for step in range(1, n):
        x = images[x]
        if x == 0:
            return False
    return images[x] == 0 if n > 1 else True


def ci_via_conjugacy(X: CirculantGraph, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """CI via the n-cycle criterion: all n-cycles of Aut(X) lie in one
    conjugacy class.

    Equivalent to testing pairwise conjugacy, but runs a single pass: the
    class of the rotation is computed once and compared against the set of
    all n-cycles.
    """
    G = brute_force_aut(X, budget)
    n = X.n
    order = G.order()
    if order > budget.max_group_order_for_enumeration:
        raise BudgetExceeded(f"Aut order {order} exceeds enumeration budget")
    rho = rotation(n).images
    rho_class = set()
    cycles = set()
    for x in G.elements_iter(budget.max_group_order_for_enumeration):
        rho_class.add(_compose(_compose(_invert(x), rho), x))
        if _is_full_cycle(x):
            cycles.add(x)
    return cycles <= rho_class


def is_ci_group(n: int) -> tuple[bool, bool]:
    """Muzychuk's arithmetic classification: (DCI, CI) status of Z_n."""
    if n < 1:
        raise ValueError("n must be positive")
    two = 0
    odd = n
    while odd % 2 == 0:
        odd //= 2
        two += 1
    # n in {k, 2k, 4k} with k odd square-free: odd part square-free, 8 does
    # not divide n.
    dci = two <= 2 and factorize(odd).is_squarefree
    ci = dci or n in (8, 9, 18)
    return dci, ci


def _perm_order(images: tuple) -> int:
    n = len(images)
    seen = [False] * n
    out = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = images[j]
            length += 1
        out = math.lcm(out, length)
    return out


_REGULAR_ENUM_CAP = 10**4


def regular_subgroups(G: PermGroup, n: int, budget: SearchBudget = DEFAULT_BUDGET):
    """All order-n subgroups of G acting regularly on 0..n-1, each tagged
    cyclic or not; closure enumeration, capped at tiny scale (order 1e4,
    n <= 12)."""
    if n != G.degree:
        raise ValueError("regular subgroups are sought in the natural action")
    if n > 12:
        raise BudgetExceeded(f"regular-subgroup enumeration capped at n <= 12, got {n}")
    order = G.order()
    if order > _REGULAR_ENUM_CAP:
        raise BudgetExceeded(
            f"group order {order} exceeds subgroup-enumeration cap {_REGULAR_ENUM_CAP}"
        )
    ident = tuple(range(n))
    elements = list(G.elements_iter(budget.max_group_order_for_enumeration))
    fpf = {g for g in elements if g == ident or all(g[i] != i for i in range(n))}
    adds = sorted(
        g
        for g in fpf
        if g != ident
        and n % _perm_order(g) == 0
        and len(factorize(_perm_order(g)).prime_factors) == 1
    )

    def closure(seed):
        out = set(seed)
        frontier = sorted(out)
        while frontier:
            new = []
            current = sorted(out)
            for a in frontier:
                for b in current:
                    c = _compose(a, b)
                    if c not in out:
                        if len(out) >= n or c not in fpf:
                            return None
                        out.add(c)
                        new.append(c)
            frontier = new
        return frozenset(out)

    start = frozenset({ident})
    seen = {start}
    queue = [start]
    found = []
    while queue:
        H = queue.pop(0)
        if len(H) == n:
            if len(_orbit_set(0, list(H))) == n:
                found.append(H)
            continue
        for g in adds:
            if g in H:
                continue
            K = closure(set(H) | {g})
            if K is None or n % len(K) != 0 or K in seen:
                continue
            seen.add(K)
            queue.append(K)
    found = sorted(set(found), key=lambda H: sorted(H))
    out = []
    for H in found:
        cyclic = any(_perm_order(g) == n for g in H)
        out.append((PermGroup(n, sorted(Permutation(g) for g in H)), cyclic))
    return out


def edge_orbit_count(X, budget: SearchBudget = DEFAULT_BUDGET) -> int:
    """Number of Aut(X)-orbits on edges (arcs when directed); 1 means
    edge-transitive, 0 means no edges."""
    G = brute_force_aut(X, budget)
    gens = [g.images for g in G.generators]
    n = X.order
    directed = X.directed
    edges = set()
    for i in range(n):
        for j in range(n):
            if i != j and X.adjacent(i, j):
                edges.add((i, j) if directed or i < j else (j, i))
    count = 0
    left = set(edges)
    while left:
        count += 1
        seed = min(left)
        frontier = [seed]
        left.discard(seed)
        while frontier:
            new = []
            for (a, b) in frontier:
                for g in gens:
                    x, y = g[a], g[b]
                    e = (x, y) if directed or x < y else (y, x)
                    if e in left:
                        left.discard(e)
                        new.append(e)
            frontier = new
    return count


def two_arc_transitive(X, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """Direct orbit computation on 2-arcs (v1, v2, v3): consecutive vertices
    adjacent and v1 != v3. Vacuously true when no 2-arc exists."""
    G = brute_force_aut(X, budget)
    gens = [g.images for g in G.generators]
    n = X.order
    arcs = set()
    for b in range(n):
        outs = [c for c in range(n) if c != b and X.adjacent(b, c)]
        ins = [a for a in range(n) if a != b and X.adjacent(a, b)]
        for a in ins:
            for c in outs:
                if a != c:
                    arcs.add((a, b, c))
    if not arcs:
        return True
    seed = min(arcs)
    seen = {seed}
    frontier = [seed]
    while frontier:
        new = []
        for (a, b, c) in frontier:
            for g in gens:
                t = (g[a], g[b], g[c])
                if t not in seen:
                    seen.add(t)
                    new.append(t)
        frontier = new
    return len(seen) == len(arcs)


# ---------------------------------------------------------------------------
# Noncyclic regular subgroups beyond the enumeration cap: search over Cayley
# representations on the (classified) noncyclic groups of order n <= 12.


def _abstract_closure(mult, gens, ident):
    out = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = mult(a, g)
                if c not in out:
                    out.add(c)
                    new.append(c)
        frontier = new
    return sorted(out)


def _abelian_group(ks):
    rank = len(ks)

    def mult(a, b):
        return tuple((x + y) % k for x, y, k in zip(a, b, ks))

    ident = (0,) * rank
    gens = [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)]
    return _abstract_closure(mult, gens, ident), mult


def _dihedral_group(m):
    def mult(a, b):
        i1, e1 = a
        i2, e2 = b
        return ((i1 + (i2 if e1 == 0 else -i2)) % m, e1 ^ e2)

    ident = (0, 0)
    return _abstract_closure(mult, [(1, 0), (0, 1)], ident), mult


def _dicyclic_group(m):
    """Order 4m: x of order 2m, y with y^2 = x^m and y x y^-1 = x^-1."""
    order_x = 2 * m

    def mult(a, b):
        i1, e1 = a
        i2, e2 = b
        i = (i1 + (i2 if e1 == 0 else -i2) + (m if e1 and e2 else 0)) % order_x
        return (i, e1 ^ e2)

    ident = (0, 0)
    return _abstract_closure(mult, [(1, 0), (0, 1)], ident), mult


def _alternating4_group():
    a = (1, 2, 0, 3)
    b = (1, 0, 3, 2)

    def mult(p, q):
        return tuple(q[v] for v in p)

    return _abstract_closure(mult, [a, b], (0, 1, 2, 3)), mult


def _noncyclic_groups(n: int):
    """The noncyclic groups of order n for n <= 12, as (name, elements, mult)."""
    if n > 12:
        raise BudgetExceeded(f"group classification table stops at 12, got {n}")
    table = {
        4: [("Z2xZ2", _abelian_group((2, 2)))],
        6: [("D3", _dihedral_group(3))],
        8: [
            ("Z4xZ2", _abelian_group((4, 2))),
            ("Z2^3", _abelian_group((2, 2, 2))),
            ("D4", _dihedral_group(4)),
            ("Q8", _dicyclic_group(2)),
        ],
        9: [("Z3xZ3", _abelian_group((3, 3)))],
        10: [("D5", _dihedral_group(5))],
        12: [
            ("Z6xZ2", _abelian_group((6, 2))),
            ("D6", _dihedral_group(6)),
            ("A4", _alternating4_group()),
            ("Dic3", _dicyclic_group(3)),
        ],
    }
    return [(name, pair[0], pair[1]) for name, pair in table.get(n, [])]


def find_noncyclic_regular(X: CirculantGraph, budget: SearchBudget = DEFAULT_BUDGET):
    """A noncyclic regular subgroup of Aut(X), or None.

    Small groups are enumerated outright. When Aut(X) is too large for the
    subgroup cap, the search switches to Cayley representations: X has a
    noncyclic regular subgroup iff it is a Cayley graph of some noncyclic
    group of order n, and the witness is the translated regular action.
    """
    n = X.n
    G = brute_force_aut(X, budget)
    if G.order() <= _REGULAR_ENUM_CAP and n <= 12:
        for H, cyclic in regular_subgroups(G, n, budget):
            if not cyclic:
                return H
        return None
    target_degree = len(X.elements)
    for _name, elements, mult in _noncyclic_groups(n):
        index = {g: i for i, g in enumerate(elements)}
        ident = next(g for g in elements if mult(g, g) == g)
        inverse = {}
        for g in elements:
            for h in elements:
                if mult(g, h) == ident:
                    inverse[g] = h
        nonid = [g for g in elements if g != ident]
        pairs = []
        seen = set()
        for g in nonid:
            if g in seen:
                continue
            seen.add(g)
            seen.add(inverse[g])
            pairs.append((g, inverse[g]))
        for mask in range(1 << len(pairs)):
            conn = set()
            for i, (g, h) in enumerate(pairs):
                if (mask >> i) & 1:
                    conn.add(g)
                    conn.add(h)
            if len(conn) != target_degree:
                continue
            rows = [0] * n
            for i, g in enumerate(elements):
                for c in conn:
                    rows[i] |= 1 << index[mult(g, c)]
            cay = DenseGraph(n, tuple(rows))
            res = _Matcher(cay, X, budget).search()
            if res is None:
                continue
            phi = res
            phi_inv = _invert(phi)
            gens = []
            for g in nonid:
                trans = tuple(index[mult(x, g)] for x in elements)
                gens.append(Permutation(_compose(_compose(phi_inv, trans), phi)))
            H = PermGroup(n, sorted(set(gens)))
            return H
    return None
