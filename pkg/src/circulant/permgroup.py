"""Permutation groups on 0..n-1: composition, deterministic stabilizer
chains (exact order and membership), orbits, block systems, wreath and CRT
products, and realisation of symbolic group descriptions.

Nothing here is randomised. The chain picks its base points by a fixed rule
(smallest moved point of the first generator that lands on a level) and all
iteration orders are sorted, so orders, generator lists and serialisations
are reproducible byte for byte.
"""

from __future__ import annotations

import math
import threading
from collections import deque
from dataclasses import dataclass

from .errors import BudgetExceeded, NonUnitError
from .zmod import UnitSubgroup, as_modulus, crt_combine, factorize


def _compose(p: tuple, q: tuple) -> tuple:
    """Apply p, then q."""
    return tuple(q[v] for v in p)


def _invert(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


class Permutation:
    """A bijection on {0,...,n-1} stored in image form."""

    __slots__ = ("images",)

    def __init__(self, images):
        imgs = tuple(int(v) for v in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {imgs}")
        self.images = imgs

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """self followed by other."""
        return Permutation(_compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(_invert(self.images))

    def __pow__(self, k: int) -> "Permutation":
        base = self.images if k >= 0 else _invert(self.images)
        k = abs(k)
        out = tuple(range(len(base)))
        while k:
            if k & 1:
                out = _compose(out, base)
            base = _compose(base, base)
            k >>= 1
        return Permutation(out)

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                seen.add(i)
                continue
            cyc = [i]
            j = self.images[i]
            seen.add(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def fixed_points(self) -> list[int]:
        return [i for i, v in enumerate(self.images) if i == v]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cycs = self.cycles()
        if not cycs:
            return f"Permutation(id, n={self.degree})"
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)
        return f"Permutation({body}, n={self.degree})"


def identity(n: int) -> Permutation:
    return Permutation(range(n))


def rotation(n: int, k: int = 1) -> Permutation:
    """The map i -> i + k mod n."""
    return Permutation((i + k) % n for i in range(n))


def reflection(n: int) -> Permutation:
    """The map i -> -i mod n."""
    return Permutation((-i) % n for i in range(n))


def affine(n: int, a: int, b: int) -> Permutation:
    """The map i -> a*i + b mod n for a unit a."""
    a %= n if n > 1 else 1
    if n > 1 and math.gcd(a, n) != 1:
        raise NonUnitError(a, n)
    return Permutation((a * i + b) % n for i in range(n))


class _Level:
    __slots__ = ("point", "gens", "transversal", "processed")

    def __init__(self, point, ident):
        self.point = point
        self.gens = []
        self.transversal = {point: ident}
        self.processed = set()


def _schreier_sims(degree: int, gens: list[tuple]) -> list[_Level]:
    """Deterministic incremental Schreier-Sims over image tuples.

    Level i stabilizes the base points of levels 0..i-1, so its acting
    generator set is every generator stored at level i or deeper: deeper
    generators fix the base point but still extend its orbit. Transversal
    entries are never rewritten once set, which keeps already-processed
    Schreier generators valid as orbits grow.
    """
    ident = tuple(range(degree))
    levels: list[_Level] = []

    def effective_gens(i):
        out = []
        for j in range(i, len(levels)):
            out.extend(levels[j].gens)
        return out

    def sift_from(idx, g):
        while idx < len(levels):
            lvl = levels[idx]
            rep = lvl.transversal.get(g[lvl.point])
            if rep is None:
                return idx, g
            g = _compose(g, _invert(rep))
            idx += 1
        return idx, g

    queue = deque((0, g) for g in gens)

    def extend_and_close(i):
        lvl = levels[i]
        acting = effective_gens(i)
        frontier = sorted(lvl.transversal)
        while frontier:
            new = []
            for x in frontier:
                tx = lvl.transversal[x]
                for g in acting:
                    y = g[x]
                    if y not in lvl.transversal:
                        lvl.transversal[y] = _compose(tx, g)
                        new.append(y)
            frontier = sorted(new)
        for x in sorted(lvl.transversal):
            tx = lvl.transversal[x]
            for g in acting:
                key = (x, g)
                if key in lvl.processed:
                    continue
                lvl.processed.add(key)
                u = _compose(_compose(tx, g), _invert(lvl.transversal[g[x]]))
                if u != ident:
                    queue.append((i + 1, u))

    while queue:
        idx, g = queue.popleft()
        idx, g = sift_from(idx, g)
        if g == ident:
            continue
        if idx == len(levels):
            point = min(i for i, v in enumerate(g) if v != i)
            levels.append(_Level(point, ident))
        levels[idx].gens.append(g)
        for i in range(idx + 1):
            extend_and_close(i)
    return levels


class PermGroup:
    """Group generated by permutations, with a lazily built stabilizer chain.

    The chain is built once behind a lock; afterwards every query is
    read-only, so instances may be shared across threads.
    """

    def __init__(self, degree: int, generators=()):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != group degree {degree}")
            if g.is_identity or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._chain = None
        self._lock = threading.Lock()

    def _levels(self) -> list[_Level]:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = _schreier_sims(
                        self.degree, [g.images for g in self.generators]
                    )
        return self._chain

    def order(self) -> int:
        out = 1
        for lvl in self._levels():
            out *= len(lvl.transversal)
        return out

    def base(self) -> list[int]:
        return [lvl.point for lvl in self._levels()]

    def _sift(self, images: tuple):
        g = images
        for lvl in self._levels():
            rep = lvl.transversal.get(g[lvl.point])
            if rep is None:
                return g
            g = _compose(g, _invert(rep))
        return g

    def contains(self, perm) -> bool:
        images = perm.images if isinstance(perm, Permutation) else tuple(perm)
        if len(images) != self.degree:
            raise ValueError("degree mismatch")
        return self._sift(images) == tuple(range(self.degree))

    def __contains__(self, perm) -> bool:
        return self.contains(perm)

    def orbit(self, x: int) -> list[int]:
        seen = {x}
        frontier = [x]
        gens = [g.images for g in self.generators]
        while frontier:
            new = []
            for v in frontier:
                for g in gens:
                    w = g[v]
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
            frontier = new
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        left = set(range(self.degree))
        out = []
        while left:
            orb = self.orbit(min(left))
            out.append(orb)
            left -= set(orb)
        return out

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def elements_iter(self, max_size: int = 10**6):
        """All elements as image tuples, deterministically ordered."""
        if self.order() > max_size:
            raise BudgetExceeded(
                f"group order {self.order()} exceeds enumeration bound {max_size}"
            )
        levels = self._levels()
        ident = tuple(range(self.degree))

        def rec(i):
            if i == len(levels):
                yield ident
                return
            lvl = levels[i]
            for pt in sorted(lvl.transversal):
                rep = lvl.transversal[pt]
                for rest in rec(i + 1):
                    yield _compose(rest, rep)

        yield from rec(0)

    def elements(self, max_size: int = 10**6) -> list[Permutation]:
        return [Permutation(t) for t in self.elements_iter(max_size)]

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"


def group_equal(a: PermGroup, b: PermGroup) -> bool:
    """Equal orders plus mutual generator membership."""
    if a.degree != b.degree:
        return False
    if a.order() != b.order():
        return False
    return all(b.contains(g) for g in a.generators) and all(
        a.contains(g) for g in b.generators
    )


@dataclass(frozen=True)
class BlockSystem:
    """A partition of 0..n-1 into equal-size cells respected by a group."""

    degree: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def is_trivial(self) -> bool:
        return self.block_size in (1, self.degree)

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)


def minimal_blocks(group: PermGroup, seed: tuple[int, int]) -> BlockSystem:
    """Finest block system whose block containing seed[0] also contains
    seed[1]; classical union-find refinement over the generators."""
    if not group.is_transitive():
        raise ValueError("minimal_blocks needs a transitive group")
    n = group.degree
    a, b = seed
    if not (0 <= a < n and 0 <= b < n) or a == b:
        raise ValueError(f"seed must be two distinct points, got {seed}")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = [g.images for g in group.generators]
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        for g in gens:
            queue.append((g[x], g[y]))
    cells = {}
    for v in range(n):
        cells.setdefault(find(v), []).append(v)
    blocks = tuple(tuple(sorted(c)) for c in sorted(cells.values(), key=min))
    sizes = {len(c) for c in blocks}
    if len(sizes) != 1:
        raise RuntimeError("block refinement produced unequal cells")
    return BlockSystem(n, blocks)


def coset_partition(n: int, k: int) -> BlockSystem:
    """The partition of Z_n into the n/k cosets of the order-k subgroup."""
    m = n // k
    blocks = tuple(tuple(range(c, n, m)) for c in range(m))
    return BlockSystem(n, blocks)


def cyclic_block_systems(group: PermGroup) -> list[BlockSystem]:
    """All invariant coset partitions, one per divisor of n that works.

    For groups containing the full rotation these are exactly the complete
    block systems, since blocks of such groups correspond to subgroups of
    Z_n. The rotation is required and checked.
    """
    n = group.degree
    if not group.contains(rotation(n)):
        raise ValueError("cyclic_block_systems needs the rotation in the group")
    gens = [g.images for g in group.generators]
    out = []
    for k in factorize(n).divisors():
        m = n // k
        ok = True
        for g in gens:
            for c in range(m):
                imgs = {g[x] % m for x in range(c, n, m)}
                if len(imgs) != 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(coset_partition(n, k))
    return out


def is_primitive(group: PermGroup) -> bool:
    """True iff every minimal block system over seeds (0, v) is trivial."""
    if not group.is_transitive():
        raise ValueError("primitivity is defined for transitive groups")
    n = group.degree
    if n <= 2:
        return True
    for v in range(1, n):
        if minimal_blocks(group, (0, v)).block_size != n:
            return False
    return True


def wreath_group(top: PermGroup, bottom: PermGroup) -> PermGroup:
    """Wreath product acting on pairs (u, v) at index u*|V| + v.

    Generated by lifts of the top group (carrying whole fibres along) and by
    the bottom group acting on each fibre separately; emitting every fibre
    keeps the order |H| * |K|^|U| exact even for intransitive tops.
    """
    nu, nv = top.degree, bottom.degree
    n = nu * nv
    gens = []
    for h in top.generators:
        gens.append(Permutation(h(i // nv) * nv + (i % nv) for i in range(n)))
    for u0 in range(nu):
        for k in bottom.generators:
            gens.append(
                Permutation(
                    (i // nv) * nv + (k(i % nv) if i // nv == u0 else i % nv)
                    for i in range(n)
                )
            )
    return PermGroup(n, gens)


def direct_product_crt(left: PermGroup, right: PermGroup) -> PermGroup:
    """Coordinate-wise product on Z_n through the CRT split n = m * (n/m)."""
    m, r = left.degree, right.degree
    if math.gcd(m, r) != 1:
        raise ValueError(f"direct product needs coprime degrees, got {m}, {r}")
    n = m * r
    mod = factorize(n)
    gens = []
    for h in left.generators:
        gens.append(Permutation(crt_combine(mod, m, (h(x % m), x % r)) for x in range(n)))
    for k in right.generators:
        gens.append(Permutation(crt_combine(mod, m, (x % m, k(x % r))) for x in range(n)))
    return PermGroup(n, gens)


def are_conjugate(group: PermGroup, g: Permutation, h: Permutation, max_order: int = 10**6) -> bool:
    """Existence of x in the group with x g x^-1 = h, by full enumeration."""
    if group.order() > max_order:
        raise BudgetExceeded(
            f"conjugacy search needs enumeration of {group.order()} elements"
        )
    gi, hi = g.images, h.images
    for x in group.elements_iter(max_order):
        if _compose(_compose(_invert(x), gi), x) == hi:
            return True
    return False


# ---------------------------------------------------------------------------
# Symbolic group descriptions


class GroupDescription:
    """Marker base for symbolic answers realizable on n points."""


@dataclass(frozen=True)
class Symmetric(GroupDescription):
    m: int

    @property
    def degree(self) -> int:
        return self.m


@dataclass(frozen=True)
class HolomorphSubgroup(GroupDescription):
    """{T_{a,b} : a in A, b in Z_n} with T_{a,b}(i) = a*i + b."""

    n: int
    multipliers: UnitSubgroup

    @property
    def degree(self) -> int:
        return self.n


@dataclass(frozen=True)
class Wreath(GroupDescription):
    outer: GroupDescription
    inner: GroupDescription

    @property
    def degree(self) -> int:
        return self.outer.degree * self.inner.degree


@dataclass(frozen=True)
class DirectProduct(GroupDescription):
    left: GroupDescription
    right: GroupDescription
    crt_divisor: int

    @property
    def degree(self) -> int:
        return self.left.degree * self.right.degree


@dataclass(frozen=True)
class GeneratedBy(GroupDescription):
    degree: int
    generators: tuple[Permutation, ...]


def symbolic_order(desc: GroupDescription) -> int:
    """Order by formula; GeneratedBy falls back to the stabilizer chain."""
    if isinstance(desc, Symmetric):
        return math.factorial(desc.m)
    if isinstance(desc, HolomorphSubgroup):
        return 1 if desc.n == 1 else desc.n * len(desc.multipliers)
    if isinstance(desc, Wreath):
        return symbolic_order(desc.outer) * symbolic_order(desc.inner) ** desc.outer.degree
    if isinstance(desc, DirectProduct):
        return symbolic_order(desc.left) * symbolic_order(desc.right)
    if isinstance(desc, GeneratedBy):
        return PermGroup(desc.degree, desc.generators).order()
    raise TypeError(f"not a group description: {desc!r}")


def _symmetric_gens(m: int) -> list[Permutation]:
    gens = []
    if m >= 2:
        gens.append(Permutation((1, 0) + tuple(range(2, m))))
    if m >= 3:
        gens.append(rotation(m))
    return gens


def realize(desc: GroupDescription) -> PermGroup:
    """Explicit generators on desc.degree points.

    A Wreath description is realized on Z_n through the coset bijection
    (x, y) -> x + |outer| * y, so solver answers act on the graph's own
    vertex labels; the raw pair-indexed action is available via
    wreath_group directly.
    """
    if isinstance(desc, Symmetric):
        return PermGroup(desc.m, _symmetric_gens(desc.m))
    if isinstance(desc, HolomorphSubgroup):
        n = desc.n
        if desc.multipliers.modulus.n != n:
            raise ValueError("multiplier subgroup lives in the wrong unit group")
        if n == 1:
            return PermGroup(1, ())
        gens = [rotation(n)]
        gens.extend(affine(n, a, 0) for a in desc.multipliers.generators())
        return PermGroup(n, gens)
    if isinstance(desc, Wreath):
        outer = realize(desc.outer)
        inner = realize(desc.inner)
        u, d = outer.degree, inner.degree
        n = u * d
        raw = wreath_group(outer, inner)

        def embed(g):
            images = [0] * n
            for z in range(n):
                i = (z % u) * d + (z // u)
                j = g(i)
                images[z] = (j // d) + u * (j % d)
            return Permutation(images)

        return PermGroup(n, [embed(g) for g in raw.generators])
    if isinstance(desc, DirectProduct):
        left = realize(desc.left)
        right = realize(desc.right)
        if desc.crt_divisor != left.degree:
            raise ValueError("crt divisor must equal the left factor degree")
        return direct_product_crt(left, right)
    if isinstance(desc, GeneratedBy):
        return PermGroup(desc.degree, desc.generators)
    raise TypeError(f"not a group description: {desc!r}")
