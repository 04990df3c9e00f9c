"""Arithmetic in Z_n: factorisation, the unit group and its subgroups, cosets,
and CRT splitting.

Graph orders stay desk-sized here, so trial division and closure-based
subgroup enumeration are deliberate choices: correctness over speed.
All values are immutable and every operation is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonUnitError


@dataclass(frozen=True)
class Modulus:
    """A positive integer n together with its prime factorisation."""

    n: int
    prime_factors: tuple[tuple[int, int], ...]

    @property
    def is_prime(self) -> bool:
        return len(self.prime_factors) == 1 and self.prime_factors[0][1] == 1

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.prime_factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.prime_factors)

    @property
    def phi(self) -> int:
        out = 1
        for p, e in self.prime_factors:
            out *= (p - 1) * p ** (e - 1)
        return out

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.prime_factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def units(self) -> tuple[int, ...]:
        return tuple(a for a in range(1, self.n) if math.gcd(a, self.n) == 1)


def factorize(n: int) -> Modulus:
    """Prime factorisation by trial division; rejects n < 1."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"modulus must be a positive integer, got {n!r}")
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Modulus(n, tuple(factors))


def as_modulus(n) -> Modulus:
    return n if isinstance(n, Modulus) else factorize(n)


@dataclass(frozen=True)
class UnitSubgroup:
    """A multiplicatively closed subset of Z_n* containing 1.

    Z_1* is the empty set by convention; every other subgroup contains 1.
    """

    modulus: Modulus
    elements: tuple[int, ...]

    def __contains__(self, a) -> bool:
        return a in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def has_even_order(self) -> bool:
        return len(self.elements) % 2 == 0

    def generators(self) -> tuple[int, ...]:
        """Small deterministic generating set, greedy over sorted elements."""
        n = self.modulus.n
        if n == 1:
            return ()
        gens: list[int] = []
        span = {1}
        for a in self.elements:
            if a in span:
                continue
            gens.append(a)
            span = _mult_closure(n, span | {a})
        return tuple(gens)


def _mult_closure(n: int, seed: set[int]) -> set[int]:
    out = set(seed)
    frontier = sorted(out)
    while frontier:
        step = []
        current = list(out)
        for a in frontier:
            for b in current:
                c = a * b % n
                if c not in out:
                    out.add(c)
                    step.append(c)
        frontier = step
    return out


def trivial_subgroup(modulus) -> UnitSubgroup:
    m = as_modulus(modulus)
    return UnitSubgroup(m, () if m.n == 1 else (1,))


def subgroup_generated(modulus, gens) -> UnitSubgroup:
    """Smallest multiplicatively closed subset of Z_n* containing gens and 1."""
    m = as_modulus(modulus)
    n = m.n
    norm = []
    for g in gens:
        if math.gcd(g % n if n > 1 else 0, n) != 1:
            raise NonUnitError(g, n)
        norm.append(g % n)
    if n == 1:
        return UnitSubgroup(m, ())
    closed = _mult_closure(n, {1, *norm})
    return UnitSubgroup(m, tuple(sorted(closed)))


def all_unit_subgroups(modulus) -> list[UnitSubgroup]:
    """Every subgroup of Z_n* exactly once, sorted by size then elements.

    Cyclic subgroups seeded from every unit, then closed under pairwise
    joins; complete because a finite abelian group is the join of its
    cyclic subgroups.
    """
    m = as_modulus(modulus)
    if m.n < 2:
        raise ValueError("unit-subgroup enumeration needs n >= 2")
    subs = {frozenset({1})}
    for u in m.units():
        subs.add(frozenset(_mult_closure(m.n, {1, u})))
    changed = True
    while changed:
        changed = False
        current = sorted(subs, key=lambda s: (len(s), sorted(s)))
        for i, a in enumerate(current):
            for b in current[i + 1 :]:
                j = frozenset(_mult_closure(m.n, set(a) | set(b)))
                if j not in subs:
                    subs.add(j)
                    changed = True
    ordered = sorted(subs, key=lambda s: (len(s), sorted(s)))
    return [UnitSubgroup(m, tuple(sorted(s))) for s in ordered]


def is_union_of_cosets(S, H: UnitSubgroup) -> bool:
    """True iff h*s stays in S for every s in S and h in H."""
    n = H.modulus.n
    sset = set(S)
    return all(h * s % n in sset for s in sset for h in H.elements)


def multiplier_stabilizer(modulus, S) -> UnitSubgroup:
    """The subgroup {a in Z_n* : aS = S}; contains -1 whenever S = -S."""
    m = as_modulus(modulus)
    n = m.n
    sset = set(S)
    keep = tuple(a for a in m.units() if {a * s % n for s in sset} == sset)
    return UnitSubgroup(m, keep)


def intersect_subgroups(a: UnitSubgroup, b: UnitSubgroup) -> UnitSubgroup:
    if a.modulus.n != b.modulus.n:
        raise ValueError("subgroups live in different unit groups")
    return UnitSubgroup(a.modulus, tuple(sorted(set(a.elements) & set(b.elements))))


def crt_split(modulus, m: int, x: int) -> tuple[int, int]:
    """Split x mod n into (x mod m, x mod n/m); requires gcd(m, n/m) = 1."""
    mod = as_modulus(modulus)
    n = mod.n
    if m < 1 or n % m != 0:
        raise ValueError(f"{m} does not divide {n}")
    r = n // m
    if math.gcd(m, r) != 1:
        raise ValueError(f"non-coprime split {m} * {r}")
    return (x % m, x % r)


def crt_combine(modulus, m: int, residues: tuple[int, int]) -> int:
    """Inverse of crt_split: the unique x mod n with the given residues."""
    mod = as_modulus(modulus)
    n = mod.n
    if m < 1 or n % m != 0:
        raise ValueError(f"{m} does not divide {n}")
    r = n // m
    if math.gcd(m, r) != 1:
        raise ValueError(f"non-coprime split {m} * {r}")
    r1, r2 = residues
    if m == 1:
        return r2 % n
    if r == 1:
        return r1 % n
    x = (r1 * r * pow(r, -1, m) + r2 * m * pow(m, -1, r)) % n
    return x
