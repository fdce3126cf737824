"""Numerical semigroups ⟨a1,…,an⟩: membership, Frobenius numbers, Apery sets,
and factorization enumeration.

Everything here is exact integer arithmetic. Membership lives in a bit table
(one Python int, bit m set iff m is in the semigroup) that grows geometrically
on demand; a run of min(generators) consecutive members proves the table is
complete, which is how the Frobenius number is found without a priori bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, InvalidPivotError, MustNormalizeError

MAX_GENERATORS = 8


@dataclass(frozen=True, slots=True)
class Factorization:
    """Exponent vector of a monomial preimage of degree ``degree``.

    Invariant: sum(exponents[i] * generators[i]) == degree for the semigroup
    the factorization was built against.
    """

    exponents: tuple[int, ...]
    degree: int

    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)


def canonical_key(exponents):
    """Tie-breaking order for factorizations of a common degree.

    Compares the exponent of the largest generator first, so the minimum
    prefers mass on the small generators (x1^b*x3^a over x4^k). This matches
    the representatives used by the shifted-family complete-intersection
    ideals, e.g. 5*32 = 3*30 + 2*35 for ⟨30,32,35,40⟩ rather than 4*40.
    """
    return tuple(reversed(exponents))


class MembershipTable:
    """Lazily grown membership bit table for a generator tuple.

    ``bits`` packs membership of 0..bound into one int (bit m set iff m is a
    nonnegative combination of the generators). Each generator is folded in
    with doubling shift-or passes, so a resieve costs O(bound * n * log) bit
    operations regardless of how sparse the semigroup is.

    Not synchronized: parallel scans confine one table per worker process
    instead of sharing instances.
    """

    __slots__ = ("generators", "bound", "bits", "_frobenius")

    def __init__(self, generators, initial_bound=None):
        self.generators = tuple(generators)
        if not self.generators or any(a <= 0 for a in self.generators):
            raise InvalidInputError("generators must be positive integers")
        self.bound = -1
        self.bits = 0
        self._frobenius = None
        if initial_bound is None:
            initial_bound = 2 * max(self.generators)
        self.ensure(initial_bound)

    def ensure(self, bound):
        """Extend the table so it covers 0..bound."""
        if bound <= self.bound:
            return
        bound = max(bound, 2 * self.bound)
        mask = (1 << (bound + 1)) - 1
        bits = 1
        for a in self.generators:
            shift = a
            while shift <= bound:
                bits |= (bits << shift) & mask
                shift <<= 1
        self.bits = bits
        self.bound = bound

    def contains(self, m):
        if m < 0:
            return False
        if (self._frobenius is None and m > self.bound
                and math.gcd(*self.generators) == 1):
            # cheaper to finish the table than to sieve out to m
            self.frobenius()
        if self._frobenius is not None and m > self._frobenius:
            return True
        self.ensure(m)
        return bool(self.bits >> m & 1)

    def frobenius(self):
        """Largest integer not in the semigroup; -1 if there is none.

        Requires gcd(generators) == 1. Grows the table until the last gap is
        followed by at least min(generators) members, after which every
        larger integer is a member.
        """
        if self._frobenius is not None:
            return self._frobenius
        if math.gcd(*self.generators) != 1:
            raise MustNormalizeError("Frobenius number requires coprime generators")
        amin = min(self.generators)
        while True:
            gaps = ~self.bits & ((1 << (self.bound + 1)) - 1)
            if gaps == 0:
                self._frobenius = -1
                return -1
            last_gap = gaps.bit_length() - 1
            if self.bound - last_gap >= amin:
                self._frobenius = last_gap
                return last_gap
            self.ensure(2 * self.bound)

    def as_bool_array(self, bound):
        """Membership of 0..bound as a numpy bool array."""
        self.ensure(bound)
        nbytes = bound // 8 + 1
        raw = np.frombuffer(self.bits.to_bytes(max(nbytes, (self.bound + 8) // 8), "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: bound + 1].astype(bool)


class _SubSemigroup:
    """Membership oracle for the semigroup generated by a subset of generators.

    The subset may have gcd > 1; membership is tested on the scaled-down table.
    An empty subset generates {0}.
    """

    __slots__ = ("gens", "content", "table")

    def __init__(self, gens):
        self.gens = tuple(gens)
        if self.gens:
            self.content = math.gcd(*self.gens)
            self.table = MembershipTable(tuple(g // self.content for g in self.gens))
        else:
            self.content = 0
            self.table = None

    def contains(self, m):
        if m == 0:
            return True
        if m < 0 or not self.gens:
            return False
        if m % self.content:
            return False
        return self.table.contains(m // self.content)


class SemigroupSpec:
    """A numerical semigroup with normalization metadata.

    ``generators`` is the sorted, gcd-reduced tuple; ``content`` is the gcd
    that was divided out of the raw input; ``reduced`` records whether the
    input was already coprime. Construct through :func:`normalize`.
    """

    __slots__ = ("generators", "content", "reduced", "removed_duplicates",
                 "_table", "_subsemigroups", "_cache")

    def __init__(self, generators, content=1, removed_duplicates=()):
        generators = tuple(int(a) for a in generators)
        if len(generators) < 2 or len(generators) > MAX_GENERATORS:
            raise InvalidInputError(
                f"need between 2 and {MAX_GENERATORS} generators, got {len(generators)}")
        if any(a <= 0 for a in generators):
            raise InvalidInputError("generators must be positive")
        if list(generators) != sorted(generators):
            raise InvalidInputError("generators must be sorted ascending")
        if len(set(generators)) != len(generators):
            raise InvalidInputError("duplicate generators must be removed by normalize()")
        if content <= 0:
            raise InvalidInputError("content must be positive")
        self.generators = generators
        self.content = int(content)
        self.reduced = self.content == 1
        self.removed_duplicates = tuple(removed_duplicates)
        self._table = None
        self._subsemigroups = {}
        self._cache = {}

    def __repr__(self):
        return f"SemigroupSpec{self.generators}"

    def __eq__(self, other):
        return isinstance(other, SemigroupSpec) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    @property
    def n(self):
        return len(self.generators)

    @property
    def table(self):
        if self._table is None:
            self._table = MembershipTable(self.generators)
        return self._table

    def subsemigroup(self, indices):
        """Membership oracle for the generators at the given 0-based indices."""
        key = tuple(sorted(indices))
        oracle = self._subsemigroups.get(key)
        if oracle is None:
            oracle = _SubSemigroup(tuple(self.generators[i] for i in key))
            self._subsemigroups[key] = oracle
        return oracle

    def degree(self, exponents):
        if len(exponents) != self.n:
            raise InvalidInputError("exponent length does not match generator count")
        return sum(e * a for e, a in zip(exponents, self.generators))

    def factorization(self, exponents):
        exponents = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exponents):
            raise InvalidInputError("factorization exponents must be nonnegative")
        return Factorization(exponents, self.degree(exponents))

    def contains(self, m):
        return contains(self, m)

    def frobenius(self):
        return frobenius(self)

    def apery(self, x):
        return apery(self, x)

    def factorizations(self, m):
        return factorizations(self, m)


def normalize(raw) -> SemigroupSpec:
    """Sort, divide out the gcd, and drop exact duplicates.

    The defining ideal is insensitive to generator order, and joint scaling
    leaves it unchanged, so every downstream computation assumes this form.
    Removed duplicates are recorded on the result.
    """
    raw = tuple(int(a) for a in raw)
    if len(raw) < 2:
        raise InvalidInputError("need at least 2 generators")
    if any(a <= 0 for a in raw):
        raise InvalidInputError("generators must be positive integers")
    d = math.gcd(*raw)
    reduced = sorted(a // d for a in raw)
    kept = []
    removed = []
    for a in reduced:
        if kept and kept[-1] == a:
            removed.append(a)
        else:
            kept.append(a)
    if len(kept) < 2:
        raise InvalidInputError("fewer than 2 distinct generators after normalization")
    if len(kept) > MAX_GENERATORS:
        raise InvalidInputError(f"more than {MAX_GENERATORS} distinct generators")
    return SemigroupSpec(tuple(kept), content=d, removed_duplicates=tuple(removed))


def contains(S: SemigroupSpec, m) -> bool:
    """True iff m is a nonnegative integer combination of the generators."""
    m = int(m)
    if m < 0:
        raise InvalidInputError("membership is defined for nonnegative integers")
    return S.table.contains(m)


def frobenius(S: SemigroupSpec) -> int:
    """Largest integer not in S; -1 when S is all of the nonnegative integers."""
    if math.gcd(*S.generators) != 1:
        raise MustNormalizeError("Frobenius number requires coprime generators")
    return S.table.frobenius()


def apery(S: SemigroupSpec, x) -> set[int]:
    """The x least members of S in each residue class mod x (x in S, x > 0)."""
    x = int(x)
    if x <= 0 or not contains(S, x):
        raise InvalidPivotError(f"{x} is not a positive member of the semigroup")
    bound = max(frobenius(S), 0) + x
    table = S.table
    table.ensure(bound)
    found: dict[int, int] = {}
    m = 0
    while len(found) < x:
        if table.contains(m):
            r = m % x
            if r not in found:
                found[r] = m
        m += 1
    return set(found.values())


def factorizations(S: SemigroupSpec, m) -> tuple[Factorization, ...]:
    """All exponent vectors v with sum(v[i]*a[i]) == m, in lexicographic order.

    Empty iff m is not in S. The final two coordinates are solved as an
    arithmetic progression instead of a loop, which keeps desk-scale degrees
    cheap even when the leading exponents range into the hundreds.
    """
    m = int(m)
    if m < 0:
        raise InvalidInputError("degree must be nonnegative")
    gens = S.generators
    n = len(gens)
    out: list[Factorization] = []
    prefix = [0] * n

    def last_two(rem):
        a, b = gens[n - 2], gens[n - 1]
        g = math.gcd(a, b)
        if rem % g:
            return
        a1, b1, r1 = a // g, b // g, rem // g
        x = (r1 * pow(a1, -1, b1)) % b1 if b1 > 1 else 0
        while a * x <= rem:
            prefix[n - 2] = x
            prefix[n - 1] = (rem - a * x) // b
            out.append(Factorization(tuple(prefix), m))
            x += b1
        prefix[n - 2] = prefix[n - 1] = 0

    def rec(idx, rem):
        if idx == n - 2:
            last_two(rem)
            return
        a = gens[idx]
        for k in range(rem // a + 1):
            prefix[idx] = k
            rec(idx + 1, rem - k * a)
        prefix[idx] = 0

    rec(0, m)
    return tuple(out)


def canonical_factorization(S: SemigroupSpec, m, allowed=None):
    """Minimal factorization of m under :func:`canonical_key`, or None.

    ``allowed`` restricts the support to the given 0-based indices. The search
    is greedy from the largest generator down, testing each residual against
    the subsemigroup of the remaining allowed generators, so it never
    enumerates the full fiber.
    """
    gens = S.generators
    n = len(gens)
    if allowed is None:
        allowed = range(n)
    allowed = sorted(allowed)
    v = [0] * n
    rem = int(m)
    for pos in range(len(allowed) - 1, -1, -1):
        idx = allowed[pos]
        rest = S.subsemigroup(allowed[:pos])
        a = gens[idx]
        for c in range(rem // a + 1):
            if rest.contains(rem - c * a):
                v[idx] = c
                rem -= c * a
                break
        else:
            return None
    if rem != 0:
        return None
    return Factorization(tuple(v), int(m))
