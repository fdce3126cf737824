"""Binomials of the defining ideal: lattice-kernel tests, critical binomials,
and minimal generating sets with their count mu.

A binomial x^plus - x^minus lies in the defining ideal exactly when
plus - minus is in the kernel of the degree map v -> sum(v[i]*a[i]). Minimal
generators are found degreewise from the factorization graph: the vertices
are the factorizations of a degree, factorizations sharing a variable are
adjacent, and each degree contributes (components - 1) connecting binomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import betti
from .errors import (DegenerateInputError, InternalBoundError,
                     InvalidInputError, MonocurveError)
from .semigroup import (Factorization, SemigroupSpec, canonical_factorization,
                        canonical_key, factorizations)

LatticeVector = tuple[int, ...]


def _monomial_str(exponents):
    parts = [f"x{i + 1}" + (f"^{e}" if e > 1 else "")
             for i, e in enumerate(exponents) if e]
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True, slots=True)
class Binomial:
    """x^plus - x^minus with disjoint supports."""

    plus: Factorization
    minus: Factorization

    def vector(self) -> LatticeVector:
        return tuple(p - q for p, q in zip(self.plus.exponents, self.minus.exponents))

    def is_homogeneous(self):
        return self.plus.degree == self.minus.degree

    def __str__(self):
        return f"{_monomial_str(self.plus.exponents)} - {_monomial_str(self.minus.exponents)}"

    def to_json_dict(self):
        return {
            "vector": list(self.vector()),
            "plus": list(self.plus.exponents),
            "minus": list(self.minus.exponents),
            "degree": self.plus.degree,
            "text": str(self),
        }


def kernel_member(S: SemigroupSpec, v, shifted=None) -> bool:
    """True iff v is orthogonal to the generators.

    When ``shifted=(a, b, c, j)`` is supplied the generators must be the
    shifted family (j, a+j, a+b+j, a+b+c+j), and the rearranged form
    j*sum(v) + a*v2 + (a+b)*v3 + (a+b+c)*v4 is evaluated alongside the plain
    dot product; the two must agree.
    """
    v = tuple(int(x) for x in v)
    if len(v) != S.n:
        raise InvalidInputError("vector length does not match generator count")
    dot = sum(x * a for x, a in zip(v, S.generators))
    if shifted is not None:
        a, b, c, j = shifted
        expected = (j, a + j, a + b + j, a + b + c + j)
        if S.generators != expected:
            raise InvalidInputError(
                f"generators {S.generators} are not the shifted family {expected}")
        rearranged = j * sum(v) + a * v[1] + (a + b) * v[2] + (a + b + c) * v[3]
        if rearranged != dot:
            raise MonocurveError("shifted-family rearrangement disagrees with dot product")
    return dot == 0


def binomial_from_vector(v, gens) -> Binomial:
    """Split a nonzero lattice vector into x^plus - x^minus.

    The positive part becomes plus, the negated negative part becomes minus,
    so supports are disjoint by construction and vector() round-trips exactly.
    """
    v = tuple(int(x) for x in v)
    if len(v) != len(gens):
        raise InvalidInputError("vector length does not match generator count")
    if not any(v):
        raise DegenerateInputError("zero vector has no binomial")
    plus = tuple(max(x, 0) for x in v)
    minus = tuple(max(-x, 0) for x in v)
    return Binomial(
        plus=Factorization(plus, sum(e * a for e, a in zip(plus, gens))),
        minus=Factorization(minus, sum(e * a for e, a in zip(minus, gens))),
    )


@dataclass(frozen=True, slots=True)
class CriticalWitness:
    """Least exponent alpha with alpha*a_var in the span of the other generators.

    ``var`` is 1-based as in x1..xn; ``complement`` is a full-length
    factorization with a zero in position var-1.
    """

    var: int
    exponent: int
    complement: Factorization


def critical_exponent(S: SemigroupSpec, var) -> CriticalWitness:
    """Search the critical exponent of x_var with an explicit certificate.

    alpha*a_var must be divisible by the gcd g of the other generators, so
    alpha runs through multiples of g/gcd(g, a_var) only; each candidate is a
    single bit test against the scaled subsemigroup table. The cap is provable:
    (a_j/gcd(a_i, a_j))*a_i = lcm(a_i, a_j) lies in <a_j>, so the least alpha
    is at most min_j a_j/gcd(a_i, a_j). Exceeding it means a bug.
    """
    if not 1 <= var <= S.n:
        raise InvalidInputError(f"variable number out of range: {var}")
    i = var - 1
    a_i = S.generators[i]
    others = tuple(j for j in range(S.n) if j != i)
    oracle = S.subsemigroup(others)
    g = oracle.content
    step = g // math.gcd(g, a_i)
    cap = min(S.generators[j] // math.gcd(S.generators[j], a_i) for j in others)
    alpha = step
    while alpha <= cap:
        if oracle.contains(alpha * a_i):
            complement = canonical_factorization(S, alpha * a_i, allowed=others)
            if complement is None:
                raise MonocurveError("membership certificate has no factorization")
            return CriticalWitness(var=var, exponent=alpha, complement=complement)
        alpha += step
    raise InternalBoundError(f"critical exponent search for x{var} exceeded {cap}")


def full_critical_set(S: SemigroupSpec) -> list[Binomial]:
    """One critical binomial x_i^alpha_i - complement per variable."""
    out = []
    for var in range(1, S.n + 1):
        w = critical_exponent(S, var)
        exps = tuple(w.exponent if j == var - 1 else 0 for j in range(S.n))
        plus = Factorization(exps, w.exponent * S.generators[var - 1])
        b = Binomial(plus=plus, minus=w.complement)
        if plus.degree != w.complement.degree:
            raise MonocurveError("critical binomial is not homogeneous")
        out.append(b)
    return out


def _mask_indices(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _emit_degree(m, reps):
    """Connect the component of the canonical-least factorization to the rest."""
    reps = sorted(reps, key=lambda f: canonical_key(f.exponents))
    base = reps[0]
    return [Binomial(plus=base, minus=other) for other in reps[1:]]


def _skeleton_generators(S, bound):
    out = []
    for m, comps in betti.disconnected_degrees(S, bound):
        reps = []
        for mask in comps:
            rep = canonical_factorization(S, m, allowed=_mask_indices(mask))
            if rep is None:
                raise MonocurveError(f"component of degree {m} has no factorization")
            reps.append(rep)
        out.extend(_emit_degree(m, reps))
    return out


def _enumerate_generators(S, bound):
    out = []
    members = S.table.as_bool_array(bound)
    for m in np.flatnonzero(members).tolist():
        if m == 0:
            continue
        facts = factorizations(S, m)
        if len(facts) < 2:
            continue
        parent = list(range(len(facts)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        # chain all factorizations using a variable; transitively this joins
        # exactly the pairs with non-disjoint support
        for var in range(S.n):
            first = None
            for idx, f in enumerate(facts):
                if f.exponents[var]:
                    if first is None:
                        first = idx
                    else:
                        parent[find(idx)] = find(first)
        comps: dict[int, list[Factorization]] = {}
        for idx, f in enumerate(facts):
            comps.setdefault(find(idx), []).append(f)
        if len(comps) < 2:
            continue
        reps = [min(group, key=lambda f: canonical_key(f.exponents))
                for group in comps.values()]
        out.extend(_emit_degree(m, reps))
    return out


def minimal_generators(S: SemigroupSpec, bound=None, method="skeleton"):
    """(minimal binomial generating set, mu) for the defining ideal.

    ``method="enumerate"`` builds the factorization graph of every degree
    explicitly; ``method="skeleton"`` reads the component structure off the
    divisor-complex 1-skeleton and finds one canonical representative per
    component by greedy search, which gives the identical output without
    enumerating fibers. Both iterate degrees ascending and break ties with
    :func:`canonical_key`, so the emitted order is reproducible.
    """
    if bound is None:
        bound = betti.default_bound(S)
    if method == "skeleton":
        gens = _skeleton_generators(S, bound)
    elif method == "enumerate":
        gens = _enumerate_generators(S, bound)
    else:
        raise InvalidInputError(f"unknown method: {method}")
    for g in gens:
        if not g.is_homogeneous() or not kernel_member(S, g.vector()):
            raise MonocurveError("emitted generator is not in the kernel")
        if g.plus.support() & g.minus.support():
            raise MonocurveError("emitted generator has overlapping supports")
    return gens, len(gens)


def _move_components(S, moves, m):
    """Partition of the factorizations of m under the moves of a binomial set.

    A move replaces x^plus by x^minus (or back) inside a monomial whenever it
    divides; degreewise this is a walk on the fiber of m. Returns the list of
    factorizations and their component labels.
    """
    facts = factorizations(S, m)
    index = {f.exponents: i for i, f in enumerate(facts)}
    parent = list(range(len(facts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    shifts = []
    for g in moves:
        if not g.is_homogeneous():
            raise InvalidInputError(f"move {g} is not degree-preserving")
        p, q = g.plus.exponents, g.minus.exponents
        shifts.append((p, q))
        shifts.append((q, p))
    for f in facts:
        u = f.exponents
        for p, q in shifts:
            if all(a >= b for a, b in zip(u, p)):
                w = tuple(a - b + c for a, b, c in zip(u, p, q))
                parent[find(index[u])] = find(index[w])
    return facts, index, find


def _moves_connected(S, moves, m, start, target):
    """True iff start and target factorizations of m are joined by the moves."""
    _, index, find = _move_components(S, moves, m)
    return find(index[start]) == find(index[target])


def reduces_to_zero(S: SemigroupSpec, gens, binomial: Binomial) -> bool:
    """Membership of a homogeneous binomial in the ideal the set generates."""
    if not binomial.is_homogeneous():
        raise InvalidInputError("binomial is not homogeneous")
    if binomial.plus.exponents == binomial.minus.exponents:
        return True
    return _moves_connected(S, gens, binomial.plus.degree,
                            binomial.plus.exponents, binomial.minus.exponents)


def verify_generates(S: SemigroupSpec, gens, bound=None) -> bool:
    """Completeness: every kernel binomial of degree <= bound reduces to zero.

    Equivalently, the moves of the generating set connect all factorizations
    of every member degree up to the bound.
    """
    if bound is None:
        bound = betti.default_bound(S)
    members = S.table.as_bool_array(bound)
    for m in np.flatnonzero(members).tolist():
        facts, _, find = _move_components(S, gens, m)
        if len(facts) < 2:
            continue
        root = find(0)
        if any(find(i) != root for i in range(1, len(facts))):
            return False
    return True


def ideal_equivalent(S: SemigroupSpec, gens_a, gens_b) -> bool:
    """Two homogeneous binomial sets generate the same ideal."""
    return (all(reduces_to_zero(S, gens_a, g) for g in gens_b)
            and all(reduces_to_zero(S, gens_b, g) for g in gens_a))
