"""Graded Betti tables of semigroup rings via squarefree divisor complexes.

For a degree m, the divisor complex has a face F ⊆ {1..n} whenever
m - sum(a_i for i in F) stays in the semigroup. The rank of its reduced
homology in dimension i-1 (over the rationals) is the graded Betti number
beta_{i,m} of the quotient ring. Degrees above frobenius + sum(generators)
give the full simplex, which is acyclic, so the table is finite and the
bound is provable rather than heuristic.

Faces are encoded as variable bitmasks (bit i-1 set iff generator i in the
face); a whole complex on n vertices is one integer with 2**n face bits.
Homology ranks are memoized per face-set integer, and for n <= 6 the face
bits of every degree are produced in bulk with shifted numpy slices, so a
scan touches each degree only through array operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, MonocurveError
from .semigroup import SemigroupSpec, frobenius

_RANKS_MEMO: dict[tuple[int, int], tuple[int, ...]] = {}
_COMPONENTS_MEMO: dict[tuple[int, int], tuple[int, ...]] = {}


def face(*variables):
    """Bitmask for a face given 1-based variable numbers: face(1, 4) -> 0b1001."""
    return sum(1 << (v - 1) for v in variables)


@dataclass(frozen=True)
class DivisorComplex:
    """Squarefree divisor complex of one degree, faces as variable bitmasks."""

    degree: int
    nvars: int
    faces: frozenset[int]

    def is_downward_closed(self):
        for f in self.faces:
            g = f
            while g:
                v = g & -g
                if f ^ v not in self.faces:
                    return False
                g ^= v
        return True


@dataclass(frozen=True)
class GradedBettiTable:
    """Rows m -> (beta_{0,m},…,beta_{n,m}) plus column totals and twists.

    Rows with all-zero homology are omitted. ``twists`` lists, per column,
    the degrees with a nonzero entry, repeated with multiplicity.
    """

    rows: dict[int, tuple[int, ...]]
    totals: tuple[int, ...]
    twists: tuple[tuple[int, ...], ...]

    @property
    def mu(self):
        return self.totals[1]

    def pretty_totals(self):
        return "(" + ", ".join(str(b) for b in self.totals) + ")"

    def to_json_dict(self):
        return {
            "totals": list(self.totals),
            "rows": {str(m): list(r) for m, r in self.rows.items()},
        }


def integer_matrix_rank(rows) -> int:
    """Exact rank of an integer matrix by fraction-free Bareiss elimination."""
    if not rows or not rows[0]:
        return 0
    m = [list(r) for r in rows]
    nr, nc = len(m), len(m[0])
    rank = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][c]
        for i in range(rank + 1, nr):
            mic = m[i][c]
            row_i, row_r = m[i], m[rank]
            for k in range(c + 1, nc):
                # exact by Sylvester's identity
                row_i[k] = (row_i[k] * pivot - mic * row_r[k]) // prev
            row_i[c] = 0
        prev = pivot
        rank += 1
        if rank == nr:
            break
    return rank


def _faces_by_count(nvars, faceset):
    by_count = [[] for _ in range(nvars + 1)]
    for f in range(1 << nvars):
        if faceset >> f & 1:
            by_count[f.bit_count()].append(f)
    return by_count


def _boundary_matrix(lower, upper):
    """Matrix of the boundary map from |upper|-element faces to |lower|-element ones."""
    index = {f: i for i, f in enumerate(lower)}
    rows = [[0] * len(upper) for _ in lower]
    for col, f in enumerate(upper):
        sign = 1
        g = f
        while g:
            v = g & -g
            rows[index[f ^ v]][col] = sign
            sign = -sign
            g ^= v
    return rows


def _reduced_ranks(nvars, faceset) -> tuple[int, ...]:
    """Reduced homology ranks over Q, indexed by dimension -1..nvars-1."""
    key = (nvars, faceset)
    memo = _RANKS_MEMO.get(key)
    if memo is not None:
        return memo
    if faceset == 0:
        ranks = (0,) * (nvars + 1)
        _RANKS_MEMO[key] = ranks
        return ranks
    by_count = _faces_by_count(nvars, faceset)
    counts = [len(fs) for fs in by_count]
    bd_rank = [0] * (nvars + 2)
    for k in range(1, nvars + 1):
        if counts[k] and counts[k - 1]:
            bd_rank[k] = integer_matrix_rank(_boundary_matrix(by_count[k - 1], by_count[k]))
    ranks = []
    for k in range(nvars + 1):
        if bd_rank[k] + bd_rank[k + 1] > counts[k]:
            raise MonocurveError("boundary ranks violate rank-nullity")
        ranks.append(counts[k] - bd_rank[k] - bd_rank[k + 1])
    ranks = tuple(ranks)
    _RANKS_MEMO[key] = ranks
    return ranks


def _skeleton_components(nvars, faceset) -> tuple[int, ...]:
    """Connected components of the 1-skeleton, as vertex bitmasks (min vertex order)."""
    key = (nvars, faceset)
    memo = _COMPONENTS_MEMO.get(key)
    if memo is not None:
        return memo
    vertices = [i for i in range(nvars) if faceset >> (1 << i) & 1]
    parent = {i: i for i in vertices}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in range(len(vertices)):
        for q in range(p + 1, len(vertices)):
            i, k = vertices[p], vertices[q]
            if faceset >> ((1 << i) | (1 << k)) & 1:
                parent[find(i)] = find(k)
    masks: dict[int, int] = {}
    for i in vertices:
        r = find(i)
        masks[r] = masks.get(r, 0) | (1 << i)
    comps = tuple(sorted(masks.values(), key=lambda m: m & -m))
    _COMPONENTS_MEMO[key] = comps
    return comps


def divisor_complex(S: SemigroupSpec, m) -> DivisorComplex:
    """Faces F with m - sum(a_i, i in F) in S; downward closure is verified."""
    m = int(m)
    if m < 0:
        raise InvalidInputError("degree must be nonnegative")
    n = S.n
    gens = S.generators
    faces = []
    for f in range(1 << n):
        s = sum(gens[i] for i in range(n) if f >> i & 1)
        if s <= m and S.table.contains(m - s):
            faces.append(f)
    complex_ = DivisorComplex(degree=m, nvars=n, faces=frozenset(faces))
    if not complex_.is_downward_closed():
        raise MonocurveError("divisor complex is not downward closed")
    return complex_


def reduced_homology_ranks(C: DivisorComplex) -> tuple[int, ...]:
    """Ranks of reduced homology in dimensions -1..nvars-1, exactly over Q."""
    if not C.is_downward_closed():
        raise InvalidInputError("complex is not downward closed")
    faceset = 0
    for f in C.faces:
        faceset |= 1 << f
    return _reduced_ranks(C.nvars, faceset)


def default_bound(S: SemigroupSpec) -> int:
    """Degrees above this give the full simplex, hence zero homology."""
    return frobenius(S) + sum(S.generators)


def degree_patterns(S: SemigroupSpec, bound):
    """(degrees, face-set integers) for every member degree up to ``bound``.

    For n <= 6 the per-degree face bits fit in uint64 and are assembled with
    shifted slices of the membership array; larger n falls back to a plain
    loop, which is only ever used at desk scale.
    """
    cached = S._cache.get(("patterns", bound))
    if cached is not None:
        return cached
    n = S.n
    gens = S.generators
    table = S.table
    table.ensure(bound)
    members = table.as_bool_array(bound)
    degrees = np.flatnonzero(members)
    sums = [sum(gens[i] for i in range(n) if f >> i & 1) for f in range(1 << n)]
    if n <= 6:
        mem64 = members.astype(np.uint64)
        pat = np.zeros(bound + 1, dtype=np.uint64)
        for f, s in enumerate(sums):
            if s <= bound:
                pat[s:] |= np.left_shift(mem64[: bound + 1 - s], np.uint64(f))
        patterns = pat[degrees]
    else:
        bits = table.bits
        patterns = []
        for m in degrees.tolist():
            p = 0
            for f, s in enumerate(sums):
                if s <= m and bits >> (m - s) & 1:
                    p |= 1 << f
            patterns.append(p)
    result = (degrees, patterns)
    S._cache[("patterns", bound)] = result
    return result


def _unique_patterns(patterns):
    """(unique pattern ints, inverse index array, counts) for either encoding."""
    if isinstance(patterns, np.ndarray):
        uniq, inverse, counts = np.unique(patterns, return_inverse=True, return_counts=True)
        return [int(u) for u in uniq], inverse, counts
    index: dict[int, int] = {}
    inverse = np.empty(len(patterns), dtype=np.intp)
    counts: list[int] = []
    uniq: list[int] = []
    for pos, p in enumerate(patterns):
        i = index.get(p)
        if i is None:
            i = len(uniq)
            index[p] = i
            uniq.append(p)
            counts.append(0)
        counts[i] += 1
        inverse[pos] = i
    return uniq, inverse, np.array(counts)


def _vertex_count(nvars, faceset):
    return sum(1 for i in range(nvars) if faceset >> (1 << i) & 1)


def graded_betti(S: SemigroupSpec, bound=None) -> GradedBettiTable:
    """Full graded Betti table of the quotient by the defining ideal.

    beta_{i,m} = rank of reduced homology of the divisor complex of m in
    dimension i-1, for every member degree m up to the Betti-degree bound.
    The homology rank in dimension 0 is cross-checked against the component
    count of the 1-skeleton for every distinct complex encountered.
    """
    n = S.n
    provable = default_bound(S)
    if bound is None:
        bound = provable
    degrees, patterns = degree_patterns(S, bound)
    uniq, inverse, counts = _unique_patterns(patterns)

    ranks_by_u = [_reduced_ranks(n, u) for u in uniq]
    for u, ranks in zip(uniq, ranks_by_u):
        if _vertex_count(n, u) >= 1:
            comps = len(_skeleton_components(n, u))
            if ranks[1] != comps - 1:
                raise MonocurveError("homology rank and skeleton components disagree")

    totals = [0] * (n + 1)
    for ranks, c in zip(ranks_by_u, counts):
        for i, r in enumerate(ranks):
            totals[i] += r * int(c)

    interesting = np.array([any(r) for r in ranks_by_u], dtype=bool)
    rows: dict[int, tuple[int, ...]] = {}
    for pos in np.flatnonzero(interesting[inverse]):
        rows[int(degrees[pos])] = ranks_by_u[inverse[pos]]

    twists = tuple(
        tuple(m for m in rows for _ in range(rows[m][i]))
        for i in range(n + 1)
    )
    table = GradedBettiTable(rows=rows, totals=tuple(totals), twists=twists)

    if bound >= provable:
        if table.totals[0] != 1 or rows.get(0, (0,))[0] != 1:
            raise MonocurveError("degree-0 Betti number must be exactly 1")
        if any(r[0] for m, r in rows.items() if m != 0):
            raise MonocurveError("beta_0 supported away from degree 0")
        if sum((-1) ** i * b for i, b in enumerate(table.totals)) != 0:
            raise MonocurveError("alternating sum of Betti totals is nonzero")
        if table.totals[n] != 0:
            raise MonocurveError("projective dimension exceeds n-1")
    return table


def skeleton_mu(S: SemigroupSpec, bound=None) -> int:
    """Minimal generator count via 1-skeleton components, no homology matrices.

    Independent of the boundary-matrix route: per degree the number of new
    generators is (connected components of the divisor-complex skeleton) - 1.
    """
    if bound is None:
        bound = default_bound(S)
    degrees, patterns = degree_patterns(S, bound)
    uniq, inverse, counts = _unique_patterns(patterns)
    excess = np.array(
        [max(len(_skeleton_components(S.n, u)) - 1, 0) for u in uniq], dtype=np.int64
    )
    return int(np.sum(excess[inverse]))


def disconnected_degrees(S: SemigroupSpec, bound=None):
    """Degrees whose divisor complex is disconnected, with component masks."""
    if bound is None:
        bound = default_bound(S)
    degrees, patterns = degree_patterns(S, bound)
    uniq, inverse, _ = _unique_patterns(patterns)
    comps_by_u = [_skeleton_components(S.n, u) for u in uniq]
    split = np.array([len(c) >= 2 for c in comps_by_u], dtype=bool)
    out = []
    for pos in np.flatnonzero(split[inverse]):
        out.append((int(degrees[pos]), comps_by_u[inverse[pos]]))
    return out
