"""Complete flags over GF(q^k) and the varieties cut out of the flag variety.

A flag V_0 < V_1 < ... < V_n is stored by a canonical adapted basis
(a_1, ..., a_n): a_i is the unique representative of the line V_i / V_{i-1}
that vanishes on the pivot columns of RREF(V_{i-1}) and has leading entry 1.
Two flags are equal iff their canonical bases are equal.

Enumeration walks these bases depth first (one line in each successive
quotient, candidates in lexicographic order).  The Springer condition
u V_t = V_t, the relative-position condition for (F, F(F)) restricted to
indices <= t, and twisted-Frobenius stability are all decidable on a prefix,
so constrained searches prune instead of filtering the full flag variety.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .combinatorics import (
    Partition,
    Perm,
    Tableau,
    check_perm,
    check_standard,
    conjugate_partition,
    identity_perm,
    position,
    restrict,
    shape,
)
from .gf import FieldSpec, make_field
from .linalg import (
    Mat,
    Subspace,
    contains,
    image,
    insert_row,
    intersect,
    kernel,
    leading_index,
    mat_vec,
    normalize,
    reduce_vector,
    subspace_sum,
)

DEFAULT_BUDGET = 50_000_000


class BudgetExceeded(RuntimeError):
    pass


class MembershipError(ValueError):
    pass


class NotInSpringerFibre(MembershipError):
    pass


def gaussian_factorial(n: int, Q: int) -> int:
    """Number of complete flags in GF(Q)^n."""
    out = 1
    for i in range(1, n + 1):
        out *= (Q**i - 1) // (Q - 1)
    return out


def gaussian_binomial(n: int, k: int, Q: int) -> int:
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= Q ** (n - i) - 1
        den *= Q ** (i + 1) - 1
    return num // den


# -- flags -----------------------------------------------------------------------

class Flag:
    __slots__ = ("n", "spec", "basis", "_chain")

    def __init__(self, basis: Sequence[Sequence[int]], spec: FieldSpec, _canonical: bool = False):
        self.spec = spec
        if _canonical:
            self.basis = tuple(tuple(v) for v in basis)
        else:
            self.basis = _canonical_basis(spec, basis)
        self.n = len(self.basis)
        self._chain = None

    @classmethod
    def from_subspaces(cls, chain: Sequence[Subspace]) -> "Flag":
        """Build from V_1 < ... < V_n (V_0 may be included)."""
        chain = [s for s in chain if s.dim > 0]
        spec = chain[0].spec
        basis = []
        for prev, cur in zip([None] + chain[:-1], chain):
            ech = prev.echelon() if prev else []
            new = next(r for r in cur.rows if any(reduce_vector(spec, r, ech)))
            basis.append(new)
        return cls(basis, spec)

    @classmethod
    def standard(cls, n: int, spec: FieldSpec) -> "Flag":
        return cls([tuple(1 if i == j else 0 for j in range(n)) for i in range(n)], spec, _canonical=True)

    def subspaces(self) -> tuple[Subspace, ...]:
        """(V_0, V_1, ..., V_n)."""
        if self._chain is None:
            F, n = self.spec, self.n
            chain = [Subspace.zero(n, F)]
            ech: list = []
            for v in self.basis:
                insert_row(F, ech, v)
                chain.append(Subspace(n, tuple(r for _, r in ech), F))
            self._chain = tuple(chain)
        return self._chain

    def __getitem__(self, i: int) -> Subspace:
        return self.subspaces()[i]

    def __eq__(self, other):
        return isinstance(other, Flag) and other.spec is self.spec and other.basis == self.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Flag({[list(v) for v in self.basis]}, {self.spec!r})"

    def apply(self, g: Mat) -> "Flag":
        """g . F"""
        if g.spec is not self.spec or g.rows != self.n:
            raise ValueError("matrix does not act on this flag's space")
        return Flag([g.apply(v) for v in self.basis], self.spec)

    def frobenius(self, times: int = 1) -> "Flag":
        fr = self.spec.frob_table()
        vecs = self.basis
        for _ in range(times):
            vecs = [tuple(fr[a] for a in v) for v in vecs]
        return Flag(vecs, self.spec)

    def is_rational(self) -> bool:
        return all(s.is_rational() for s in self.subspaces())

    def to_json(self) -> str:
        F = self.spec
        return json.dumps(
            {
                "n": self.n,
                "field": [F.p, F.m, F.k],
                "subspaces": [s.format() for s in self.subspaces()],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Flag":
        d = json.loads(text)
        F = make_field(*d["field"])
        chain = [Subspace.span([[F.parse(x) for x in r] for r in rows], d["n"], F) for rows in d["subspaces"]]
        return cls.from_subspaces(chain)


def _canonical_basis(F: FieldSpec, vectors) -> tuple:
    ech: list = []
    out = []
    for v in vectors:
        r = reduce_vector(F, v, ech)
        if not any(r):
            raise ValueError("flag basis vectors are linearly dependent")
        r = normalize(F, r)
        out.append(r)
        insert_row(F, ech, r)
    return tuple(out)


def frobenius_flag(f: Flag) -> Flag:
    return f.frobenius()


# -- relative position -------------------------------------------------------------

def intersection_dims(f: Flag, g: Flag) -> list[list[int]]:
    """d[i][j] = dim(V_i & V'_j) for 0 <= i, j <= n, via ranks of V_i + V'_j."""
    if f.n != g.n or f.spec is not g.spec:
        raise ValueError("flags live in different spaces")
    n, F = f.n, f.spec
    d = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        ech: list = []
        for a in f.basis[:i]:
            insert_row(F, ech, a)
        r = i
        for j in range(1, n + 1):
            r += insert_row(F, ech, g.basis[j - 1])
            d[i][j] = i + j - r
    return d


def relative_position(f: Flag, g: Flag) -> Perm:
    """The w with dim(V_i & V'_j) = #({1..i} & {w(1)..w(j)})."""
    d = intersection_dims(f, g)
    n = f.n
    w = []
    for j in range(1, n + 1):
        hits = [i for i in range(1, n + 1) if d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1]
        assert len(hits) == 1, "intersection dimensions are not those of a flag pair"
        w.append(hits[0])
    return tuple(w)


def position_table(w: Perm) -> list[list[int]]:
    """#({1..i} & {w(1)..w(j)}) for 0 <= i, j <= n."""
    n = len(w)
    t = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            t[i][j] = sum(1 for x in w[:j] if x <= i)
    return t


# -- membership ----------------------------------------------------------------------

def _check_dims(u: Mat, f: Flag):
    if u.rows != f.n or u.cols != f.n:
        raise ValueError("matrix and flag dimensions differ")
    if u.spec is not f.spec:
        raise ValueError("matrix and flag live over different fields")


def springer_membership(u: Mat, f: Flag) -> bool:
    """u V_i = V_i for every i."""
    _check_dims(u, f)
    return all(image(u, s) == s for s in f.subspaces())


def dl_membership(w: Perm, f: Flag) -> bool:
    w = check_perm(w)
    if len(w) != f.n:
        raise ValueError("permutation and flag sizes differ")
    return relative_position(f, f.frobenius()) == w


@lru_cache(maxsize=256)
def _nilpotent_context(u: Mat):
    """(N, (Ker N^0, ..., Ker N^n), Jordan type) for a unipotent u."""
    from .normal_forms import jordan_type

    n, F = u.rows, u.spec
    N = u - Mat.identity(n, F)
    kers = [Subspace.zero(n, F)]
    P = Mat.identity(n, F)
    for _ in range(n):
        P = P @ N
        kers.append(kernel(P))
    return N, tuple(kers), jordan_type(u)


def kernel_jumps(u: Mat, f: Flag, depth: int) -> list[list[bool]]:
    """jumps[j][m-1] is True iff a_m lies outside Ker N^j + V_{m-1}, j <= depth.

    Equivalently Ker N^j & V_m is not contained in V_{m-1}.
    """
    F = f.spec
    _, kers, _ = _nilpotent_context(u)
    out = []
    for j in range(depth + 1):
        ech = kers[j].echelon()
        out.append([insert_row(F, ech, a) for a in f.basis])
    return out


def steinberg_membership(u: Mat, P: Tableau, f: Flag) -> bool:
    """Is f in the open piece C(P) of the Springer fibre at u?

    Working down from m = n: with j the column of m in P, the hyperplane
    V_{m-1} of V_m must contain N V_m + (Ker N^(j-1) & V_m) but not
    N V_m + (Ker N^j & V_m).  On the Springer fibre N V_m already lies in
    V_{m-1}, so this reads: a_m is outside Ker N^(j-1) + V_{m-1} and inside
    Ker N^j + V_{m-1}.
    """
    _check_dims(u, f)
    P = check_standard(P)
    N, _, lam = _nilpotent_context(u)
    if shape(P) != lam:
        raise MembershipError(f"tableau shape {shape(P)} differs from the Jordan type {lam} of u")
    F = f.spec
    ech: list = []
    for a in f.basis:
        # N V_m inside V_{m-1}, i.e. the flag is u-stable
        if any(reduce_vector(F, mat_vec(F, N.data, a), ech)):
            raise NotInSpringerFibre("flag is not in the Springer fibre of u")
        insert_row(F, ech, a)
    jumps = kernel_jumps(u, f, len(P[0]))
    for m in range(f.n, 0, -1):
        _, j = position(restrict(P, m), m)
        if not jumps[j - 1][m - 1] or jumps[j][m - 1]:
            return False
    return True


def in_steinberg_cell(u: Mat, P: Tableau, f: Flag) -> bool:
    """steinberg_membership, returning False instead of raising off B_u."""
    try:
        return steinberg_membership(u, P, f)
    except NotInSpringerFibre:
        return False


def restricted_columns(u: Mat, V: Subspace) -> tuple[int, ...]:
    """Column lengths of the Jordan type of N restricted to an N-stable V."""
    _, kers, _ = _nilpotent_context(u)
    dims = [intersect(K, V).dim for K in kers]
    return tuple(x for x in (dims[t] - dims[t - 1] for t in range(1, len(dims))) if x)


def spaltenstein_tableau(u: Mat, f: Flag) -> Tableau:
    """Record where the Jordan type of N|V_m gains its box as m grows."""
    _check_dims(u, f)
    if not springer_membership(u, f):
        raise NotInSpringerFibre("flag is not in the Springer fibre of u")
    rows: list[list[int]] = []
    prev: tuple = ()
    chain = f.subspaces()
    for m in range(1, f.n + 1):
        cols = restricted_columns(u, chain[m])
        grown = [j for j in range(len(cols)) if cols[j] != (prev[j] if j < len(prev) else 0)]
        assert len(grown) == 1 and cols[grown[0]] == (prev[grown[0]] if grown[0] < len(prev) else 0) + 1
        row = cols[grown[0]] - 1
        if row == len(rows):
            rows.append([])
        rows[row].append(m)
        prev = cols
    return tuple(tuple(r) for r in rows)


def partial_indices(parts: Partition) -> list[int]:
    """c_1, c_1 + c_2, ... strictly below n."""
    cols = conjugate_partition(parts)
    out, s = [], 0
    for c in cols[:-1]:
        s += c
        out.append(s)
    return out


def component_index(f: Flag, parts: Partition) -> tuple[Subspace, ...]:
    """The rational partial flag (V_{c_1}, V_{c_1+c_2}, ...) of a point of X_beta."""
    chain = f.subspaces()
    out = []
    for s in partial_indices(parts):
        if not chain[s].is_rational():
            raise MembershipError(f"V_{s} is not Frobenius-stable; flag is outside X_beta")
        out.append(chain[s])
    return tuple(out)


def standard_partial_flag(parts: Partition, spec: FieldSpec) -> tuple[Subspace, ...]:
    n = sum(parts)
    return tuple(Subspace.coordinate(range(1, s + 1), n, spec) for s in partial_indices(parts))


# -- enumeration -----------------------------------------------------------------------

def _lines(n: int, Q: int, pivots) -> Iterator[tuple]:
    """Normalized vectors supported off ``pivots``, lexicographically ascending."""
    comp = [i for i in range(n) if i not in pivots]
    for idx in range(len(comp) - 1, -1, -1):
        s = comp[idx]
        later = comp[idx + 1:]
        base = [0] * n
        base[s] = 1
        for tail in itertools.product(range(Q), repeat=len(later)):
            for c, x in zip(later, tail):
                base[c] = x
            yield tuple(base)


class FlagSearch:
    """Depth-first walk over complete flags in GF(Q)^n with optional constraints.

    nilpotent: keep flags with N V_t inside V_t (the Springer fibre of 1 + N).
    w: keep flags in relative position w with their Frobenius image.
    twist: (g, e) keeps flags with g F^e(V_t) = V_t.
    budget: cap on the number of candidate lines examined.
    """

    def __init__(self, n: int, spec: FieldSpec, *, nilpotent: Mat | None = None, w: Perm | None = None,
                 twist: tuple[Mat, int] | None = None, budget: int = DEFAULT_BUDGET,
                 first: tuple | None = None):
        self.n, self.spec = n, spec
        self.nil = nilpotent.data if nilpotent is not None else None
        self.target = position_table(check_perm(w)) if w is not None else None
        if w is not None and len(w) != n:
            raise ValueError("permutation size differs from n")
        self.twist = (twist[0].data, twist[1]) if twist is not None else None
        self.budget = budget
        self.visited = 0
        self.first = tuple(first) if first is not None else None

    def __iter__(self) -> Iterator[tuple]:
        return self._rec([], [], [], [])

    def count(self) -> int:
        return sum(1 for _ in self)

    def flags(self) -> Iterator[Flag]:
        for b in self:
            yield Flag(b, self.spec, _canonical=True)

    def _accept(self, v, vecs, ech_a, fvecs, ech_b):
        """Return the extended state if the prefix + v passes, else None."""
        F = self.spec
        ech_a2 = list(ech_a)
        insert_row(F, ech_a2, v)
        if self.nil is not None:
            if any(reduce_vector(F, mat_vec(F, self.nil, v), ech_a2)):
                return None
        if self.twist is not None:
            g, e = self.twist
            fr = F.frob_table()
            x = v
            for _ in range(e):
                x = [fr[a] for a in x]
            if any(reduce_vector(F, mat_vec(F, g, x), ech_a2)):
                return None
        ech_b2 = ech_b
        fv = fvecs
        if self.target is not None:
            fr = F.frob_table()
            b = tuple(fr[a] for a in v)
            ech_b2 = list(ech_b)
            insert_row(F, ech_b2, b)
            A = vecs + [v]
            fv = fvecs + [b]
            t = len(A)
            D = self.target
            e = list(ech_b2)
            grown = 0
            for i in range(1, t + 1):
                grown += insert_row(F, e, A[i - 1])
                if grown != i - D[i][t]:
                    return None
            e = list(ech_a2)
            grown = 0
            for j in range(1, t):
                grown += insert_row(F, e, fv[j - 1])
                if grown != j - D[t][j]:
                    return None
        return ech_a2, fv, ech_b2

    def _rec(self, vecs, ech_a, fvecs, ech_b):
        n = self.n
        if len(vecs) == n:
            yield tuple(vecs)
            return
        pivots = {p for p, _ in ech_a}
        if not vecs and self.first is not None:
            candidates = [self.first]
        else:
            candidates = _lines(n, self.spec.order, pivots)
        for v in candidates:
            self.visited += 1
            if self.visited > self.budget:
                raise BudgetExceeded(f"search examined more than {self.budget} candidate lines")
            state = self._accept(v, vecs, ech_a, fvecs, ech_b)
            if state is None:
                continue
            ech_a2, fv, ech_b2 = state
            yield from self._rec(vecs + [v], ech_a2, fv, ech_b2)


def enumerate_flags(n: int, spec: FieldSpec, budget: int = DEFAULT_BUDGET) -> Iterator[Flag]:
    """Every complete flag of GF(q^k)^n exactly once, in deterministic order."""
    est = gaussian_factorial(n, spec.order)
    if est > budget:
        raise BudgetExceeded(f"{est} flags exceed the enumeration budget {budget}")
    return FlagSearch(n, spec, budget=budget * n + 1).flags()


# -- varieties and point counts ------------------------------------------------------------

KINDS = ("full", "springer", "dl", "intersection", "steinberg")


@dataclass(frozen=True)
class VarietySpec:
    """A subvariety of the flag variety of GL_n over GF(q), q = p^m.

    ``u`` is given over the base field GF(q) (any k; entries must be
    rational) and is transported to GF(q^k) when counting.
    """

    kind: str
    n: int
    p: int
    m: int = 1
    u: Mat | None = field(default=None, compare=False)
    w: Perm | None = None
    P: Tableau | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown variety kind {self.kind!r}")
        if self.kind in ("springer", "intersection", "steinberg") and self.u is None:
            raise ValueError(f"kind {self.kind!r} needs a unipotent u")
        if self.kind in ("dl", "intersection") and self.w is None:
            raise ValueError(f"kind {self.kind!r} needs a permutation w")
        if self.kind == "steinberg" and self.P is None:
            raise ValueError("kind 'steinberg' needs a tableau P")
        if self.u is not None:
            if self.u.rows != self.n or not self.u.is_rational():
                raise ValueError("u must be an n x n matrix over the base field")
        if self.w is not None and len(self.w) != self.n:
            raise ValueError("w must be a permutation of n letters")

    @property
    def q(self) -> int:
        return self.p**self.m

    def field(self, k: int) -> FieldSpec:
        return make_field(self.p, self.m, k)

    def u_over(self, spec: FieldSpec) -> Mat | None:
        return None if self.u is None else self.u.to_field(spec)

    def search(self, k: int, budget: int = DEFAULT_BUDGET, first=None) -> FlagSearch:
        F = self.field(k)
        u = self.u_over(F)
        nil = u - Mat.identity(self.n, F) if u is not None else None
        w = self.w if self.kind in ("dl", "intersection") else None
        return FlagSearch(self.n, F, nilpotent=nil, w=w, budget=budget, first=first)

    def points(self, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[Flag]:
        s = self.search(k, budget)
        if self.kind == "steinberg":
            u = self.u_over(s.spec)
            return (f for f in s.flags() if steinberg_membership(u, self.P, f))
        return s.flags()

    def contains(self, f: Flag) -> bool:
        """Membership by the direct (non-pruned) predicates."""
        u = self.u_over(f.spec)
        if self.kind == "full":
            return True
        if self.kind == "springer":
            return springer_membership(u, f)
        if self.kind == "dl":
            return dl_membership(self.w, f)
        if self.kind == "intersection":
            return springer_membership(u, f) and dl_membership(self.w, f)
        return in_steinberg_cell(u, self.P, f)


def _count_worker(args):
    vs, k, budget, first = args
    s = vs.search(k, budget, first=first)
    if vs.kind == "steinberg":
        u = vs.u_over(s.spec)
        return sum(1 for f in s.flags() if steinberg_membership(u, vs.P, f))
    return s.count()


def count_points(vs: VarietySpec, k: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> int:
    """Number of GF(q^k)-points of ``vs``.

    With workers > 1 the search is split by the choice of V_1 and the pieces
    are counted in separate processes.
    """
    if workers <= 1:
        return _count_worker((vs, k, budget, None))
    F = vs.field(k)
    firsts = list(_lines(vs.n, F.order, set()))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return sum(ex.map(_count_worker, [(vs, k, budget, v) for v in firsts], chunksize=max(1, len(firsts) // (4 * workers))))


def rational_partial_flags(parts: Partition, spec: FieldSpec) -> list[tuple[Subspace, ...]]:
    """All Frobenius-stable partial flags with dims c_1, c_1 + c_2, ... (brute force)."""
    from .linalg import enumerate_subspaces

    n = sum(parts)
    base = spec.base_field()
    dims = partial_indices(parts)
    by_dim = {d: enumerate_subspaces(n, base, d) for d in set(dims)}
    out = [()]
    for d in dims:
        out = [pf + (s,) for pf in out for s in by_dim[d] if not pf or contains(s, pf[-1])]
    return [tuple(Subspace.span(s.basis.to_field(spec).data, n, spec) for s in pf) for pf in out]
