"""Unipotent matrices over GF(q): Jordan type, Weyr form, rational conjugators.

All inputs are n x n matrices whose entries are fixed by the q-Frobenius,
i.e. matrices over the base field embedded in GF(q^k).
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import Partition, Perm, beta_word, conjugate_partition, check_partition
from .gf import FieldSpec
from .linalg import Mat, Subspace, insert_row, kernel, rank, reduce_vector


class NotUnipotentError(ValueError):
    pass


def nilpotent_part(u: Mat) -> Mat:
    return u - Mat.identity(u.rows, u.spec)


def _check_unipotent(u: Mat) -> Mat:
    if u.rows != u.cols:
        raise NotUnipotentError("unipotent matrices are square")
    if not u.is_rational():
        raise NotUnipotentError("entries must lie in the base field GF(q)")
    N = nilpotent_part(u)
    if any(any(r) for r in (N ** u.rows).data):
        raise NotUnipotentError("u - 1 is not nilpotent")
    return N


def kernel_dims(N: Mat) -> list[int]:
    """[dim Ker N^0, dim Ker N^1, ...] up to stabilisation."""
    n = N.rows
    dims = [0]
    P = Mat.identity(n, N.spec)
    while dims[-1] < n:
        P = P @ N
        d = n - rank(P)
        if d == dims[-1]:
            break
        dims.append(d)
    return dims


def jordan_type(u: Mat) -> Partition:
    """Jordan block sizes of u, read off from dim Ker N^t."""
    N = _check_unipotent(u)
    dims = kernel_dims(N)
    cols = tuple(dims[t] - dims[t - 1] for t in range(1, len(dims)))
    return conjugate_partition(cols)


def weyr_matrix(parts, spec: FieldSpec) -> Mat:
    """The Weyr form with diagonal blocks I_{c_i} and superdiagonal blocks (I; 0)."""
    parts = check_partition(parts)
    cols = conjugate_partition(parts)
    n = sum(parts)
    data = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    offsets = [0]
    for c in cols:
        offsets.append(offsets[-1] + c)
    for i in range(len(cols) - 1):
        for t in range(cols[i + 1]):
            data[offsets[i] + t][offsets[i + 1] + t] = 1
    return Mat(data, spec, n)


def jordan_matrix(parts, spec: FieldSpec) -> Mat:
    """diag(J_{r_1}, ..., J_{r_d}) with ones on the superdiagonal."""
    parts = check_partition(parts)
    n = sum(parts)
    data = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    start = 0
    for r in parts:
        for t in range(r - 1):
            data[start + t][start + t + 1] = 1
        start += r
    return Mat(data, spec, n)


def jordan_chains(N: Mat) -> list[list[tuple]]:
    """A basis of Jordan chains for the nilpotent N, longest chains first.

    Each chain is [x, N x, ..., N^(h-1) x] with N^h x = 0.  Heights are
    processed from the top: at height h the images of the longer chains are
    extended by kernel vectors independent modulo Ker N^(h-1).
    """
    n = N.rows
    F = N.spec
    kers = [Subspace.zero(n, F)]
    P = Mat.identity(n, F)
    while kers[-1].dim < n:
        P = P @ N
        kers.append(kernel(P))
    chains: list[list[tuple]] = []
    for h in range(len(kers) - 1, 0, -1):
        ech: list = []
        for r in kers[h - 1].rows:
            insert_row(F, ech, r)
        for ch in chains:
            insert_row(F, ech, ch[len(ch) - h])
        for x in kers[h].rows:
            if any(reduce_vector(F, x, ech)):
                insert_row(F, ech, x)
                chain = [tuple(x)]
                for _ in range(h - 1):
                    chain.append(N.apply(chain[-1]))
                chains.append(chain)
    chains.sort(key=len, reverse=True)
    return chains


def weyr_conjugator(u: Mat) -> Mat:
    """Rational g with g^-1 u g equal to the Weyr form of u.

    Columns of g are the Jordan-chain vectors ordered position-major: all
    chain bottoms (kernel vectors) first, then the vectors one step up, etc.
    """
    N = _check_unipotent(u)
    chains = jordan_chains(N)
    columns = []
    height = len(chains[0]) if chains else 0
    for level in range(1, height + 1):
        for ch in chains:
            if len(ch) >= level:
                columns.append(ch[len(ch) - level])
    return Mat.from_columns(columns, u.spec)


def centralizer_dim(u: Mat) -> int:
    """Nullity of X -> uX - Xu on n x n matrices."""
    _check_unipotent(u)
    n, F = u.rows, u.spec
    rows = []
    # unknown X[a][b] sits at column a*n + b; equation (i, j) is (uX - Xu)[i][j]
    for i in range(n):
        for j in range(n):
            eq = [0] * (n * n)
            for t in range(n):
                c = u.data[i][t]
                if c:
                    eq[t * n + j] = F.add(eq[t * n + j], c)
                c = u.data[t][j]
                if c:
                    eq[i * n + t] = F.sub(eq[i * n + t], c)
            rows.append(eq)
    return n * n - rank(Mat(rows, F, n * n))


def beta_of_unipotent(u: Mat) -> Perm:
    return beta_word(jordan_type(u))


@dataclass(frozen=True)
class UnipotentData:
    u: Mat
    N: Mat
    jordan: Partition
    columns: Partition

    @classmethod
    def of(cls, u: Mat) -> "UnipotentData":
        lam = jordan_type(u)
        return cls(u, nilpotent_part(u), lam, conjugate_partition(lam))


def random_invertible(n: int, spec: FieldSpec, rng) -> Mat:
    """A uniformly random element of GL_n(GF(q)), by rejection."""
    base = spec.base_elements()
    while True:
        m = Mat([[rng.choice(base) for _ in range(n)] for _ in range(n)], spec, n)
        if m.is_invertible():
            return m
