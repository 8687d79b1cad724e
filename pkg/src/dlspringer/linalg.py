"""Dense matrices and subspaces over a single finite field.

Vectors are tuples of field codes.  A subspace is stored by its reduced
row-echelon basis, which is canonical, so equality of subspaces is equality
of row tuples and applying the Frobenius to a subspace is "apply entry-wise,
re-reduce".

The module-level helpers (``reduce_vector``, ``insert_row``, ``rref_rows``)
work directly on code tuples; they are what the flag enumerator calls in its
inner loop.  :class:`Mat` and :class:`Subspace` wrap them for everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf import FieldError, FieldSpec, Scalar, field_embedding, make_field

Vector = tuple  # tuple[int, ...] of field codes


# -- code-level kernels --------------------------------------------------------

def leading_index(v) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    return -1


def normalize(F: FieldSpec, v) -> Vector:
    """Scale v so that its first nonzero entry is 1."""
    i = leading_index(v)
    if i < 0:
        return tuple(v)
    c = v[i]
    if c == 1:
        return tuple(v)
    ci = F.inv(c)
    mul = F.mul
    return tuple(mul(ci, x) for x in v)


def axpy(F: FieldSpec, v, c: int, row) -> list:
    """v - c*row."""
    if F.p == 2:
        if F._mul_table is not None:
            mc = F._mul_table[c]
            return [x ^ mc[y] for x, y in zip(v, row)]
        mul = F.mul
        return [x ^ mul(c, y) for x, y in zip(v, row)]
    sub, mul = F.sub, F.mul
    return [sub(x, mul(c, y)) for x, y in zip(v, row)]


def reduce_vector(F: FieldSpec, v, echelon) -> list:
    """Eliminate the pivot coordinates of ``echelon`` from v.

    ``echelon`` is a list of (pivot, row) with row[pivot] == 1.
    """
    v = list(v)
    for piv, row in echelon:
        c = v[piv]
        if c:
            v = axpy(F, v, c, row)
    return v


def insert_row(F: FieldSpec, echelon, v) -> bool:
    """Add v to a reduced echelon basis in place; return True if the rank grew.

    Rows stay fully reduced (every pivot column is zero in every other row)
    and sorted by pivot.
    """
    v = reduce_vector(F, v, echelon)
    piv = leading_index(v)
    if piv < 0:
        return False
    v = list(normalize(F, v))
    for idx, (p2, row) in enumerate(echelon):
        c = row[piv]
        if c:
            echelon[idx] = (p2, tuple(axpy(F, row, c, v)))
    echelon.append((piv, tuple(v)))
    echelon.sort(key=lambda t: t[0])
    return True


def rref_rows(F: FieldSpec, vectors: Iterable) -> tuple[Vector, ...]:
    ech: list = []
    for v in vectors:
        insert_row(F, ech, v)
    return tuple(row for _, row in ech)


def rank_of(F: FieldSpec, vectors: Iterable) -> int:
    ech: list = []
    r = 0
    for v in vectors:
        if insert_row(F, ech, v):
            r += 1
    return r


def mat_vec(F: FieldSpec, rows, v) -> Vector:
    add, mul = F.add, F.mul
    out = []
    for row in rows:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return tuple(out)


# -- matrices ------------------------------------------------------------------

class Mat:
    """An immutable rows x cols matrix over ``spec``'s top field.

    ``data`` holds field codes row by row; indexing with ``m[i, j]`` returns a
    :class:`Scalar`.
    """

    __slots__ = ("rows", "cols", "data", "spec")

    def __init__(self, data: Sequence[Sequence], spec: FieldSpec, cols: int | None = None):
        rows_ = []
        for row in data:
            rows_.append(tuple(x.value if isinstance(x, Scalar) else int(x) for x in row))
        self.rows = len(rows_)
        self.cols = len(rows_[0]) if rows_ else (cols or 0)
        if any(len(r) != self.cols for r in rows_):
            raise ValueError("ragged matrix")
        Q = spec.order
        if any(not 0 <= x < Q for r in rows_ for x in r):
            raise FieldError("matrix entry out of range")
        self.data = tuple(rows_)
        self.spec = spec

    @classmethod
    def identity(cls, n: int, spec: FieldSpec) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], spec)

    @classmethod
    def zeros(cls, rows: int, cols: int, spec: FieldSpec) -> "Mat":
        return cls([[0] * cols for _ in range(rows)], spec, cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], spec: FieldSpec) -> "Mat":
        return cls([list(r) for r in zip(*columns)], spec)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.data[i][j], self.spec)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def _check(self, other: "Mat"):
        if other.spec is not self.spec:
            raise FieldError("matrices live in different fields")

    def __eq__(self, other):
        return isinstance(other, Mat) and self.spec is other.spec and self.data == other.data

    def __hash__(self):
        return hash((self.data, self.spec.p, self.spec.m, self.spec.k))

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        add = self.spec.add
        return Mat([[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.spec, self.cols)

    def __neg__(self) -> "Mat":
        neg = self.spec.neg
        return Mat([[neg(a) for a in r] for r in self.data], self.spec, self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c: int) -> "Mat":
        mul = self.spec.mul
        return Mat([[mul(c, a) for a in r] for r in self.data], self.spec, self.cols)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.spec
        cols = other.columns()
        return Mat([[mat_vec(F, [c], r)[0] for c in cols] for r in self.data], F, other.cols)

    def apply(self, v) -> Vector:
        return mat_vec(self.spec, self.data, v)

    def __pow__(self, e: int) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result, base = Mat.identity(self.rows, self.spec), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def transpose(self) -> "Mat":
        return Mat([list(c) for c in self.columns()], self.spec, self.rows)

    def inverse(self) -> "Mat":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        F = self.spec
        aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.data)]
        rref, rank = _rref_list(F, aug, limit=n)
        if rank < n or any(rref[i][i] != 1 for i in range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Mat([r[n:] for r in rref], F)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and rank(self) == self.rows

    def frobenius(self) -> "Mat":
        fr = self.spec.frob_table()
        return Mat([[fr[a] for a in r] for r in self.data], self.spec, self.cols)

    def is_rational(self) -> bool:
        """All entries lie in the base field GF(q)."""
        fr = self.spec.frob_table()
        return all(fr[a] == a for r in self.data for a in r)

    def to_field(self, spec: FieldSpec) -> "Mat":
        """Transport entries along the canonical embedding into ``spec``.

        Entries must lie in the base field GF(q); they are first restricted
        to GF(q) and then embedded.
        """
        if spec is self.spec:
            return self
        if not self.is_rational():
            raise FieldError("only base-field matrices can be moved between fields")
        base = self.spec.base_field()
        down = {v: i for i, v in enumerate(field_embedding(base, self.spec))}
        up = field_embedding(base, spec)
        return Mat([[up[down[a]] for a in r] for r in self.data], spec, self.cols)

    def format(self) -> str:
        fmt = self.spec.format
        return "\n".join(" ".join(fmt(a) for a in r) for r in self.data)

    def __repr__(self):
        return f"Mat({[list(r) for r in self.data]}, {self.spec!r})"

    def __str__(self):
        return self.format()


def _rref_list(F: FieldSpec, rows: list[list[int]], limit: int | None = None):
    """Gauss-Jordan on a list of rows; pivots searched in columns < limit."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    limit = ncols if limit is None else limit
    r = 0
    for c in range(limit):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = axpy(F, rows[i], rows[i][c], rows[r])
        r += 1
        if r == len(rows):
            break
    return rows, r


def rref_rank(m: Mat) -> tuple[Mat, int]:
    """Reduced row-echelon form and rank."""
    if m.rows == 0:
        return m, 0
    rows, r = _rref_list(m.spec, [list(x) for x in m.data])
    return Mat(rows, m.spec, m.cols), r


def rank(m: Mat) -> int:
    return rref_rank(m)[1]


# -- subspaces -----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of spec^ambient_dim stored by its RREF row basis."""

    ambient_dim: int
    rows: tuple
    spec: FieldSpec

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int, spec: FieldSpec) -> "Subspace":
        vecs = [tuple(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise ValueError("vector length does not match the ambient dimension")
        return cls(ambient_dim, rref_rows(spec, vecs), spec)

    @classmethod
    def zero(cls, n: int, spec: FieldSpec) -> "Subspace":
        return cls(n, (), spec)

    @classmethod
    def full(cls, n: int, spec: FieldSpec) -> "Subspace":
        return cls.span([tuple(1 if i == j else 0 for j in range(n)) for i in range(n)], n, spec)

    @classmethod
    def coordinate(cls, indices: Iterable[int], n: int, spec: FieldSpec) -> "Subspace":
        """span(e_i for i in indices), indices 1-based."""
        return cls.span([tuple(1 if j == i - 1 else 0 for j in range(n)) for i in indices], n, spec)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Mat:
        return Mat(self.rows, self.spec, cols=self.ambient_dim)

    def echelon(self) -> list:
        return [(leading_index(r), r) for r in self.rows]

    def contains_vector(self, v) -> bool:
        return not any(reduce_vector(self.spec, v, self.echelon()))

    def frobenius(self) -> "Subspace":
        fr = self.spec.frob_table()
        return Subspace.span([[fr[a] for a in r] for r in self.rows], self.ambient_dim, self.spec)

    def is_rational(self) -> bool:
        fr = self.spec.frob_table()
        return all(fr[a] == a for r in self.rows for a in r)

    def format(self) -> list[list[str]]:
        fmt = self.spec.format
        return [[fmt(a) for a in r] for r in self.rows]


def _same_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim or a.spec is not b.spec:
        raise ValueError("subspaces live in different ambient spaces")


def kernel(m: Mat) -> Subspace:
    """{v : m v = 0} as a subspace of spec^cols."""
    F = m.spec
    n = m.cols
    rows = rref_rows(F, m.data)
    pivots = [leading_index(r) for r in rows]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for piv, r in zip(pivots, rows):
            v[piv] = F.neg(r[f])
        basis.append(v)
    return Subspace.span(basis, n, F)


def image(m: Mat, s: Subspace) -> Subspace:
    if s.ambient_dim != m.cols or s.spec is not m.spec:
        raise ValueError("dimension mismatch between matrix and subspace")
    return Subspace.span([m.apply(r) for r in s.rows], m.rows, m.spec)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return Subspace.span(a.rows + b.rows, a.ambient_dim, a.spec)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce [a|a] over [b|0]; rows with zero left half span a & b."""
    _same_ambient(a, b)
    n, F = a.ambient_dim, a.spec
    zero = (0,) * n
    rows = rref_rows(F, [r + r for r in a.rows] + [r + zero for r in b.rows])
    return Subspace.span([r[n:] for r in rows if not any(r[:n])], n, F)


def contains(a: Subspace, b: Subspace) -> bool:
    """b is a subspace of a."""
    _same_ambient(a, b)
    ech = a.echelon()
    F = a.spec
    return all(not any(reduce_vector(F, r, ech)) for r in b.rows)


def meet_join(a: Subspace, b: Subspace, op: str):
    if op == "intersect":
        return intersect(a, b)
    if op == "sum":
        return subspace_sum(a, b)
    if op == "contains":
        return contains(a, b)
    raise ValueError(f"unknown operation {op!r}")


def enumerate_vectors(n: int, spec: FieldSpec):
    """All vectors of spec^n in lexicographic order of codes."""
    import itertools

    return itertools.product(range(spec.order), repeat=n)


def enumerate_subspaces(n: int, spec: FieldSpec, dim: int | None = None) -> list[Subspace]:
    """Every subspace of spec^n (optionally of one dimension) by brute force.

    Intended for small oracles only.
    """
    found = {Subspace.zero(n, spec)}
    frontier = set(found)
    vectors = [v for v in enumerate_vectors(n, spec) if any(v)]
    while frontier:
        nxt = set()
        for s in frontier:
            if dim is not None and s.dim >= dim:
                continue
            for v in vectors:
                if not s.contains_vector(v):
                    t = Subspace.span(s.rows + (v,), n, spec)
                    if t not in found:
                        found.add(t)
                        nxt.add(t)
        frontier = nxt
    out = sorted(found, key=lambda s: (s.dim, s.rows))
    return out if dim is None else [s for s in out if s.dim == dim]


# -- text format ---------------------------------------------------------------

def parse_matrix(text: str) -> Mat:
    """Parse the matrix file format: header "rows cols p m k", then one row per line."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    rows, cols, p, m, k = (int(t) for t in lines[0].split())
    spec = make_field(p, m, k)
    body = [ln.split() for ln in lines[1:]]
    if len(body) != rows or any(len(r) != cols for r in body):
        raise ValueError("matrix body does not match its header")
    return Mat([[spec.parse(t) for t in r] for r in body], spec, cols)


def format_matrix(m: Mat) -> str:
    F = m.spec
    return f"{m.rows} {m.cols} {F.p} {F.m} {F.k}\n{m.format()}\n"
