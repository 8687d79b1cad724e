"""GL_d over truncated power series F[pi]/pi^r acting on B_{u,w}.

For rectangular u with Jordan type (r, ..., r) (d parts) the block Toeplitz
embedding M_d(F[pi]/pi^r) -> M_{dr}(F) lands in the centraliser of the Weyr
form, so units act on B_u and, when their entries are rational, on every
X_w as well.  Fixed points of g o F^k are counted by enumeration over
GF(q^(k * ord g)), where all of them live.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .combinatorics import Partition, Perm, check_partition, check_perm, conjugate_partition, is_rectangular
from .flags import DEFAULT_BUDGET, BudgetExceeded, Flag, FlagSearch
from .gf import FieldSpec
from .linalg import Mat
from .normal_forms import weyr_matrix

DEFAULT_ORDER_CAP = 10_000


class NotRectangularError(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedSeriesMat:
    """A_0 + A_1 pi + ... + A_{r-1} pi^(r-1) with d x d coefficients."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if not cs:
            raise ValueError("need at least one coefficient matrix")
        d, spec = cs[0].rows, cs[0].spec
        if any(a.shape != (d, d) or a.spec is not spec for a in cs):
            raise ValueError("coefficients must be d x d matrices over one field")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def identity(cls, d: int, r: int, spec: FieldSpec) -> "TruncatedSeriesMat":
        return cls((Mat.identity(d, spec),) + tuple(Mat.zeros(d, d, spec) for _ in range(r - 1)))

    @property
    def d(self) -> int:
        return self.coeffs[0].rows

    @property
    def r(self) -> int:
        return len(self.coeffs)

    @property
    def spec(self) -> FieldSpec:
        return self.coeffs[0].spec

    def is_unit(self) -> bool:
        return self.coeffs[0].is_invertible()

    def is_rational(self) -> bool:
        return all(a.is_rational() for a in self.coeffs)

    def __add__(self, other: "TruncatedSeriesMat") -> "TruncatedSeriesMat":
        self._check(other)
        return TruncatedSeriesMat(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "TruncatedSeriesMat") -> "TruncatedSeriesMat":
        self._check(other)
        d, r, F = self.d, self.r, self.spec
        out = []
        for k in range(r):
            acc = Mat.zeros(d, d, F)
            for i in range(k + 1):
                acc = acc + self.coeffs[i] @ other.coeffs[k - i]
            out.append(acc)
        return TruncatedSeriesMat(tuple(out))

    def _check(self, other):
        if (self.d, self.r) != (other.d, other.r) or self.spec is not other.spec:
            raise ValueError("truncated series matrices of different shapes")

    def to_field(self, spec: FieldSpec) -> "TruncatedSeriesMat":
        return TruncatedSeriesMat(tuple(a.to_field(spec) for a in self.coeffs))

    def format(self) -> str:
        return "\n\n".join(a.format() for a in self.coeffs)


def parse_series(text: str, spec: FieldSpec) -> TruncatedSeriesMat:
    """r blocks of d rows, blocks separated by blank lines, A_0 first."""
    blocks = [b for b in text.strip().split("\n\n") if b.strip()]
    mats = [Mat([[spec.parse(t) for t in ln.split()] for ln in b.strip().splitlines()], spec) for b in blocks]
    return TruncatedSeriesMat(tuple(mats))


def embed(a: TruncatedSeriesMat) -> Mat:
    """Block upper-triangular Toeplitz matrix with A_{j-i} in block (i, j)."""
    d, r, F = a.d, a.r, a.spec
    n = d * r
    data = [[0] * n for _ in range(n)]
    for bi in range(r):
        for bj in range(bi, r):
            A = a.coeffs[bj - bi].data
            for x in range(d):
                data[bi * d + x][bj * d:(bj + 1) * d] = A[x]
    return Mat(data, F, n)


def rectangular_shape(parts) -> tuple[int, int]:
    """(d, r) for the rectangle with d rows of length r."""
    parts = check_partition(parts)
    if not parts or not is_rectangular(parts):
        raise NotRectangularError(f"{parts} is not a rectangular partition")
    return len(parts), parts[0]


def centralizer_check(parts, a: TruncatedSeriesMat) -> bool:
    d, r = rectangular_shape(parts)
    if (a.d, a.r) != (d, r):
        raise ValueError(f"series matrix has shape (d, r) = {(a.d, a.r)}, expected {(d, r)}")
    W = weyr_matrix(parts, a.spec)
    g = embed(a)
    return W @ g == g @ W


def act_on_flag(g: TruncatedSeriesMat, f: Flag) -> Flag:
    if not g.is_unit():
        raise ValueError("only units act on flags")
    if not g.is_rational():
        raise ValueError("coefficients must have Frobenius-fixed entries")
    if g.spec is not f.spec:
        g = g.to_field(f.spec)
    return f.apply(embed(g))


def multiplicative_order(g: Mat, cap: int = DEFAULT_ORDER_CAP) -> int:
    I = Mat.identity(g.rows, g.spec)
    x = g
    for s in range(1, cap + 1):
        if x == I:
            return s
        x = x @ g
    raise BudgetExceeded(f"order of g exceeds the cap {cap}")


def lefschetz_count(parts, w: Perm, g: TruncatedSeriesMat, k: int,
                    budget: int = DEFAULT_BUDGET, order_cap: int = DEFAULT_ORDER_CAP) -> int:
    """#{f in B_{W(u), w} : embed(g) F^k(f) = f}.

    ``g`` may be given over any field of the tower with the right p and m;
    its entries must be rational.
    """
    d, r = rectangular_shape(parts)
    w = check_perm(w)
    if (g.d, g.r) != (d, r) or len(w) != d * r:
        raise ValueError("sizes of partition, permutation and series matrix disagree")
    if not g.is_unit() or not g.is_rational():
        raise ValueError("g must be a unit with rational coefficients")
    G = embed(g)
    s = multiplicative_order(G, order_cap)
    F = g.spec.with_k(k * s)
    G = G.to_field(F)
    W = weyr_matrix(parts, F)
    N = W - Mat.identity(d * r, F)
    search = FlagSearch(d * r, F, nilpotent=N, w=w, twist=(G, k), budget=budget)
    return search.count()
