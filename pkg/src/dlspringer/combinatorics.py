"""Partitions, standard tableaux, permutations and Robinson-Schensted.

Conventions: partitions are weakly decreasing tuples of positive ints;
tableaux are tuples of rows (row 1 on top, entries increasing along rows and
down columns); permutations are words ``(w(1), ..., w(n))`` with 1-based
values.  Boxes are addressed (row, column), 1-indexed.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from itertools import permutations
from typing import Sequence

Partition = tuple
Tableau = tuple
Perm = tuple

DEFAULT_TABLEAU_CAP = 10


class CombinatoricsError(ValueError):
    pass


# -- partitions ----------------------------------------------------------------

def check_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(int(x) for x in parts)
    if any(x <= 0 for x in parts):
        raise CombinatoricsError(f"partition {parts} has non-positive parts")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise CombinatoricsError(f"partition {parts} is not weakly decreasing")
    return parts


def conjugate_partition(parts: Sequence[int]) -> Partition:
    """Column lengths (c_1, ..., c_{r_1}) of the Young diagram."""
    parts = check_partition(parts)
    if not parts:
        return ()
    return tuple(sum(1 for r in parts if r > j) for j in range(parts[0]))


def partitions(n: int, max_part: int | None = None):
    """Partitions of n in reverse lexicographic order, (n) first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def is_rectangular(parts: Sequence[int]) -> bool:
    return len(set(parts)) <= 1


# -- tableaux ------------------------------------------------------------------

def shape(t: Tableau) -> Partition:
    return tuple(len(r) for r in t)


def tableau_size(t: Tableau) -> int:
    return sum(len(r) for r in t)


def is_standard(t: Tableau) -> bool:
    try:
        check_partition(shape(t))
    except CombinatoricsError:
        return False
    n = tableau_size(t)
    if sorted(x for r in t for x in r) != list(range(1, n + 1)):
        return False
    for i, row in enumerate(t):
        for j, x in enumerate(row):
            if j + 1 < len(row) and row[j + 1] <= x:
                return False
            if i + 1 < len(t) and j < len(t[i + 1]) and t[i + 1][j] <= x:
                return False
    return True


def check_standard(t) -> Tableau:
    t = tuple(tuple(int(x) for x in r) for r in t)
    if not is_standard(t):
        raise CombinatoricsError(f"{t} is not a standard tableau")
    return t


def position(t: Tableau, value: int) -> tuple[int, int]:
    """(row, column) of ``value``, 1-indexed."""
    for i, row in enumerate(t):
        if value in row:
            return i + 1, row.index(value) + 1
    raise KeyError(value)


def restrict(t: Tableau, m: int) -> Tableau:
    """The subtableau of entries 1..m."""
    rows = tuple(tuple(x for x in r if x <= m) for r in t)
    return tuple(r for r in rows if r)


def column_superstandard_tableau(parts: Sequence[int]) -> Tableau:
    """Fill the diagram column by column, each column top to bottom."""
    parts = check_partition(parts)
    rows = [[] for _ in parts]
    nxt = 1
    for c in conjugate_partition(parts):
        for i in range(c):
            rows[i].append(nxt)
            nxt += 1
    return tuple(tuple(r) for r in rows)


def row_superstandard_tableau(parts: Sequence[int]) -> Tableau:
    parts = check_partition(parts)
    rows, nxt = [], 1
    for r in parts:
        rows.append(tuple(range(nxt, nxt + r)))
        nxt += r
    return tuple(rows)


def enumerate_standard_tableaux(parts: Sequence[int], cap: int = DEFAULT_TABLEAU_CAP) -> list[Tableau]:
    """All standard tableaux of the given shape.

    Built by placing n in each removable corner (top corner first) and
    recursing on the smaller shape, so the order is deterministic.
    """
    parts = check_partition(parts)
    n = sum(parts)
    if n > cap:
        raise CombinatoricsError(f"n = {n} exceeds the tableau enumeration cap {cap}")

    def rec(shp: tuple) -> list[list[list[int]]]:
        total = sum(shp)
        if total == 0:
            return [[]]
        out = []
        for i, r in enumerate(shp):
            if i + 1 == len(shp) or shp[i + 1] < r:
                smaller = list(shp)
                smaller[i] -= 1
                if smaller[i] == 0:
                    smaller.pop()
                for sub in rec(tuple(smaller)):
                    rows = [list(x) for x in sub]
                    if i == len(rows):
                        rows.append([])
                    rows[i].append(total)
                    out.append(rows)
        return out

    return [tuple(tuple(r) for r in t) for t in rec(parts)]


def count_standard_tableaux(parts: Sequence[int]) -> int:
    """Hook length formula, kept independent of the enumerator."""
    from math import factorial

    parts = check_partition(parts)
    cols = conjugate_partition(parts)
    hooks = 1
    for i, r in enumerate(parts):
        for j in range(r):
            hooks *= (r - j - 1) + (cols[j] - i - 1) + 1
    return factorial(sum(parts)) // hooks


# -- permutations ----------------------------------------------------------------

def check_perm(w: Sequence[int]) -> Perm:
    w = tuple(int(x) for x in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise CombinatoricsError(f"{w} is not a permutation word")
    return w


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def longest_element(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def length(w: Perm) -> int:
    """Number of inversions."""
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[x - 1] = i + 1
    return tuple(out)


def compose(v: Perm, w: Perm) -> Perm:
    """(v o w)(i) = v(w(i))."""
    if len(v) != len(w):
        raise CombinatoricsError("permutations of different sizes")
    return tuple(v[x - 1] for x in w)


def block_reversal(blocks: Sequence[int]) -> Perm:
    """Concatenate consecutive blocks of the given sizes, each reversed."""
    out, start = [], 0
    for b in blocks:
        out.extend(range(start + b, start, -1))
        start += b
    return tuple(out)


def parse_block_reversal(w: Perm):
    """Block sizes if w is a concatenation of reversed consecutive blocks.

    Returns ``(sizes, weakly_decreasing)`` or None.
    """
    w = check_perm(w)
    sizes, s = [], 1
    n = len(w)
    while s <= n:
        e = w[s - 1]
        if e < s or tuple(w[s - 1:e]) != tuple(range(e, s - 1, -1)):
            return None
        sizes.append(e - s + 1)
        s = e + 1
    sizes = tuple(sizes)
    return sizes, all(sizes[i] >= sizes[i + 1] for i in range(len(sizes) - 1))


def perm_utils(w: Perm, op: str, other: Perm | None = None):
    if op == "length":
        return length(w)
    if op == "inverse":
        return inverse(w)
    if op == "compose":
        return compose(w, other)
    if op == "longest_element":
        return longest_element(len(w))
    if op == "parse_block_reversal":
        return parse_block_reversal(w)
    raise ValueError(f"unknown operation {op!r}")


def all_perms(n: int):
    return (tuple(p) for p in permutations(range(1, n + 1)))


def is_involution(w: Perm) -> bool:
    return compose(w, w) == identity_perm(len(w))


# -- Robinson-Schensted ----------------------------------------------------------

def rs_extract(P: Tableau, Q: Tableau) -> Perm:
    """The permutation w(P, Q) by reverse bumping.

    For m = n, ..., 1: take the box of m in Q, remove the entry of P in that
    box and push it up row by row, each time replacing the largest smaller
    entry; whatever leaves the first row is w(m).
    """
    P = check_standard(P)
    Q = check_standard(Q)
    if shape(P) != shape(Q):
        raise CombinatoricsError(f"shapes {shape(P)} and {shape(Q)} differ")
    P = [list(r) for r in P]
    Q = [list(r) for r in Q]
    n = sum(len(r) for r in P)
    w = [0] * n
    for m in range(n, 0, -1):
        i, j = position(tuple(tuple(r) for r in Q), m)
        i -= 1
        Q[i].pop()
        x = P[i].pop()
        assert len(P[i]) == j - 1
        if not P[i]:
            P.pop(i)
            Q.pop(i)
        for row in range(i - 1, -1, -1):
            r = P[row]
            k = bisect_left(r, x) - 1
            r[k], x = x, r[k]
        w[m - 1] = x
    return tuple(w)


def rs_insert(w: Perm) -> tuple[Tableau, Tableau]:
    """Schensted row insertion: (insertion tableau P, recording tableau Q)."""
    w = check_perm(w)
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(w, start=1):
        row = 0
        while True:
            if row == len(P):
                P.append([x])
                Q.append([step])
                break
            r = P[row]
            k = bisect_right(r, x)
            if k == len(r):
                r.append(x)
                Q[row].append(step)
                break
            r[k], x = x, r[k]
            row += 1
    return tuple(tuple(r) for r in P), tuple(tuple(r) for r in Q)


def beta_word(parts: Sequence[int]) -> Perm:
    """Product of the reversions of the columns of the column-superstandard tableau."""
    return block_reversal(conjugate_partition(parts))


# -- text formats ----------------------------------------------------------------

def parse_partition(text: str) -> Partition:
    return check_partition(int(t) for t in text.split(",") if t.strip())


def parse_perm(text: str) -> Perm:
    text = text.strip()
    if "," in text:
        return check_perm(int(t) for t in text.split(","))
    return check_perm(int(c) for c in text)


def parse_tableau(text: str) -> Tableau:
    return check_standard(tuple(int(t) for t in row.split(",")) for row in text.split(";"))


def format_partition(parts: Partition) -> str:
    return ",".join(str(x) for x in parts)


def format_perm(w: Perm) -> str:
    return ",".join(str(x) for x in w)


def format_tableau(t: Tableau) -> str:
    return ";".join(",".join(str(x) for x in r) for r in t)
