"""Brute-force verification runs that emit one :class:`Report` per check.

Each report pairs a value computed by enumeration ("actual") with one from
an independent route ("expected"): a closed formula, a separate brute-force
count, or the Robinson-Schensted extraction.  Set-valued claims are reported
as violation counts with expected value 0.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import prod
from typing import Any

from .combinatorics import (
    all_perms,
    block_reversal,
    column_superstandard_tableau,
    conjugate_partition,
    enumerate_standard_tableaux,
    format_perm,
    format_tableau,
    length,
    longest_element,
    partitions,
    rs_extract,
)
from .flags import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Flag,
    FlagSearch,
    VarietySpec,
    component_index,
    count_points,
    dl_membership,
    enumerate_flags,
    gaussian_binomial,
    gaussian_factorial,
    in_steinberg_cell,
    partial_indices,
    rational_partial_flags,
    relative_position,
    springer_membership,
    standard_partial_flag,
)
from .gf import make_field, prime_power
from .linalg import Mat, Subspace, enumerate_subspaces, insert_row, reduce_vector
from .normal_forms import centralizer_dim, random_invertible, weyr_conjugator, weyr_matrix

# values with no closed form, recorded from the first brute-force run
REGRESSION = {
    # lefschetz_count((2,2), 2143, A_0 = [[0,1],[1,0]], A_1 = 0, k=1) over q=2
    "lefschetz.swap.q2.k1": 4,
}


@dataclass
class Report:
    claim_id: str
    params: dict[str, Any]
    expected: Any
    actual: Any
    passed: bool = field(init=False)
    runtime_ms: int = 0
    note: str = ""

    def __post_init__(self):
        self.passed = self.expected == self.actual

    def to_json(self) -> str:
        # "pass" is a keyword in Python, so only the serialised form uses it
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return json.dumps(_jsonable(d), default=str)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{status} {self.claim_id} [{ps}] expected={self.expected} actual={self.actual}"


def _jsonable(x):
    """Permutation keys become "2,1,4,3"-style strings; tuples become lists."""
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.perf_counter() - self.t0) * 1000)


def _fmt(parts) -> str:
    return ",".join(str(x) for x in parts)


def _lift(m: Mat, F) -> Mat:
    return m.to_field(F)


def adapted_basis_matrix(chain, n: int, spec) -> Mat:
    """g whose first dim(V) columns span V for every V in the chain."""
    ech: list = []
    cols = []
    full = Subspace.full(n, spec)
    for V in list(chain) + [full]:
        for r in V.rows:
            if any(reduce_vector(spec, r, ech)):
                insert_row(spec, ech, r)
                cols.append(r)
    return Mat.from_columns(cols, spec)


def _quotient_counts(cols, p: int, m: int, k: int, budget: int) -> list[int]:
    """|X_{w_0}(GF(q^k))| for GL_c, one entry per column length c."""
    cache: dict[int, int] = {}
    out = []
    for c in cols:
        if c not in cache:
            cache[c] = count_points(VarietySpec("dl", c, p, m, w=longest_element(c)), k, budget)
        out.append(cache[c])
    return out


# -- theorem (a) -------------------------------------------------------------------------

def verify_theorem_a(parts, q: int, k_max: int, seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[Report]:
    parts = tuple(parts)
    p, m = prime_power(q)
    n = sum(parts)
    cols = conjugate_partition(parts)
    beta = block_reversal(cols)
    T = column_superstandard_tableau(parts)
    base = make_field(p, m, 1)
    W0 = weyr_matrix(parts, base)
    rng = random.Random(seed)
    h = random_invertible(n, base, rng)
    u_conj = h @ W0 @ h.inverse()
    reports = []
    for k in range(1, k_max + 1):
        params = {"partition": _fmt(parts), "q": q, "k": k, "beta": format_perm(beta)}
        F = make_field(p, m, k)
        with _Timer() as tm:
            X = list(FlagSearch(n, F, w=beta, budget=budget).flags())
            cases = [("weyr", W0.to_field(F), Mat.identity(n, F))]
            if u_conj != W0:
                uc = u_conj.to_field(F)
                cases.append(("conjugate", uc, weyr_conjugator(uc)))
            results = []
            for label, u, g in cases:
                std = tuple(Subspace.span([g.apply(r) for r in s.rows], n, F) for s in standard_partial_flag(parts, F))
                in_bu = {f for f in X if springer_membership(u, f)}
                in_ct = {f for f in X if in_steinberg_cell(u, T, f)}
                in_c1 = {f for f in X if component_index(f, parts) == std}
                pruned = set(FlagSearch(n, F, nilpotent=u - Mat.identity(n, F), w=beta, budget=budget).flags())
                results.append((label, in_bu, in_ct, in_c1, pruned))
        for label, in_bu, in_ct, in_c1, pruned in results:
            pp = dict(params, u=label, seed=seed)
            reports += [
                Report("thm4.1a.bu_in_c1", dict(pp, check="B_u&X_beta minus C_1"), 0, len(in_bu - in_c1), tm.ms),
                Report("thm4.1a.bu_in_ct", dict(pp, check="B_u&X_beta minus C(T)"), 0, len(in_bu - in_ct), tm.ms),
                Report("thm4.1a.c1_in_bu", dict(pp, check="C_1 minus B_u"), 0, len(in_c1 - in_bu), tm.ms),
                Report("thm4.1a.eq44", dict(pp, check="B_u&X_beta = C(T)&X_beta = C_1"), True,
                       in_bu == in_ct == in_c1 == pruned, tm.ms),
            ]
        with _Timer() as tm2:
            quot = _quotient_counts(cols, p, m, k, budget)
            gp = len(rational_partial_flags(parts, base))
        reports.append(Report("thm4.1a.eq43_total", dict(params, gp=gp, quotients=quot), gp * prod(quot), len(X), tm.ms + tm2.ms))
        reports.append(Report("thm4.1a.eq43_c1", dict(params, quotients=quot), prod(quot), len(results[0][3]), tm.ms + tm2.ms))
    return reports


# -- theorem (b) -------------------------------------------------------------------------

def verify_theorem_b(blocks, q: int, k_max: int, budget: int = DEFAULT_BUDGET) -> list[Report]:
    blocks = tuple(blocks)
    if any(blocks[i] < blocks[i + 1] for i in range(len(blocks) - 1)):
        raise ValueError(f"block sizes {blocks} are not weakly decreasing; outside the theorem's scope")
    p, m = prime_power(q)
    parts = conjugate_partition(blocks)
    n = sum(blocks)
    w = block_reversal(blocks)
    base = make_field(p, m, 1)
    gp = len(rational_partial_flags(parts, base))
    reports = []
    for k in range(1, k_max + 1):
        F = make_field(p, m, k)
        W = weyr_matrix(parts, F)
        params = {"blocks": _fmt(blocks), "q": q, "k": k, "w": format_perm(w)}
        with _Timer() as tm:
            classes: dict = {}
            for f in FlagSearch(n, F, w=w, budget=budget).flags():
                classes.setdefault(component_index(f, parts), []).append(f)
            bad = 0
            for key, pts in classes.items():
                g = adapted_basis_matrix(key, n, F)
                u = g @ W @ g.inverse()
                bad += sum(1 for f in pts if not springer_membership(u, f))
            quot = _quotient_counts(blocks, p, m, k, budget)
        expected_classes = gp if prod(quot) else 0
        reports.append(Report("thm4.1b.classes", dict(params, gp=gp), expected_classes, len(classes), tm.ms))
        reports.append(Report("thm4.1b.inclusion", dict(params, check="points outside conjugated B_u"), 0, bad, tm.ms))
        sizes = sorted(set(len(v) for v in classes.values()))
        reports.append(Report("thm4.1b.class_size", params, [prod(quot)] if classes else [], sizes, tm.ms))
    return reports


# -- dimensions -------------------------------------------------------------------------------

def verify_dimensions(n_max: int, q: int, seed: int = 0) -> list[Report]:
    p, m = prime_power(q)
    F = make_field(p, m, 1)
    rng = random.Random(seed)
    reports = []
    for n in range(1, n_max + 1):
        for parts in partitions(n):
            cols = conjugate_partition(parts)
            with _Timer() as tm:
                W = weyr_matrix(parts, F)
                h = random_invertible(n, F, rng)
                u = h @ W @ h.inverse()
                cdim = centralizer_dim(u)
            params = {"partition": _fmt(parts), "q": q, "seed": seed}
            reports.append(Report("cor4.2", params, sum(c * c for c in cols), cdim, tm.ms))
            with _Timer() as tm:
                T = column_superstandard_tableau(parts)
                lw = length(rs_extract(T, T))
            springer_dim = Fraction(n * (n - 1), 2) - Fraction(n * n - sum(c * c for c in cols), 2)
            reports.append(Report("prop2.6.dim", params, springer_dim, sum(c * (c - 1) // 2 for c in cols), tm.ms))
            reports.append(Report("cor4.2.length", params, springer_dim, lw, tm.ms))
    return reports


# -- partition of the flag variety ----------------------------------------------------------------

def partition_sum_check(n: int, q: int, k: int, budget: int = DEFAULT_BUDGET) -> list[Report]:
    p, m = prime_power(q)
    F = make_field(p, m, k)
    params = {"n": n, "q": q, "k": k}
    with _Timer() as tm:
        hist = Counter(relative_position(f, f.frobenius()) for f in enumerate_flags(n, F, budget))
        pruned = {w: count_points(VarietySpec("dl", n, p, m, w=w), k, budget) for w in all_perms(n)}
    total = gaussian_factorial(n, F.order)
    return [
        Report("ex5.1.partition_sum", params, total, sum(pruned.values()), tm.ms),
        Report("ex5.1.partition_each", params, dict(hist), {w: c for w, c in pruned.items() if c}, tm.ms,
               note="each flag is counted in exactly one X_w"),
    ]


# -- examples ---------------------------------------------------------------------------------

def reproduce_examples(q: int, k_max: int, n_max_53: int = 4, budget: int = DEFAULT_BUDGET) -> list[Report]:
    p, m = prime_power(q)
    base = make_field(p, m, 1)
    reports = []
    gr24 = len(enumerate_subspaces(4, base, 2))
    reports.append(Report("ex5.1.gr24", {"q": q}, gaussian_binomial(4, 2, q), gr24))
    W22 = weyr_matrix((2, 2), base)
    bu_dim = Fraction(6) - Fraction(16 - centralizer_dim(W22), 2)
    reports.append(Report("ex5.1.dim", {"w": "3412"}, True, length((3, 4, 1, 2)) == 4 and bu_dim == 2))
    W21 = weyr_matrix((2, 1), base)
    P21 = ((1, 3), (2,))
    Q21 = ((1, 2), (3,))
    Q22 = ((1, 2), (3, 4))
    for k in range(1, k_max + 1):
        F = make_field(p, m, k)
        params = {"q": q, "k": k}
        with _Timer() as tm:
            dl = count_points(VarietySpec("dl", 4, p, m, w=(2, 1, 4, 3)), k, budget)
            inter = count_points(VarietySpec("intersection", 4, p, m, u=W22, w=(2, 1, 4, 3)), k, budget)
        reports.append(Report("ex5.1.x2143", params, gr24 * (q**k - q) ** 2, dl, tm.ms))
        reports.append(Report("ex5.1.b_u_2143", params, (q**k - q) ** 2, inter, tm.ms))
        if k >= 2:
            u = W22.to_field(F)
            x = next(a for a in F.elements() if not F.is_base(a))
            f = Flag([(1, x, 0, 0), (0, 0, 1, x), (0, 1, 0, 0), (0, 0, 0, 1)], F)
            ok = dl_membership((3, 4, 1, 2), f) and in_steinberg_cell(u, Q22, f)
            reports.append(Report("ex5.1.x3412_meets_cq", dict(params, x=F.format(x)), True, ok))
        with _Timer() as tm:
            u = W21.to_field(F)
            a = list(VarietySpec("intersection", 3, p, m, u=W21, w=(2, 1, 3)).points(k, budget))
            b = list(VarietySpec("intersection", 3, p, m, u=W21, w=(1, 3, 2)).points(k, budget))
            a_in_p = all(in_steinberg_cell(u, P21, f) for f in a)
            b_in_q = all(in_steinberg_cell(u, Q21, f) for f in b)
        reports.append(Report("ex5.2.b_u_213", params, q**k - q, len(a), tm.ms))
        reports.append(Report("ex5.2.b_u_132", params, q**k - q, len(b), tm.ms))
        reports.append(Report("ex5.2.in_cells", params, True, a_in_p and b_in_q, tm.ms))
        for n in range(2, n_max_53 + 1):
            for parts in partitions(n):
                if parts == (1,) * n:
                    continue
                with _Timer() as tm:
                    c = count_points(VarietySpec("intersection", n, p, m, u=weyr_matrix(parts, base),
                                                 w=longest_element(n)), k, budget)
                reports.append(Report("ex5.3.empty", dict(params, partition=_fmt(parts)), 0, c, tm.ms))
    return reports


# -- generic relative position ------------------------------------------------------------------

def generic_relpos_histogram(parts, P, Q, q: int, k: int, budget: int = DEFAULT_BUDGET) -> Report:
    parts = tuple(parts)
    p, m = prime_power(q)
    base = make_field(p, m, 1)
    W = weyr_matrix(parts, base)
    with _Timer() as tm:
        cp = list(VarietySpec("steinberg", len(W.data), p, m, u=W, P=P).points(k, budget))
        cq = cp if P == Q else list(VarietySpec("steinberg", len(W.data), p, m, u=W, P=Q).points(k, budget))
        if not cp or not cq:
            raise ValueError("no points in C(P) x C(Q) at this k")
        hist = Counter(relative_position(f1, f2) for f1 in cp for f2 in cq)
    mode = max(hist.items(), key=lambda kv: (kv[1], kv[0]))[0]
    params = {"partition": _fmt(parts), "P": format_tableau(P), "Q": format_tableau(Q), "q": q, "k": k,
              "pairs": sum(hist.values()), "share": round(hist[mode] / sum(hist.values()), 4)}
    return Report("prop3.7.mode", params, rs_extract(P, Q), mode, tm.ms)


def lefschetz_checks(budget: int = DEFAULT_BUDGET) -> list[Report]:
    """Identity twist against the plain intersection count, plus the archived swap value."""
    from .padic import TruncatedSeriesMat, lefschetz_count

    F = make_field(2)
    W = weyr_matrix((2, 2), F)
    reports = []
    for k in (1, 2):
        params = {"partition": "2,2", "w": "2143", "q": 2, "k": k, "g": "identity"}
        with _Timer() as tm:
            got = lefschetz_count((2, 2), (2, 1, 4, 3), TruncatedSeriesMat.identity(2, 2, F), k, budget)
            want = count_points(VarietySpec("intersection", 4, 2, 1, u=W, w=(2, 1, 4, 3)), k, budget)
        reports.append(Report("lefschetz.count", params, want, got, tm.ms))
    swap = TruncatedSeriesMat((Mat([[0, 1], [1, 0]], F), Mat.zeros(2, 2, F)))
    with _Timer() as tm:
        got = lefschetz_count((2, 2), (2, 1, 4, 3), swap, 1, budget)
    params = {"partition": "2,2", "w": "2143", "q": 2, "k": 1, "g": "swap"}
    reports.append(Report("lefschetz.count", params, REGRESSION["lefschetz.swap.q2.k1"], got, tm.ms,
                          note="regression constant"))
    return reports


def verify_all(n_max: int = 4, q: int = 2, k_max: int = 2, budget: int = DEFAULT_BUDGET) -> list[Report]:
    reports = verify_dimensions(n_max, q)
    for n in range(1, n_max + 1):
        for parts in partitions(n):
            reports += verify_theorem_a(parts, q, k_max, budget=budget)
            reports += verify_theorem_b(conjugate_partition(parts), q, k_max, budget=budget)
    for n in range(1, min(n_max, 3) + 1):
        for k in range(1, k_max + 1):
            reports += partition_sum_check(n, q, k, budget)
    reports += reproduce_examples(q, k_max, n_max_53=n_max, budget=budget)
    if q == 2 and n_max >= 4:
        reports += lefschetz_checks(budget)
    tabs = enumerate_standard_tableaux((2, 2))
    if n_max >= 4:
        for P in tabs:
            for Q in tabs:
                reports.append(generic_relpos_histogram((2, 2), P, Q, q, max(k_max, 2), budget))
    return reports
