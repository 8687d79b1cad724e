import json

import pytest

from dlspringer.harness import (
    REGRESSION,
    Report,
    generic_relpos_histogram,
    lefschetz_checks,
    partition_sum_check,
    reproduce_examples,
    verify_dimensions,
    verify_theorem_a,
    verify_theorem_b,
)
from dlspringer.padic import TruncatedSeriesMat, lefschetz_count
from dlspringer.gf import make_field
from dlspringer.linalg import Mat


def failures(reports):
    return [r.line() for r in reports if not r.passed]


def test_report_json_and_line():
    r = Report("x", {"q": 2}, 4, 4, 1.5)
    assert r.passed
    d = json.loads(r.to_json())
    assert d["claim_id"] == "x" and d["pass"] is True
    assert r.line().startswith("PASS")
    assert not Report("x", {}, 1, 2).passed


@pytest.mark.parametrize("parts", [(1,), (2,), (1, 1), (2, 1), (3,), (1, 1, 1), (2, 2)])
def test_theorem_a_small(parts):
    reps = verify_theorem_a(parts, 2, 2)
    assert reps and not failures(reps)


@pytest.mark.parametrize("blocks", [(1,), (2, 1), (2, 2), (3, 1), (1, 1, 1)])
def test_theorem_b_small(blocks):
    assert not failures(verify_theorem_b(blocks, 2, 2))


def test_theorem_b_rejects_increasing_blocks():
    with pytest.raises(ValueError):
        verify_theorem_b((1, 2), 2, 1)


def test_dimensions():
    assert not failures(verify_dimensions(5, 3))


def test_partition_sum():
    for k in (1, 2):
        reps = partition_sum_check(3, 2, k)
        assert not failures(reps)
        for r in reps:
            json.loads(r.to_json())
    each = json.loads(partition_sum_check(2, 2, 2)[1].to_json())
    assert each["actual"] == {"1,2": 3, "2,1": 2}


def test_examples_k2():
    reps = reproduce_examples(2, 2)
    assert not failures(reps)
    ids = {r.claim_id for r in reps}
    assert {"ex5.1.x2143", "ex5.1.b_u_2143", "ex5.2.b_u_132", "ex5.3.empty"} <= ids


def test_relpos_mode_k2():
    P = ((1, 3), (2, 4))
    assert generic_relpos_histogram((2, 2), P, P, 2, 2).passed


def test_lefschetz_checks_tag_the_regression():
    reps = lefschetz_checks()
    assert not failures(reps)
    assert [r.note for r in reps].count("regression constant") == 1


def test_regression_value():
    F = make_field(2)
    swap = TruncatedSeriesMat((Mat([[0, 1], [1, 0]], F), Mat.zeros(2, 2, F)))
    assert lefschetz_count((2, 2), (2, 1, 4, 3), swap, 1) == REGRESSION["lefschetz.swap.q2.k1"]
