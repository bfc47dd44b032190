"""Exact LP engine: branches, verification, determinism."""

import random
from fractions import Fraction

import pytest

from wvcsp.exactlp import (
    EQ,
    GEQ,
    Certificate,
    LinearSystem,
    Solution,
    UnboundedError,
    dump_lpsys,
    maximize,
    solve_farkas,
    verify_outcome,
)


def test_single_trivial_inequality():
    sys = LinearSystem.build(1, [([1], 0, GEQ)])
    out = solve_farkas(sys)
    assert isinstance(out, Solution) and out.x == (0,)


def test_contradictory_equalities_with_free_constant():
    sys = LinearSystem.build(
        1, [([1], 1, EQ), ([1], 0, EQ)], with_free_constant=True
    )
    out = solve_farkas(sys)
    assert isinstance(out, Certificate)
    assert sum(out.y) == 0
    assert sum(y * b for y, (_, b, _) in zip(out.y, sys.rows)) > 0


def test_free_constant_solution():
    # x = 5 + C is solvable with x = 0, C = -5
    sys = LinearSystem.build(1, [([1], 5, EQ)], with_free_constant=True)
    out = solve_farkas(sys)
    assert isinstance(out, Solution)
    assert out.x[0] == out.constant + 5


def test_verify_rejects_perturbed_solution():
    sys = LinearSystem.build(2, [([1, 1], 2, EQ)])
    out = solve_farkas(sys)
    assert verify_outcome(sys, out)
    bad = Solution((out.x[0] + 1, out.x[1]), out.constant)
    assert not verify_outcome(sys, bad)


def test_verify_rejects_sign_flipped_certificate():
    sys = LinearSystem.build(1, [([0], 1, GEQ), ([0], -2, GEQ)])
    out = solve_farkas(sys)
    assert isinstance(out, Certificate)
    flipped = Certificate(tuple(-y for y in out.y))
    assert not verify_outcome(sys, flipped)


def test_determinism():
    rng = random.Random(7)
    rows = [
        ([rng.randint(-4, 4) for _ in range(3)], rng.randint(-4, 4),
         rng.choice([EQ, GEQ]))
        for _ in range(5)
    ]
    sys = LinearSystem.build(3, rows)
    first = solve_farkas(sys)
    for _ in range(3):
        assert solve_farkas(sys) == first


def test_rhs_scaling_preserves_branch():
    rng = random.Random(11)
    for _ in range(30):
        rows = [
            ([rng.randint(-3, 3) for _ in range(2)], rng.randint(-3, 3),
             rng.choice([EQ, GEQ]))
            for _ in range(4)
        ]
        sys = LinearSystem.build(2, rows)
        out = solve_farkas(sys)
        scaled = LinearSystem.build(
            2, [(c, Fraction(3, 2) * b, k) for c, b, k in rows]
        )
        out2 = solve_farkas(scaled)
        assert isinstance(out, Solution) == isinstance(out2, Solution)
        if isinstance(out, Solution):
            check = Solution(
                tuple(Fraction(3, 2) * v for v in out.x),
                Fraction(3, 2) * out.constant,
            )
            assert verify_outcome(scaled, check)


def test_maximize_bounded():
    # max x1 + x2 subject to x1 + x2 <= 3 (as -x1 - x2 >= -3)
    sys = LinearSystem.build(2, [([-1, -1], -3, GEQ)])
    out = maximize(sys, [1, 1])
    assert isinstance(out, Solution)
    assert sum(out.x) == 3


def test_maximize_unbounded():
    sys = LinearSystem.build(1, [([1], 0, GEQ)])
    with pytest.raises(UnboundedError):
        maximize(sys, [1])


def test_maximize_infeasible_returns_certificate():
    sys = LinearSystem.build(1, [([1], 2, EQ), ([1], 1, EQ)])
    out = maximize(sys, [1])
    assert isinstance(out, Certificate)
    assert verify_outcome(sys, out)


def test_empty_system():
    sys = LinearSystem.build(2, [])
    out = solve_farkas(sys)
    assert out.x == (0, 0)


def test_dump_round_readable():
    sys = LinearSystem.build(2, [([1, -2], 3, GEQ)], with_free_constant=True)
    text = dump_lpsys(sys)
    assert text.startswith("lpsys vars 2 free_constant 1")
    assert ">= 3" in text
