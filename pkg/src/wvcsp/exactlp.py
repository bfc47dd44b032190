"""Exact rational linear-program feasibility with verified Farkas certificates.

Systems are two-sided: non-negative variables, mixed >= and = rows, and an
optional free additive constant on every right-hand side.  solve_farkas
returns either an exact feasible point or an exact integer certificate of
unsolvability; the returned outcome is re-verified by substitution before
it leaves this module.  Pivoting is least-index (Bland), so results are
deterministic and termination is guaranteed.  No floating point anywhere.

Tableau arithmetic runs on gmpy2 rationals for speed; everything entering
or leaving this module is a Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .errors import Caps, DEFAULT_CAPS, InputError, InternalCheckError, ResourceLimitError

GEQ = "geq"
EQ = "eq"


@dataclass(frozen=True)
class LinearSystem:
    """Rows (coeffs, rhs, kind) over num_vars non-negative variables.

    When with_free_constant is set, every right-hand side reads
    rhs + C for a single shared unconstrained rational C.
    """

    num_vars: int
    rows: tuple
    with_free_constant: bool = False

    @staticmethod
    def build(num_vars, rows, with_free_constant=False):
        norm = []
        for coeffs, rhs, kind in rows:
            coeffs = tuple(Fraction(c) for c in coeffs)
            if len(coeffs) != num_vars:
                raise InputError(
                    f"row has {len(coeffs)} coefficients, expected {num_vars}"
                )
            if kind not in (GEQ, EQ):
                raise InputError(f"unknown row kind {kind!r}")
            norm.append((coeffs, Fraction(rhs), kind))
        return LinearSystem(num_vars, tuple(norm), with_free_constant)


@dataclass(frozen=True)
class Solution:
    x: tuple
    constant: Fraction


@dataclass(frozen=True)
class Certificate:
    y: tuple  # integers, one per row


class UnboundedError(RuntimeError):
    """The phase-two objective is unbounded over the feasible region."""


_ZERO = mpq(0)
_ONE = mpq(1)
_MAX_PIVOTS = 2_000_000


class _Tableau:
    """Dense simplex tableau over gmpy2 rationals with Bland pivoting."""

    def __init__(self, matrix, rhs):
        self.m = len(matrix)
        self.ncols = len(matrix[0]) if self.m else 0
        self.rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
        self.basis = [None] * self.m
        self.obj = [_ZERO] * (self.ncols + 1)

    def set_costs(self, costs):
        """Recompute the reduced-cost row for the current basis."""
        obj = [mpq(c) for c in costs] + [_ZERO]
        for i, bcol in enumerate(self.basis):
            cb = obj[bcol]
            if cb != 0:
                row = self.rows[i]
                for j in range(self.ncols + 1):
                    if row[j]:
                        obj[j] -= cb * row[j]
        self.obj = obj

    def pivot(self, i, j):
        row = self.rows[i]
        piv = row[j]
        if piv != 1:
            inv = _ONE / piv
            self.rows[i] = row = [v * inv for v in row]
        for other in range(self.m):
            if other != i and self.rows[other][j]:
                factor = self.rows[other][j]
                target = self.rows[other]
                self.rows[other] = [
                    t - factor * v for t, v in zip(target, row)
                ]
        if self.obj[j]:
            factor = self.obj[j]
            self.obj = [t - factor * v for t, v in zip(self.obj, row + [None])]
            # keep the objective constant term consistent
            self.obj[-1] = self.obj[-1] if self.obj[-1] is not None else _ZERO
        self.basis[i] = j

    def run(self, allowed):
        """Minimize until no allowed column has negative reduced cost."""
        pivots = 0
        while True:
            enter = None
            for j in range(self.ncols):
                if allowed[j] and self.obj[j] < 0:
                    enter = j
                    break
            if enter is None:
                return
            leave = None
            best = None
            for i in range(self.m):
                a = self.rows[i][enter]
                if a > 0:
                    ratio = self.rows[i][-1] / a
                    if (
                        leave is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leave])
                    ):
                        leave = i
                        best = ratio
            if leave is None:
                raise UnboundedError("objective unbounded below")
            self.pivot(leave, enter)
            pivots += 1
            if pivots > _MAX_PIVOTS:
                raise ResourceLimitError(
                    f"simplex exceeded {_MAX_PIVOTS} pivots"
                )

    def values(self):
        vals = [_ZERO] * self.ncols
        for i, bcol in enumerate(self.basis):
            vals[bcol] = self.rows[i][-1]
        return vals


def _standard_form(sys):
    """Equality form M z = b over z >= 0; returns (M, b, layout, flips)."""
    n = sys.num_vars
    ncols = n + (2 if sys.with_free_constant else 0)
    surplus_col = {}
    for j, (_, _, kind) in enumerate(sys.rows):
        if kind == GEQ:
            surplus_col[j] = ncols
            ncols += 1
    matrix = []
    rhs = []
    flips = []
    for j, (coeffs, b, kind) in enumerate(sys.rows):
        row = [_ZERO] * ncols
        for i, c in enumerate(coeffs):
            row[i] = mpq(c.numerator, c.denominator)
        if sys.with_free_constant:
            row[n] = -_ONE
            row[n + 1] = _ONE
        if kind == GEQ:
            row[surplus_col[j]] = -_ONE
        bq = mpq(b.numerator, b.denominator)
        if bq < 0:
            row = [-v for v in row]
            bq = -bq
            flips.append(-1)
        else:
            flips.append(1)
        matrix.append(row)
        rhs.append(bq)
    return matrix, rhs, ncols, flips


def _to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


def _integerize(ys):
    denom = math.lcm(*(y.denominator for y in ys)) if ys else 1
    ints = [y.numerator * (denom // y.denominator) for y in ys]
    g = math.gcd(*(abs(v) for v in ints)) if any(ints) else 1
    return tuple(v // g for v in ints)


def _phase_one(sys):
    """Run phase one; returns (tableau, ncols, flips, feasible)."""
    matrix, rhs, ncols, flips = _standard_form(sys)
    m = len(matrix)
    # append artificial identity columns
    for i in range(m):
        matrix[i] = matrix[i] + [_ONE if j == i else _ZERO for j in range(m)]
    tab = _Tableau(matrix, rhs)
    tab.basis = list(range(ncols, ncols + m))
    tab.set_costs([_ZERO] * ncols + [_ONE] * m)
    allowed = [True] * (ncols + m)
    tab.run(allowed)
    infeas = -tab.obj[-1]  # phase-one optimum
    return tab, ncols, flips, infeas == 0


def _drive_out_artificials(tab, ncols):
    """Pivot zero-valued artificials out of the basis; drop redundant rows."""
    drop = []
    for i in range(tab.m):
        if tab.basis[i] >= ncols:
            pivot_col = None
            for j in range(ncols):
                if tab.rows[i][j] != 0:
                    pivot_col = j
                    break
            if pivot_col is None:
                drop.append(i)
            else:
                tab.pivot(i, pivot_col)
    for i in reversed(drop):
        del tab.rows[i]
        del tab.basis[i]
    tab.m = len(tab.rows)


def _certificate_from(tab, sys, ncols, flips):
    m_rows = len(sys.rows)
    # multipliers: y'_j = sum over basic artificial rows of B^-1 column j
    ys = []
    for j in range(m_rows):
        acc = _ZERO
        col = ncols + j
        for i in range(tab.m):
            if tab.basis[i] >= ncols:
                acc += tab.rows[i][col]
        ys.append(acc)
    ys = [flips[j] * _to_fraction(ys[j]) for j in range(m_rows)]
    return Certificate(_integerize(ys))


def solve_farkas(sys, caps: Caps = DEFAULT_CAPS):
    """Exact feasible point or exact integer certificate, never both."""
    if len(sys.rows) > caps.max_lp_rows:
        raise ResourceLimitError(
            f"{len(sys.rows)} rows exceed max_lp_rows cap ({caps.max_lp_rows})"
        )
    if not sys.rows:
        out = Solution(tuple(Fraction(0) for _ in range(sys.num_vars)), Fraction(0))
        return out
    tab, ncols, flips, feasible = _phase_one(sys)
    if not feasible:
        out = _certificate_from(tab, sys, ncols, flips)
    else:
        vals = tab.values()
        x = tuple(_to_fraction(v) for v in vals[: sys.num_vars])
        if sys.with_free_constant:
            constant = _to_fraction(vals[sys.num_vars]) - _to_fraction(
                vals[sys.num_vars + 1]
            )
        else:
            constant = Fraction(0)
        out = Solution(x, constant)
    if not verify_outcome(sys, out):
        raise InternalCheckError("solver outcome failed self-verification")
    return out


def maximize(sys, objective, caps: Caps = DEFAULT_CAPS):
    """Maximize a linear objective over the system's feasible region.

    Returns an optimal Solution, or the infeasibility Certificate.  Raises
    UnboundedError when no finite optimum exists.
    """
    if len(objective) != sys.num_vars:
        raise InputError("objective length does not match variable count")
    if len(sys.rows) > caps.max_lp_rows:
        raise ResourceLimitError(
            f"{len(sys.rows)} rows exceed max_lp_rows cap ({caps.max_lp_rows})"
        )
    if not sys.rows:
        if any(Fraction(c) > 0 for c in objective):
            raise UnboundedError("objective unbounded over the non-negative orthant")
        return Solution(tuple(Fraction(0) for _ in range(sys.num_vars)), Fraction(0))
    tab, ncols, flips, feasible = _phase_one(sys)
    if not feasible:
        out = _certificate_from(tab, sys, ncols, flips)
        if not verify_outcome(sys, out):
            raise InternalCheckError("solver outcome failed self-verification")
        return out
    _drive_out_artificials(tab, ncols)
    costs = [_ZERO] * ncols
    for i, c in enumerate(objective):
        c = Fraction(c)
        costs[i] = -mpq(c.numerator, c.denominator)  # maximize == minimize -c
    tab.set_costs(costs + [_ZERO] * (len(tab.rows[0]) - 1 - ncols))
    allowed = [j < ncols for j in range(len(tab.rows[0]) - 1)]
    tab.run(allowed)
    vals = tab.values()
    x = tuple(_to_fraction(v) for v in vals[: sys.num_vars])
    if sys.with_free_constant:
        constant = _to_fraction(vals[sys.num_vars]) - _to_fraction(
            vals[sys.num_vars + 1]
        )
    else:
        constant = Fraction(0)
    out = Solution(x, constant)
    if not verify_outcome(sys, out):
        raise InternalCheckError("solver outcome failed self-verification")
    return out


def verify_outcome(sys, out):
    """Re-check an outcome by direct substitution, exactly."""
    if isinstance(out, Solution):
        if len(out.x) != sys.num_vars:
            return False
        if any(v < 0 for v in out.x):
            return False
        c = out.constant if sys.with_free_constant else Fraction(0)
        for coeffs, rhs, kind in sys.rows:
            lhs = sum((a * v for a, v in zip(coeffs, out.x)), Fraction(0))
            if kind == GEQ:
                if lhs < rhs + c:
                    return False
            else:
                if lhs != rhs + c:
                    return False
        return True
    if isinstance(out, Certificate):
        ys = out.y
        if len(ys) != len(sys.rows):
            return False
        if any(not isinstance(v, int) for v in ys):
            return False
        if sys.with_free_constant and sum(ys) != 0:
            return False
        for y, (_, _, kind) in zip(ys, sys.rows):
            if kind == GEQ and y < 0:
                return False
        for i in range(sys.num_vars):
            if sum(y * row[0][i] for y, row in zip(ys, sys.rows)) > 0:
                return False
        if sum(y * row[1] for y, row in zip(ys, sys.rows)) <= 0:
            return False
        return True
    return False


def dump_lpsys(sys):
    """Debug dump for failure reproduction."""
    lines = [
        f"lpsys vars {sys.num_vars} free_constant {int(sys.with_free_constant)}"
    ]
    for coeffs, rhs, kind in sys.rows:
        rel = ">=" if kind == GEQ else "="
        body = " ".join(f"{i}={c}" for i, c in enumerate(coeffs) if c)
        lines.append(f"{rel} {rhs} : {body}")
    return "\n".join(lines) + "\n"
