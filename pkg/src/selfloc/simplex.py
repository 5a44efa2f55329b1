"""Phase-1 simplex over exact rationals.

Solves the feasibility question ``A x <= b`` for free (sign-unrestricted)
``x``. Pivoting follows Bland's rule, so the method terminates without
cycling. When the system is infeasible a Farkas certificate ``y >= 0`` with
``y A = 0`` and ``y b < 0`` is returned alongside the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class NumericOverflow(ArithmeticError):
    pass


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None
    pivots: int = 0


def _check_size(v: Fraction, max_bits):
    if max_bits is not None and (abs(v.numerator).bit_length() > max_bits
                                 or v.denominator.bit_length() > max_bits):
        raise NumericOverflow(f"rational magnitude exceeds {max_bits} bits")


def solve_feasibility(A, b, max_bits: int | None = 4096) -> Feasibility:
    """Decide whether ``A x <= b`` has a solution, exactly.

    Each row ``i`` becomes ``s_i * (A_i x + w_i) + a_i = |b_i|`` with
    ``x = u - v``, slack ``w >= 0`` and artificial ``a >= 0``, where
    ``s_i`` is the sign making the right-hand side nonnegative. Phase 1
    minimises the sum of artificials.
    """
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged constraint matrix")
    if m == 0:
        return Feasibility(True, tuple(Fraction(0) for _ in range(n)))

    # columns: u (n), v (n), w (m), a (m)
    ncol = 2 * n + 2 * m
    art0 = 2 * n + m
    T = []
    rhs = []
    for i in range(m):
        sgn = 1 if b[i] >= 0 else -1
        row = [Fraction(0)] * ncol
        for j in range(n):
            row[j] = sgn * A[i][j]
            row[n + j] = -sgn * A[i][j]
        row[2 * n + i] = Fraction(sgn)
        row[art0 + i] = Fraction(1)
        T.append(row)
        rhs.append(sgn * b[i])
    basis = [art0 + i for i in range(m)]
    cost = [Fraction(0)] * art0 + [Fraction(1)] * m

    # reduced costs r_j = c_j - c_B B^-1 A_j; objective = c_B B^-1 b
    red = cost[:]
    obj = Fraction(0)
    for i in range(m):
        for j in range(ncol):
            red[j] -= T[i][j]
        obj += rhs[i]

    pivots = 0
    while True:
        enter = next((j for j in range(ncol) if red[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = rhs[i] / T[i][enter]
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    best, leave = ratio, i
        if leave is None:
            # Phase 1 objective is bounded below by zero.
            raise AssertionError("unbounded phase-1 direction")
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        rhs[leave] /= piv
        for i in range(m):
            f = T[i][enter]
            if i != leave and f != 0:
                T[i] = [vi - f * vl for vi, vl in zip(T[i], T[leave])]
                rhs[i] -= f * rhs[leave]
                _check_size(rhs[i], max_bits)
        f = red[enter]
        red = [r - f * vl for r, vl in zip(red, T[leave])]
        obj += f * rhs[leave]
        _check_size(obj, max_bits)
        basis[leave] = enter
        pivots += 1

    if obj == 0:
        vals = [Fraction(0)] * ncol
        for i, j in enumerate(basis):
            vals[j] = rhs[i]
        x = tuple(vals[j] - vals[n + j] for j in range(n))
        return Feasibility(True, x=x, pivots=pivots)

    # Row duals of the phase-1 LP are cost - reduced cost on the artificial
    # columns; undoing the row sign flip gives the multiplier on A x <= b.
    y = []
    for i in range(m):
        dual = cost[art0 + i] - red[art0 + i]
        sgn = 1 if b[i] >= 0 else -1
        y.append(-sgn * dual)
    return Feasibility(False, certificate=tuple(y), pivots=pivots)


def check_solution(A, b, x) -> bool:
    return all(sum((Fraction(a) * xi for a, xi in zip(row, x)), Fraction(0)) <= bi
               for row, bi in zip(A, b))


def check_certificate(A, b, y) -> bool:
    """True when ``y`` proves ``A x <= b`` infeasible (Farkas)."""
    if any(v < 0 for v in y):
        return False
    n = len(A[0]) if A else 0
    for j in range(n):
        if sum((yi * Fraction(row[j]) for yi, row in zip(y, A)), Fraction(0)) != 0:
            return False
    return sum((yi * Fraction(bi) for yi, bi in zip(y, b)), Fraction(0)) < 0
