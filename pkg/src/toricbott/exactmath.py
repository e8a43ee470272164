"""Exact rational linear algebra and strict-inequality LP feasibility.

All arithmetic is exact: arbitrary-precision integers and stdlib
``fractions.Fraction`` (a value that happens to be integral is kept as a
plain ``int``).  No floating point appears anywhere; ranks, kernels and LP
verdicts are exact yes/no facts, so there is no tolerance to tune.

The LP solver is a dense two-phase tableau simplex with Bland's rule.  With
exact pivots, cycling is the only possible failure mode and Bland's rule
rules it out.  Problem sizes in this package are tiny (tens of rows), so a
dense tableau is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence


class ComplexNotExactlyComposable(ValueError):
    """Consecutive differentials of a complex do not compose to zero."""


class EmptyInput(ValueError):
    """The operation requires a nonempty polyhedron."""


class UnboundedAuxiliary(RuntimeError):
    """The slack-maximization LP reported unbounded; eps <= 1 forbids this."""


def as_rational(x):
    """Normalize a number to ``int`` when integral, ``Fraction`` otherwise."""
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


@dataclass(frozen=True)
class QMatrix:
    """Dense row-major matrix over the rationals."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise ValueError("entry count must equal rows x cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def transpose(self) -> "QMatrix":
        return QMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def mul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ot = other.entries
        out = []
        for row in self.entries:
            new = []
            for j in range(other.cols):
                acc = 0
                for k, a in enumerate(row):
                    if a:
                        acc += a * ot[k][j]
                new.append(as_rational(acc))
            out.append(tuple(new))
        return QMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


def _integer_rows(m: QMatrix) -> list:
    """Row-scale a rational matrix to integers (rank/kernel preserving)."""
    out = []
    for row in m.entries:
        mult = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(x * mult) for x in row])
    return out


def rank(m: QMatrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    mat = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pivot = mat[r][col]
        for i in range(r + 1, nrows):
            factor = mat[i][col]
            if factor == 0 and prev == 1:
                continue
            rowi, rowr = mat[i], mat[r]
            for j in range(col + 1, ncols):
                rowi[j] = (pivot * rowi[j] - factor * rowr[j]) // prev
            rowi[col] = 0
        prev = pivot
        r += 1
        if r == nrows:
            break
    return r


def det(m: QMatrix):
    """Exact determinant of a square rational matrix."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    mat = [[Fraction(x) for x in row] for row in m.entries]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            sign = -sign
        pivot = mat[col][col]
        result *= pivot
        for i in range(col + 1, n):
            factor = mat[i][col] / pivot
            if factor:
                for j in range(col, n):
                    mat[i][j] -= factor * mat[col][j]
    return as_rational(sign * result)


def invert(m: QMatrix) -> QMatrix:
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    if m.rows != m.cols:
        raise ValueError("inverse needs a square matrix")
    n = m.rows
    mat = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m.entries)]
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        mat[col], mat[piv] = mat[piv], mat[col]
        pivot = mat[col][col]
        mat[col] = [x / pivot for x in mat[col]]
        for i in range(n):
            if i != col and mat[i][col]:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[col])]
    return QMatrix.from_rows([row[n:] for row in mat])


@dataclass(frozen=True)
class ChainComplex:
    """Cochain complex d_i : C^i -> C^{i+1} given by its differentials.

    Term dimensions are carried explicitly so that single-term complexes
    (no differentials at all) are still well-defined.
    """

    dims: tuple
    differentials: tuple

    def __post_init__(self):
        if len(self.dims) != len(self.differentials) + 1:
            raise ValueError("need exactly one more term than differential")
        for i, d in enumerate(self.differentials):
            if d.cols != self.dims[i] or d.rows != self.dims[i + 1]:
                raise ValueError(f"differential {i} has shape {d.rows}x{d.cols}, "
                                 f"expected {self.dims[i + 1]}x{self.dims[i]}")

    @classmethod
    def from_differentials(cls, diffs: Sequence[QMatrix]) -> "ChainComplex":
        diffs = tuple(diffs)
        if not diffs:
            raise ValueError("cannot infer term dimensions without differentials")
        dims = tuple([d.cols for d in diffs] + [diffs[-1].rows])
        return cls(dims, diffs)


def cohomology_dims(c: ChainComplex) -> list:
    """Exact cohomology dimensions h^i = dim ker d_i - rank d_{i-1}."""
    for i in range(len(c.differentials) - 1):
        if not c.differentials[i + 1].mul(c.differentials[i]).is_zero():
            raise ComplexNotExactlyComposable(f"d_{i + 1} . d_{i} != 0")
    ranks = [rank(d) for d in c.differentials]
    out = []
    for i, dim in enumerate(c.dims):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i > 0 else 0
        out.append(dim - r_out - r_in)
    return out


class _Unbounded(Exception):
    pass


def _pivot(tableau, rhs, basis, row, col):
    pivot = tableau[row][col]
    inv = Fraction(1) / pivot
    tableau[row] = [x * inv for x in tableau[row]]
    rhs[row] *= inv
    prow = tableau[row]
    for i in range(len(tableau)):
        if i == row:
            continue
        factor = tableau[i][col]
        if factor:
            tableau[i] = [a - factor * b for a, b in zip(tableau[i], prow)]
            rhs[i] -= factor * rhs[row]
    basis[row] = col


def _run_simplex(tableau, rhs, basis, cost):
    """Minimize cost over the current basic feasible tableau (Bland's rule)."""
    ncols = len(cost)
    while True:
        cb = [cost[b] for b in basis]
        support = [i for i, v in enumerate(cb) if v]
        entering = None
        for j in range(ncols):
            red = cost[j]
            for i in support:
                t = tableau[i][j]
                if t:
                    red -= cb[i] * t
            if red < 0:
                entering = j
                break
        if entering is None:
            return sum(cb[i] * rhs[i] for i in support)
        leave = None
        best = None
        for i in range(len(basis)):
            t = tableau[i][entering]
            if t > 0:
                ratio = rhs[i] / t
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise _Unbounded
        _pivot(tableau, rhs, basis, leave, entering)


def lp_max(a_rows, b, c, nonneg: bool = False):
    """Maximize c.x subject to a_rows.x <= b (exact two-phase simplex).

    Returns (status, x, value) with status one of "optimal", "infeasible",
    "unbounded".  Variables are free by default and split x = u - v
    internally; with ``nonneg`` they are constrained to x >= 0 instead,
    which halves the tableau.
    """
    m = len(a_rows)
    n = len(c)
    F0 = Fraction(0)
    nsplit = n if nonneg else 2 * n
    ncols = nsplit + m
    tableau = []
    rhs = []
    flipped = []
    for i in range(m):
        coeffs = [Fraction(x) for x in a_rows[i]]
        row = coeffs + ([] if nonneg else [-x for x in coeffs]) + [F0] * m
        row[nsplit + i] = Fraction(1)
        bi = Fraction(b[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
            flipped.append(i)
        tableau.append(row)
        rhs.append(bi)
    # Phase I is only needed where the slack cannot start basic, i.e. on
    # sign-flipped rows; artificials are added just there.
    basis = [nsplit + i for i in range(m)]
    if flipped:
        for pos, i in enumerate(flipped):
            for k in range(m):
                tableau[k].append(Fraction(1 if k == i else 0))
            basis[i] = ncols + pos
        cost1 = [F0] * ncols + [Fraction(1)] * len(flipped)
        val = _run_simplex(tableau, rhs, basis, cost1)
        if val > 0:
            return "infeasible", None, None
        for i in range(len(basis) - 1, -1, -1):
            if basis[i] >= ncols:
                piv = next((j for j in range(ncols) if tableau[i][j] != 0), None)
                if piv is None:
                    del tableau[i]
                    del rhs[i]
                    del basis[i]
                else:
                    _pivot(tableau, rhs, basis, i, piv)
        for row in tableau:
            del row[ncols:]
    cost2 = [-Fraction(x) for x in c]
    if not nonneg:
        cost2 += [Fraction(x) for x in c]
    cost2 += [F0] * m
    try:
        val2 = _run_simplex(tableau, rhs, basis, cost2)
    except _Unbounded:
        return "unbounded", None, None
    values = {basis[i]: rhs[i] for i in range(len(basis))}
    if nonneg:
        x = [as_rational(values.get(j, F0)) for j in range(n)]
    else:
        x = [as_rational(values.get(j, F0) - values.get(n + j, F0)) for j in range(n)]
    return "optimal", x, as_rational(-val2)


def lp_feasible_strict(a: QMatrix, b: Sequence, strict: Optional[Sequence[bool]] = None,
                       nonneg: bool = False):
    """Witness for {a.x < b on strict rows, a.x <= b on the rest}, or None.

    Feasibility of the open system is decided by maximizing a slack eps with
    a.x + eps <= b on strict rows and eps <= 1; the system is feasible iff
    the optimum eps is positive, and the witness then satisfies every strict
    row with exact slack >= eps.  ``nonneg`` restricts the witness to x >= 0.
    """
    nvars = a.cols
    if strict is None:
        strict = [True] * a.rows
    if len(strict) != a.rows or len(b) != a.rows:
        raise ValueError("row count mismatch")
    rows = []
    rhs = []
    for i in range(a.rows):
        rows.append(list(a.entries[i]) + [1 if strict[i] else 0])
        rhs.append(b[i])
    rows.append([0] * nvars + [1])
    rhs.append(1)
    status, x, value = lp_max(rows, rhs, [0] * nvars + [1], nonneg=nonneg)
    if status == "infeasible":
        return None
    if status == "unbounded":
        raise UnboundedAuxiliary("eps <= 1 should bound the auxiliary LP")
    if value > 0:
        return [as_rational(v) for v in x[:nvars]]
    return None


def polyhedron_bounded(a: QMatrix, b: Sequence) -> bool:
    """True iff the nonempty polyhedron {x : a.x <= b} is bounded.

    Boundedness is equivalent to the recession cone {x : a.x <= 0} being
    trivial, decided by one LP per signed coordinate direction.
    """
    status, _, _ = lp_max([list(row) for row in a.entries], list(b), [0] * a.cols)
    if status == "infeasible":
        raise EmptyInput("polyhedron is empty")
    zero_rhs = [0] * a.rows
    for i in range(a.cols):
        for sign in (1, -1):
            direction = [0] * a.cols
            direction[i] = sign
            rows = [list(row) for row in a.entries] + [direction]
            status, _, value = lp_max(rows, zero_rhs + [1], direction)
            if status == "unbounded" or (status == "optimal" and value > 0):
                return False
    return True
