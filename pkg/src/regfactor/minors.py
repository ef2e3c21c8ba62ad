"""Characteristic matrix of a regular factor and its minors.

The formal matrix carries a root variable on every strictly lower cell
outside the ideal, zero on ideal cells and on or above the diagonal; the
characteristic version subtracts the auxiliary variable on the diagonal.
A minor is extremal when its degree strictly drops under every one-step
row-down and column-left shift.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal, Optional

from .errors import BudgetError, InputError
from .poly import LambdaPolynomial, Polynomial
from .roots import RegularIdeal

DEFAULT_SCAN_BUDGET = 20000


@dataclass(frozen=True)
class MinorSpec:
    """Row and column sets of a minor, kept ascending and of equal size."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        rows, cols = tuple(self.rows), tuple(self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if len(rows) != len(cols):
            raise InputError(f"row and column counts differ: {rows} vs {cols}")
        for seq, kind in ((rows, "rows"), (cols, "cols")):
            if any(a >= b for a, b in zip(seq, seq[1:])) or any(x < 1 for x in seq):
                raise InputError(f"{kind} must be strictly ascending and positive: {seq}")

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


@dataclass(frozen=True)
class CharMatrix:
    """The characteristic matrix attached to a regular ideal."""

    ideal: RegularIdeal

    @property
    def n(self) -> int:
        return self.ideal.n

    def entry(self, i: int, j: int) -> LambdaPolynomial:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise InputError(f"entry ({i},{j}) outside a {self.n}x{self.n} matrix")
        if i == j:
            return LambdaPolynomial.lam(-1)
        if i < j or (i, j) in self.ideal:
            return LambdaPolynomial.zero()
        return LambdaPolynomial.of_poly(Polynomial.variable((i, j)))


def characteristic_matrix(ideal: RegularIdeal) -> CharMatrix:
    """Build the characteristic matrix for ``ideal``."""
    return CharMatrix(ideal)


def phi_matrix(ideal: RegularIdeal) -> list[list[Polynomial]]:
    """The plain formal matrix (no diagonal subtraction) as nested lists."""
    n = ideal.n
    zero = Polynomial.zero()
    return [
        [
            Polynomial.variable((i, j))
            if i > j and (i, j) not in ideal
            else zero
            for j in range(1, n + 1)
        ]
        for i in range(1, n + 1)
    ]


def minor_lambda(matrix: CharMatrix, spec: MinorSpec) -> LambdaPolynomial:
    """Exact determinant of the selected submatrix of the characteristic
    matrix, expanded over column subsets."""
    n = matrix.n
    if spec.rows and (spec.rows[-1] > n or spec.cols[-1] > n):
        raise InputError(f"minor {spec} does not fit a {n}x{n} matrix")
    m = spec.size
    if m == 0:
        return LambdaPolynomial.of_poly(Polynomial.constant(1))
    entries = [[matrix.entry(i, j) for j in spec.cols] for i in spec.rows]
    zero = LambdaPolynomial.zero()
    dp: dict[int, LambdaPolynomial] = {0: LambdaPolynomial.of_poly(Polynomial.constant(1))}
    for r in range(m):
        ndp: dict[int, LambdaPolynomial] = {}
        for mask, val in dp.items():
            for c in range(m):
                if mask >> c & 1:
                    continue
                entry = entries[r][c]
                if entry.is_zero:
                    continue
                # Parity of already-used columns to the right of c.
                sign = -1 if bin(mask >> (c + 1)).count("1") % 2 else 1
                term = val * entry
                if sign < 0:
                    term = -term
                key = mask | 1 << c
                ndp[key] = ndp.get(key, zero) + term
        dp = ndp
        if not dp:
            return LambdaPolynomial.zero()
    return dp.get((1 << m) - 1, LambdaPolynomial.zero())


Direction = Literal["down", "left"]


def shift_spec(spec: MinorSpec, i: int, direction: Direction) -> Optional[MinorSpec]:
    """One-step shift: replace row i by i+1 (down) when i is a row and i+1
    is not, or column i+1 by i (left) when i+1 is a column and i is not.
    Returns None in all other cases."""
    if i < 1:
        raise InputError(f"shift index must be positive, got {i}")
    if direction == "down":
        if i in spec.rows and (i + 1) not in spec.rows:
            rows = tuple(sorted(set(spec.rows) - {i} | {i + 1}))
            return MinorSpec(rows, spec.cols)
        return None
    if direction == "left":
        if (i + 1) in spec.cols and i not in spec.cols:
            cols = tuple(sorted(set(spec.cols) - {i + 1} | {i}))
            return MinorSpec(spec.rows, cols)
        return None
    raise InputError(f"unknown shift direction {direction!r}")


def _is_extremal_given(matrix: CharMatrix, spec: MinorSpec, value: LambdaPolynomial) -> bool:
    degree = value.degree
    for i in range(1, matrix.n):
        for direction in ("down", "left"):
            shifted = shift_spec(spec, i, direction)
            if shifted is None:
                continue
            if minor_lambda(matrix, shifted).degree >= degree:
                return False
    return True


def is_extremal(
    matrix: CharMatrix, spec: MinorSpec, value: Optional[LambdaPolynomial] = None
) -> bool:
    """Whether the minor's degree strictly drops under every shift.

    Vanishing or impossible shifts count as a drop; a zero minor itself is
    rejected as input.  ``value`` may pass in a precomputed minor.
    """
    if value is None:
        value = minor_lambda(matrix, spec)
    if value.is_zero:
        raise InputError(f"minor {spec} is zero; extremality is undefined")
    return _is_extremal_given(matrix, spec, value)


def enumerate_extremal(
    ideal: RegularIdeal,
    max_size: Optional[int] = None,
    budget: int = DEFAULT_SCAN_BUDGET,
) -> list[MinorSpec]:
    """All extremal minors with a nonconstant highest coefficient, up to the
    given size, in canonical (size, rows, cols) order.

    Minors of full diagonal degree are skipped: their highest coefficient
    is a scalar and carries no invariant.  Raises BudgetError (partial
    results attached, flagged invalid) when the scan would examine more
    candidate specs than ``budget``.
    """
    n = ideal.n
    matrix = characteristic_matrix(ideal)
    max_size = n if max_size is None else min(max_size, n)
    results: list[MinorSpec] = []
    examined = 0
    for size in range(1, max_size + 1):
        for rows in itertools.combinations(range(1, n + 1), size):
            for cols in itertools.combinations(range(1, n + 1), size):
                examined += 1
                if examined > budget:
                    raise BudgetError(
                        f"extremal scan exceeded budget of {budget} specs",
                        partial=results,
                    )
                spec = MinorSpec(rows, cols)
                value = minor_lambda(matrix, spec)
                if value.is_zero or value.degree == size:
                    continue
                if _is_extremal_given(matrix, spec, value):
                    results.append(spec)
    return results
