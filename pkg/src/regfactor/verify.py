"""Exact verification harness.

Coadjoint action through matrix conjugation plus projection, randomized
invariance trials, skew-form rank statistics, a brute-force low-degree
invariant oracle, and an aggregate report over every checkable identity.
All trials use seeded generators with small integer entries, so a passing
seed passes forever.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import NamedTuple, Optional, Sequence

from . import linalg
from .diagram import build_diagram, crosscheck_symbols
from .errors import BudgetError, ConstructionError, InputError
from .invariants import InvariantRecord, all_invariants, triangular_decomposition
from .poly import (
    Monomial,
    Polynomial,
    bracket_single,
    jacobian_rank,
    poisson_bracket_generator,
)
from .roots import RegularIdeal, Root
from .weyl import column_max_permutation, inversions, reflection_product

DEFAULT_ORACLE_BUDGET = 100000
_ENTRY_RANGE = (-9, 9)


def _primes(count: int) -> list[int]:
    out: list[int] = []
    candidate = 2
    while len(out) < count:
        if all(candidate % p for p in out):
            out.append(candidate)
        candidate += 1
    return out


@dataclass(frozen=True)
class DualPoint:
    """A linear form on the factor: one rational per root outside the ideal.

    The matrix view is strictly upper triangular with the value of root
    (k,t) stored at row t, column k, and zeros on the ideal-dual cells.
    """

    ideal: RegularIdeal
    coords: dict[Root, Fraction]

    def __post_init__(self):
        free = set(self.ideal.free_roots())
        if set(self.coords) != free:
            raise InputError("point must assign exactly the roots outside the ideal")

    @classmethod
    def from_values(cls, ideal: RegularIdeal, values) -> "DualPoint":
        return cls(ideal, {tuple(r): v for r, v in dict(values).items()})

    @classmethod
    def random(cls, ideal: RegularIdeal, rng: random.Random) -> "DualPoint":
        lo, hi = _ENTRY_RANGE
        return cls(ideal, {r: rng.randint(lo, hi) for r in ideal.free_roots()})

    @classmethod
    def prime_point(cls, ideal: RegularIdeal) -> "DualPoint":
        """The structured generic point: distinct primes down the root order."""
        free = ideal.free_roots()
        return cls(ideal, dict(zip(free, _primes(len(free)))))

    def matrix(self) -> list[list]:
        n = self.ideal.n
        rows = [[0] * n for _ in range(n)]
        for (k, t), value in self.coords.items():
            rows[t - 1][k - 1] = value
        return rows

    def to_json(self) -> dict:
        return {
            f"y[{k},{t}]": str(self.coords[(k, t)])
            for (k, t) in self.ideal.free_roots()
        }


@dataclass(frozen=True)
class GroupElement:
    """A lower unitriangular matrix with rational entries."""

    rows: tuple[tuple, ...]

    def __post_init__(self):
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise InputError("group element must be square")
            if row[i] != 1 or any(row[j] != 0 for j in range(i + 1, n)):
                raise InputError("group element must be lower unitriangular")

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "GroupElement":
        lo, hi = _ENTRY_RANGE
        return cls(
            tuple(
                tuple(
                    rng.randint(lo, hi) if j < i else (1 if i == j else 0)
                    for j in range(n)
                )
                for i in range(n)
            )
        )

    @property
    def n(self) -> int:
        return len(self.rows)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        n = self.n
        a, b = self.rows, other.rows
        product = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(j, i + 1)) for j in range(n))
            for i in range(n)
        )
        return GroupElement(product)

    def inverse(self) -> "GroupElement":
        # Forward substitution; stays over the integers for integer input.
        n = self.n
        inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            for k in range(i):
                factor = self.rows[i][k]
                if factor:
                    for j in range(k + 1):
                        inv[i][j] -= factor * inv[k][j]
        return GroupElement(tuple(tuple(row) for row in inv))

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]


def coadjoint_act(g: GroupElement, point: DualPoint) -> DualPoint:
    """Conjugate the matrix view by ``g`` and project back onto the strictly
    upper pattern; the ideal-dual cells of the result must already vanish."""
    n = point.ideal.n
    if g.n != n:
        raise InputError(f"size mismatch: group element is {g.n}, point is {n}")
    b = point.matrix()
    ginv = g.inverse().rows
    left = [
        [sum(g.rows[i][k] * b[k][j] for k in range(i + 1)) for j in range(n)]
        for i in range(n)
    ]
    full = [
        [sum(left[i][k] * ginv[k][j] for k in range(j, n)) for j in range(n)]
        for i in range(n)
    ]
    coords = {}
    for (k, t) in point.ideal.free_roots():
        coords[(k, t)] = full[t - 1][k - 1]
    for (k, t) in point.ideal.roots:
        if full[t - 1][k - 1] != 0:
            raise ConstructionError(
                f"coadjoint action left a nonzero value on the ideal cell ({k},{t})"
            )
    return DualPoint(point.ideal, coords)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "fail", or "skipped"
    detail: Optional[str] = None
    trials: Optional[int] = None
    seed: Optional[int] = None
    witness: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        doc = {"name": self.name, "status": self.status}
        if self.detail is not None:
            doc["detail"] = self.detail
        if self.trials is not None:
            doc["trials"] = self.trials
        if self.seed is not None:
            doc["seed"] = self.seed
        if self.witness is not None:
            doc["witness"] = self.witness
        return doc


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            line = f"{c.status.upper():7s} {c.name}"
            if c.detail:
                line += f" ({c.detail})"
            out.append(line)
        return out


def check_invariance(
    records: Sequence[InvariantRecord],
    ideal: RegularIdeal,
    trials: int = 100,
    seed: int = 0,
) -> VerificationReport:
    """Exact invariance of every record's highest coefficient.

    First all subdiagonal generator brackets must reduce to zero; then the
    value must be constant under ``trials`` seeded coadjoint moves.
    """
    if trials < 1:
        raise InputError("at least one trial is required")
    n = ideal.n
    report = VerificationReport()

    witness = None
    for record in records:
        for i in range(1, n):
            residual = poisson_bracket_generator(i, record.invariant, ideal)
            if not residual.is_zero:
                witness = {
                    "xi": list(record.xi),
                    "generator": i,
                    "residual": str(residual),
                }
                break
        if witness:
            break
    report.checks.append(
        CheckResult(
            name="poisson_annihilation",
            status="fail" if witness else "pass",
            detail=f"{len(records)} invariants x {max(n - 1, 0)} generators",
            witness=witness,
        )
    )

    rng = random.Random(seed)
    witness = None
    for trial in range(trials):
        g = GroupElement.random(n, rng)
        point = DualPoint.random(ideal, rng)
        moved = coadjoint_act(g, point)
        for record in records:
            before = record.invariant.evaluate(point.coords)
            after = record.invariant.evaluate(moved.coords)
            if before != after:
                witness = {
                    "xi": list(record.xi),
                    "trial": trial,
                    "g": g.to_json(),
                    "point": point.to_json(),
                    "before": str(before),
                    "after": str(after),
                }
                break
        if witness:
            break
    report.checks.append(
        CheckResult(
            name="coadjoint_trials",
            status="fail" if witness else "pass",
            trials=trials,
            seed=seed,
            witness=witness,
        )
    )
    return report


class SkewStats(NamedTuple):
    max_rank: int
    corank: int


def skew_rank_stats(
    ideal: RegularIdeal, trials: int = 20, seed: int = 0
) -> SkewStats:
    """Maximal rank of the bracket form over sampled points, and its corank.

    The form on the roots outside the ideal sends a pair of basis roots to
    the value of their bracket at the point.  Sampling covers ``trials``
    random points plus the distinct-prime point.
    """
    if trials < 1:
        raise InputError("at least one trial is required")
    basis = ideal.free_roots()
    dim = len(basis)
    if dim == 0:
        return SkewStats(0, 0)
    table: list[tuple[int, int, int, Root]] = []
    for a in range(dim):
        for b in range(a + 1, dim):
            hit = bracket_single(basis[a], basis[b])
            if hit is None:
                continue
            sign, root = hit
            if root in ideal:
                continue
            table.append((a, b, sign, root))
    rng = random.Random(seed)
    points = [DualPoint.prime_point(ideal)]
    points.extend(DualPoint.random(ideal, rng) for _ in range(trials))
    best = 0
    for point in points:
        rows = [[0] * dim for _ in range(dim)]
        for a, b, sign, root in table:
            value = sign * point.coords[root]
            rows[a][b] = value
            rows[b][a] = -value
        best = max(best, linalg.rank(rows))
    return SkewStats(best, dim - best)


def _monomials_of_degree(variables: Sequence[Root], degree: int):
    for combo in itertools.combinations_with_replacement(variables, degree):
        mono: list[tuple[Root, int]] = []
        for root in combo:
            if mono and mono[-1][0] == root:
                mono[-1] = (root, mono[-1][1] + 1)
            else:
                mono.append((root, 1))
        yield tuple(mono)


def _weight(mono: Monomial, n: int) -> tuple[int, ...]:
    weight = [0] * n
    for (i, j), e in mono:
        weight[i - 1] += e
        weight[j - 1] -= e
    return tuple(weight)


def oracle_invariants(
    ideal: RegularIdeal,
    max_degree: int,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> list[Polynomial]:
    """Brute-force basis of all polynomial invariants up to ``max_degree``.

    Solves for the exact kernel of every subdiagonal generator bracket on
    the span of non-constant monomials.  Generator brackets shift the torus
    weight of a monomial, so the kernel splits across weight components and
    each component is solved independently.  Basis elements come back with
    integer coprime coefficients and positive leading term.
    """
    if max_degree < 1:
        raise InputError("max_degree must be at least 1")
    n = ideal.n
    variables = ideal.free_roots()
    total = comb(len(variables) + max_degree, max_degree) - 1 if variables else 0
    if total > budget:
        raise BudgetError(
            f"oracle would scan {total} monomials, budget is {budget}"
        )
    generators = [i for i in range(1, n) if (i + 1, i) not in ideal]
    groups: dict[tuple[int, ...], list[Monomial]] = {}
    for degree in range(1, max_degree + 1):
        for mono in _monomials_of_degree(variables, degree):
            groups.setdefault(_weight(mono, n), []).append(mono)

    basis: list[Polynomial] = []
    for weight in sorted(groups):
        monos = sorted(groups[weight], key=lambda m: (len(m), m))
        index = {m: c for c, m in enumerate(monos)}
        equations: dict[tuple[int, Monomial], list[Fraction]] = {}
        for col, mono in enumerate(monos):
            poly = Polynomial({mono: 1})
            for i in generators:
                image = poisson_bracket_generator(i, poly, ideal)
                for out_mono, coef in image.terms.items():
                    row = equations.setdefault(
                        (i, out_mono), [Fraction(0)] * len(monos)
                    )
                    row[col] = coef
        matrix = [equations[key] for key in sorted(equations, key=lambda k: (k[0], k[1]))]
        for vector in linalg.nullspace(matrix, len(monos)):
            poly = Polynomial({m: vector[index[m]] for m in monos})
            basis.append(_primitive(poly))
    basis.sort(key=lambda p: (p.degree(), str(p)))
    return basis


def _primitive(poly: Polynomial) -> Polynomial:
    """Scale to integer coprime coefficients with a positive leading one."""
    denom = 1
    for coef in poly.terms.values():
        denom = denom * coef.denominator // gcd(denom, coef.denominator)
    scaled = poly * denom
    g = 0
    for coef in scaled.terms.values():
        g = gcd(g, abs(coef.numerator))
    if g > 1:
        scaled = scaled * Fraction(1, g)
    return scaled.normalize_sign()


def invariant_in_span(basis: Sequence[Polynomial], poly: Polynomial) -> bool:
    """Exact membership of ``poly`` in the rational span of ``basis``."""
    monomials = sorted(
        {m for p in basis for m in p.terms} | set(poly.terms),
        key=lambda m: (len(m), m),
    )
    index = {m: i for i, m in enumerate(monomials)}
    vectors = []
    for p in basis:
        row = [Fraction(0)] * len(monomials)
        for m, c in p.terms.items():
            row[index[m]] = c
        vectors.append(row)
    target = [Fraction(0)] * len(monomials)
    for m, c in poly.terms.items():
        target[index[m]] = c
    return linalg.in_span(vectors, target)


def full_report(
    ideal: RegularIdeal,
    trials: int = 100,
    seed: int = 0,
    rank_trials: int = 20,
    max_degree: int = 4,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
) -> VerificationReport:
    """Run every checkable identity for one regular factor."""
    report = VerificationReport()
    diagram = build_diagram(ideal)
    counts = diagram.counts()
    n = ideal.n

    def run(name: str, fn, **extra) -> None:
        try:
            detail = fn()
            report.checks.append(
                CheckResult(name=name, status="pass", detail=detail, **extra)
            )
        except (ConstructionError, InputError) as exc:
            report.checks.append(
                CheckResult(name=name, status="fail", detail=str(exc), **extra)
            )

    def check_symbols():
        crosscheck_symbols(ideal, diagram)
        return f"{n * (n - 1) // 2} cells"

    run("diagram_symbol_rule", check_symbols)

    def check_counts():
        total = n * (n - 1) // 2
        if counts.crosses + counts.plus_minus + counts.bullets != total:
            raise ConstructionError("symbol counts do not cover the grid")
        if counts.plus_minus % 2:
            raise ConstructionError("plus and minus counts are unbalanced")
        if counts.bullets != len(ideal.roots):
            raise ConstructionError("bullets disagree with the ideal")
        if counts.crosses + counts.plus_minus != ideal.dim:
            raise ConstructionError("crosses plus pairs disagree with the dimension")
        return (
            f"crosses={counts.crosses} plus_minus={counts.plus_minus} "
            f"bullets={counts.bullets}"
        )

    run("diagram_counts", check_counts)

    w = column_max_permutation(ideal)

    def check_product():
        if reflection_product(n, diagram.crosses) != w:
            raise ConstructionError("reflection product disagrees with the "
                                    "column-max permutation")
        return f"w={list(w.images)}"

    run("permutation_reflection_product", check_product)

    def check_length():
        length = inversions(w)
        if length != ideal.dim:
            raise ConstructionError(
                f"inversion count {length} differs from dimension {ideal.dim}"
            )
        return f"l(w)={length}"

    run("permutation_length", check_length)

    records: list[InvariantRecord] = []

    def check_records():
        records.extend(all_invariants(ideal))
        for record in records:
            triangular_decomposition(record)
        return f"{len(records)} records"

    run("invariant_records", check_records)
    records_ok = report.checks[-1].status == "pass"

    if records_ok:
        report.extend(check_invariance(records, ideal, trials=trials, seed=seed))
    else:
        report.checks.append(
            CheckResult("poisson_annihilation", "skipped", detail="no records")
        )
        report.checks.append(
            CheckResult("coadjoint_trials", "skipped", detail="no records")
        )

    def check_skew():
        stats = skew_rank_stats(ideal, trials=rank_trials, seed=seed)
        if stats.max_rank != counts.plus_minus:
            raise ConstructionError(
                f"max skew rank {stats.max_rank} differs from the "
                f"plus/minus count {counts.plus_minus}"
            )
        if stats.corank != counts.crosses:
            raise ConstructionError(
                f"skew corank {stats.corank} differs from the cross count "
                f"{counts.crosses}"
            )
        return f"max_rank={stats.max_rank} corank={stats.corank}"

    run("skew_rank", check_skew, trials=rank_trials, seed=seed)

    def check_jacobian():
        point = DualPoint.prime_point(ideal)
        found = jacobian_rank([r.invariant for r in records], point.coords)
        if found != len(records):
            raise ConstructionError(
                f"Jacobian rank {found} differs from the cross count {len(records)}"
            )
        return f"rank={found}"

    if records_ok:
        run("jacobian_rank", check_jacobian)
    else:
        report.checks.append(
            CheckResult("jacobian_rank", "skipped", detail="no records")
        )

    variables = len(ideal.free_roots())
    oracle_size = comb(variables + max_degree, max_degree) - 1 if variables else 0
    if not records_ok:
        report.checks.append(
            CheckResult("oracle_containment", "skipped", detail="no records")
        )
    elif oracle_size > oracle_budget:
        report.checks.append(
            CheckResult(
                name="oracle_containment",
                status="skipped",
                detail=f"{oracle_size} monomials exceed budget {oracle_budget}",
            )
        )
    else:
        def check_oracle():
            low = [r for r in records if r.invariant.degree() <= max_degree]
            if not low:
                return "no low-degree invariants"
            basis = oracle_invariants(ideal, max_degree, budget=oracle_budget)
            for record in low:
                if not invariant_in_span(basis, record.invariant):
                    raise ConstructionError(
                        f"invariant of {record.xi} is outside the oracle kernel"
                    )
            return f"{len(low)} invariants inside a basis of {len(basis)}"

        run("oracle_containment", check_oracle)

    return report
