"""Permutations attached to a regular factor: reflection products, chains,
and the segment data that predicts characteristic-minor degrees.

Products of transpositions written left to right in decreasing root order
are applied rightmost first, so ``reflection_product([r1, r2])`` sends ``x``
to ``r1(r2(x))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConstructionError, InputError
from .roots import RegularIdeal, Root, check_root, prec_key


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} stored in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise InputError(f"not a permutation of 1..{n}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, root: Root) -> "Permutation":
        i, j = check_root(n, root)
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (a * b)(x) = a(b(x)), i.e. b acts first."""
        return Permutation(tuple(self.images[y - 1] for y in other.images))

    def inverse(self) -> "Permutation":
        images = [0] * self.n
        for x, y in enumerate(self.images, start=1):
            images[y - 1] = x
        return Permutation(tuple(images))

    def on_root(self, root: Root) -> tuple[int, int]:
        """Image of a root pair: w(i,j) = (w(i), w(j))."""
        i, j = root
        return (self.images[i - 1], self.images[j - 1])

    def sends_positive(self, root: Root) -> bool:
        """Whether the image pair is still a positive root (first > second)."""
        a, b = self.on_root(root)
        return a > b

    def to_json(self) -> list[int]:
        return list(self.images)


def inversions(perm: Permutation) -> int:
    """Number of pairs i < j with w(i) > w(j)."""
    imgs = perm.images
    return sum(
        1
        for a in range(len(imgs))
        for b in range(a + 1, len(imgs))
        if imgs[a] > imgs[b]
    )


def reflection_product(n: int, roots: Sequence[Root]) -> Permutation:
    """Product of the transpositions of ``roots``, rightmost applied first.

    The list must be strictly decreasing in the column order.
    """
    keys = [prec_key(check_root(n, r)) for r in roots]
    if any(a >= b for a, b in zip(keys, keys[1:])):
        raise InputError("reflection list must be strictly decreasing")
    images = list(range(1, n + 1))
    # Composing with a transposition on the right swaps two one-line entries.
    for i, j in roots:
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
    return Permutation(tuple(images))


def column_max_permutation(ideal: RegularIdeal) -> Permutation:
    """Greedy permutation: w(t) is the largest unused row i with (i,t) free.

    Pairs (i,t) with i <= t never lie in the ideal, so a choice always
    exists.
    """
    n = ideal.n
    used: set[int] = set()
    images = []
    for t in range(1, n + 1):
        i = max(
            i
            for i in range(1, n + 1)
            if i not in used and (i <= t or (i, t) not in ideal)
        )
        used.add(i)
        images.append(i)
    return Permutation(tuple(images))


def _crosses_index(crosses: Sequence[Root], xi: Root) -> int:
    try:
        return list(crosses).index(tuple(xi))
    except ValueError:
        raise InputError(f"{xi} is not a cross of the diagram") from None


def crosses_in_column(crosses: Sequence[Root], t: int) -> list[Root]:
    return [r for r in crosses if r[1] == t]


def crosses_up_to_column(crosses: Sequence[Root], t: int) -> list[Root]:
    return [r for r in crosses if r[1] <= t]


def reflections_in_column(n: int, crosses: Sequence[Root], t: int) -> Permutation:
    """Product over the column-t crosses only."""
    return reflection_product(n, crosses_in_column(crosses, t))


def reflections_up_to(n: int, crosses: Sequence[Root], t: int) -> Permutation:
    """Product over all crosses in columns 1..t."""
    return reflection_product(n, crosses_up_to_column(crosses, t))


def reflections_through(n: int, crosses: Sequence[Root], xi: Root) -> Permutation:
    """Product over all crosses greater than or equal to ``xi``."""
    m = _crosses_index(crosses, xi)
    return reflection_product(n, list(crosses)[: m + 1])


def _column_reflections_through(n, crosses, xi) -> Permutation:
    """Product over column crosses of xi's column greater than or equal to xi."""
    t = xi[1]
    members = [r for r in crosses_in_column(crosses, t) if prec_key(r) <= prec_key(xi)]
    return reflection_product(n, members)


def case_of(n: int, crosses: Sequence[Root], xi: Root) -> tuple[int, int]:
    """Return (h, case) for a cross xi = (k,t), where h is the image of t
    under the product through xi.

    Case 1 means h > t (no cross left of xi in its row, and then h = k);
    case 2 means h < t.  h = t cannot occur for a cross.
    """
    k, t = check_root(n, xi)
    _crosses_index(crosses, xi)
    h = reflections_through(n, crosses, xi)(t)
    if h > t:
        if h != k:
            raise ConstructionError(f"case-1 cross {xi} maps its column to {h} != {k}")
        return h, 1
    if h == t:
        raise ConstructionError(f"cross {xi} fixes its own column index")
    return h, 2


def minor_columns(n: int, crosses: Sequence[Root], xi: Root) -> tuple[int, ...]:
    """Columns of the characteristic minor of xi = (k,t): the j <= t whose
    image under the product through xi is at least h."""
    _, t = xi
    w_xi = reflections_through(n, crosses, xi)
    h = w_xi(t)
    return tuple(j for j in range(1, t + 1) if w_xi(j) >= h)


class _ColumnProducts:
    """Lazy cache of per-column reflection products for chain stepping."""

    def __init__(self, n: int, crosses: Sequence[Root]):
        self.n = n
        self.crosses = list(crosses)
        self._cache: dict[int, Permutation] = {}

    def __call__(self, t: int) -> Permutation:
        if t not in self._cache:
            self._cache[t] = reflections_in_column(self.n, self.crosses, t)
        return self._cache[t]


def _descend_once(n, crosses, xi, v, columns: _ColumnProducts):
    """One chain step from v: run the reflection sequence down the columns
    and return the first value below v, or None when nothing descends.

    The running value can only grow while it stays at or above v (it jumps
    up through crosses in its row); the first drop lands on the index of
    the column that produced it, and later values are irrelevant.
    """
    t = xi[1]
    if v > t:
        u = _column_reflections_through(n, crosses, xi)(v)
        if u < v:
            return u
        start = t - 1
    else:
        u = v
        start = v - 1
    for c in range(start, 0, -1):
        u = columns(c)(u)
        if u < v:
            return u
    return None


def _chain(n, crosses, xi, i, c, h, columns: _ColumnProducts) -> list[int]:
    chain = [i]
    v = i
    while not (c <= v < h):
        nxt = _descend_once(n, crosses, xi, v, columns)
        if nxt is None:
            raise InputError(f"row {v} admits no descent for cross {xi}")
        chain.append(nxt)
        v = nxt
    return chain


def descent_chain(
    n: int, crosses: Sequence[Root], xi: Root, i: int
) -> list[int]:
    """Descending chain from row i down to the window [c, h).

    Only defined when xi is a case-2 cross; raises InputError for case-1
    crosses and for rows that admit no descent.
    """
    h, case = case_of(n, crosses, xi)
    if case != 2:
        raise InputError(f"chains are defined only for case-2 crosses, {xi} is case 1")
    c = min(minor_columns(n, crosses, xi))
    return _chain(n, crosses, xi, i, c, h, _ColumnProducts(n, crosses))


@dataclass(frozen=True)
class SegmentData:
    """Chain bookkeeping for a case-2 cross.

    The window [h, col_end] splits into the rows covered by some chain
    (``chained``) and the rest (``unchained``); both decompose into maximal
    runs that strictly alternate, starting with an unchained run at h and
    ending with a chained run at col_end.  ``d_star`` is the total size of
    the leading unchained runs contained in the minor's column set; it
    predicts the degree of the characteristic minor.
    """

    xi: Root
    h: int
    c: int
    col_end: int
    i_star: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]
    chained: tuple[int, ...]
    unchained: tuple[int, ...]
    chained_segments: tuple[tuple[int, ...], ...]
    unchained_segments: tuple[tuple[int, ...], ...]
    nu: int
    d_star: int

    def to_json(self) -> dict:
        return {
            "xi": list(self.xi),
            "h": self.h,
            "c": self.c,
            "col_end": self.col_end,
            "i_star": list(self.i_star),
            "chains": [list(c) for c in self.chains],
            "chained": list(self.chained),
            "unchained": list(self.unchained),
            "chained_segments": [list(s) for s in self.chained_segments],
            "unchained_segments": [list(s) for s in self.unchained_segments],
            "nu": self.nu,
            "d_star": self.d_star,
        }


def _runs(values: list[int]) -> list[tuple[int, ...]]:
    """Maximal runs of consecutive integers in an ascending list."""
    runs: list[list[int]] = []
    for v in values:
        if runs and v == runs[-1][-1] + 1:
            runs[-1].append(v)
        else:
            runs.append([v])
    return [tuple(r) for r in runs]


def segment_data(
    ideal: RegularIdeal,
    crosses: Sequence[Root],
    xi: Root,
    cols: Sequence[int],
) -> SegmentData:
    """Chains, chained/unchained split, and the degree prediction d_star for
    a case-2 cross with minor columns ``cols``."""
    n = ideal.n
    k, t = xi
    h, case = case_of(n, crosses, xi)
    if case != 2:
        raise InputError(f"segment data is defined only for case-2 crosses, {xi} is case 1")
    c = min(cols)
    col_end = max(i for i in range(1, n + 1) if i <= t or (i, t) not in ideal)
    w_xi = reflections_through(n, crosses, xi)
    i_star = tuple(i for i in range(t + 1, n + 1) if w_xi(i) < h)

    if k not in i_star:
        raise ConstructionError(f"cross row {k} missing from the extra rows of {xi}")
    if any(i > col_end for i in i_star):
        raise ConstructionError(f"extra rows of {xi} leave the column window")

    columns = _ColumnProducts(n, crosses)
    chains = tuple(tuple(_chain(n, crosses, xi, i, c, h, columns)) for i in i_star)
    covered: set[int] = set()
    for chain in chains:
        if covered & set(chain):
            raise ConstructionError(f"chains of {xi} intersect")
        covered |= set(chain)
    endpoints = {chain[-1] for chain in chains}
    if endpoints != set(range(c, h)):
        raise ConstructionError(f"chain endpoints of {xi} do not fill [{c},{h})")

    window = list(range(h, col_end + 1))
    chained = tuple(v for v in window if v in covered)
    unchained = tuple(v for v in window if v not in covered)
    if h in chained:
        raise ConstructionError(f"window start {h} lies on a chain for {xi}")
    if t not in chained:
        raise ConstructionError(f"column index {t} lies on no chain for {xi}")
    if not set(i_star) <= set(chained):
        raise ConstructionError(f"extra rows of {xi} are not all chained")

    chained_segments = _runs(list(chained))
    unchained_segments = _runs(list(unchained))
    if len(chained_segments) != len(unchained_segments) or col_end not in chained:
        raise ConstructionError(f"runs of {xi} do not alternate as expected")

    col_set = set(cols)
    nu = 0
    for run in unchained_segments:
        if set(run) <= col_set:
            nu += 1
        else:
            break
    d_star = sum(len(run) for run in unchained_segments[:nu])
    return SegmentData(
        xi=(k, t),
        h=h,
        c=c,
        col_end=col_end,
        i_star=i_star,
        chains=chains,
        chained=chained,
        unchained=unchained,
        chained_segments=tuple(chained_segments),
        unchained_segments=tuple(unchained_segments),
        nu=nu,
        d_star=d_star,
    )
