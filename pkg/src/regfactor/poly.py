"""Exact sparse polynomials in root variables.

Coefficients are rationals throughout; there is no floating point anywhere.
A monomial is a tuple of (root, exponent) pairs with the roots in
decreasing column order.  Polynomials print and iterate in a canonical
order: higher total degree first, ties broken lexicographically on the
expanded variable sequence.

The module also carries the Poisson structure of the algebra (bracket of
basis vectors via structure constants, extended as a derivation) and an
exact Jacobian rank used for independence checks.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import linalg
from .errors import InputError
from .roots import RegularIdeal, Root, prec_key

Monomial = tuple[tuple[Root, int], ...]
Scalar = Union[int, Fraction]

_ONE: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out: list[tuple[Root, int]] = []
    ia = ib = 0
    while ia < len(a) and ib < len(b):
        ra, ea = a[ia]
        rb, eb = b[ib]
        ka, kb = prec_key(ra), prec_key(rb)
        if ka < kb:
            out.append((ra, ea))
            ia += 1
        elif kb < ka:
            out.append((rb, eb))
            ib += 1
        else:
            out.append((ra, ea + eb))
            ia += 1
            ib += 1
    out.extend(a[ia:])
    out.extend(b[ib:])
    return tuple(out)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Monomial):
    """Canonical order key: graded, then lex on the expanded variable list."""
    expanded = tuple(prec_key(r) for r, e in m for _ in range(e))
    return (-len(expanded), expanded)


def _mono_str(m: Monomial) -> str:
    parts = []
    for (i, j), e in m:
        var = f"y[{i},{j}]"
        parts.append(var if e == 1 else f"{var}^{e}")
    return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coef in terms.items():
                coef = Fraction(coef)
                if coef:
                    clean[mono] = coef
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        return cls({_ONE: Fraction(value)})

    @classmethod
    def variable(cls, root: Root) -> "Polynomial":
        return cls({((tuple(root), 1),): Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def variables(self) -> set[Root]:
        return {r for m in self.terms for r, _ in m}

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0]))

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise InputError("the zero polynomial has no leading monomial")
        return min(self.terms, key=_mono_key)

    def normalize_sign(self) -> "Polynomial":
        """Flip the sign if needed so the first canonical monomial has a
        positive coefficient."""
        if not self.terms:
            return self
        if self.terms[self.leading_monomial()] < 0:
            return -self
        return self

    def _coerce(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            acc = out.get(mono, 0) + coef
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = _mono_mul(ma, mb)
                acc = out.get(mono, 0) + ca * cb
                if acc:
                    out[mono] = acc
                else:
                    out.pop(mono, None)
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError("polynomial powers take non-negative integers")
        result = Polynomial.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for idx, (mono, coef) in enumerate(self.sorted_terms()):
            mag = abs(coef)
            body = _mono_str(mono)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if idx == 0:
                chunks.append(text if coef > 0 else f"-{text}")
            else:
                chunks.append(f"+ {text}" if coef > 0 else f"- {text}")
        return " ".join(chunks)

    def __repr__(self):
        return f"Polynomial({self})"

    def derivative(self, root: Root) -> "Polynomial":
        """Partial derivative with respect to one root variable."""
        root = tuple(root)
        out: dict[Monomial, Fraction] = {}
        for mono, coef in self.terms.items():
            for pos, (r, e) in enumerate(mono):
                if r == root:
                    if e == 1:
                        reduced = mono[:pos] + mono[pos + 1 :]
                    else:
                        reduced = mono[:pos] + ((r, e - 1),) + mono[pos + 1 :]
                    acc = out.get(reduced, 0) + coef * e
                    if acc:
                        out[reduced] = acc
                    else:
                        out.pop(reduced, None)
                    break
        return Polynomial(out)

    def evaluate(self, point: Mapping[Root, Scalar]) -> Fraction:
        """Exact value at a point assigning every variable of the polynomial."""
        total = Fraction(0)
        for mono, coef in self.terms.items():
            value = coef
            for r, e in mono:
                if r not in point:
                    raise InputError(f"no value supplied for variable y[{r[0]},{r[1]}]")
                value = value * Fraction(point[r]) ** e
            total += value
        return total


def evaluate(poly: Polynomial, point: Mapping[Root, Scalar]) -> Fraction:
    """Module-level alias for :meth:`Polynomial.evaluate`."""
    return poly.evaluate(point)


_TERM_RE = re.compile(
    r"""
    (?P<coef>-?\d+(?:/\d+)?)?          # optional integer or p/q coefficient
    (?P<vars>(?:\*?y\[\d+,\d+\](?:\^\d+)?)*)
    $""",
    re.VERBOSE,
)
_VAR_RE = re.compile(r"y\[(\d+),(\d+)\](?:\^(\d+))?")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the canonical string form back into a polynomial."""
    src = text.strip()
    if not src:
        raise InputError("empty polynomial string")
    if src == "0":
        return Polynomial.zero()
    # Split into signed terms on top-level + and - separators.
    pieces: list[tuple[int, str]] = []
    sign = 1
    buf = ""
    idx = 0
    # Leading sign.
    if src[0] in "+-":
        sign = -1 if src[0] == "-" else 1
        idx = 1
    current_sign = sign
    while idx < len(src):
        ch = src[idx]
        if ch in "+-" and buf.strip():
            pieces.append((current_sign, buf.strip()))
            current_sign = -1 if ch == "-" else 1
            buf = ""
        else:
            buf += ch
        idx += 1
    if buf.strip():
        pieces.append((current_sign, buf.strip()))
    result = Polynomial.zero()
    for sgn, piece in pieces:
        piece = piece.replace(" ", "")
        match = _TERM_RE.fullmatch(piece)
        if not match or (not match.group("coef") and not match.group("vars")):
            raise InputError(f"cannot parse polynomial term {piece!r}")
        coef = Fraction(match.group("coef")) if match.group("coef") else Fraction(1)
        mono: Monomial = _ONE
        for var in _VAR_RE.finditer(match.group("vars") or ""):
            i, j, e = int(var.group(1)), int(var.group(2)), int(var.group(3) or 1)
            if e < 1:
                raise InputError(f"bad exponent in {piece!r}")
            mono = _mono_mul(mono, (((i, j), e),))
        result = result + Polynomial({mono: sgn * coef})
    return result


class LambdaPolynomial:
    """Polynomial in an auxiliary variable with Polynomial coefficients,
    stored as the coefficient list from degree 0 upward."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Polynomial] = ()):
        items = list(coeffs)
        while items and items[-1].is_zero:
            items.pop()
        object.__setattr__(self, "coeffs", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("LambdaPolynomial is immutable")

    @classmethod
    def zero(cls) -> "LambdaPolynomial":
        return cls()

    @classmethod
    def of_poly(cls, poly: Polynomial) -> "LambdaPolynomial":
        return cls((poly,))

    @classmethod
    def lam(cls, scale: Scalar = 1) -> "LambdaPolynomial":
        return cls((Polynomial.zero(), Polynomial.constant(scale)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree in the auxiliary variable; -1 for the zero value."""
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> Polynomial:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Polynomial.zero()

    def leading(self) -> Polynomial:
        return self.coeffs[-1] if self.coeffs else Polynomial.zero()

    def __add__(self, other: "LambdaPolynomial") -> "LambdaPolynomial":
        if not isinstance(other, LambdaPolynomial):
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return LambdaPolynomial(
            self.coefficient(k) + other.coefficient(k) for k in range(size)
        )

    def __neg__(self) -> "LambdaPolynomial":
        return LambdaPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "LambdaPolynomial") -> "LambdaPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            return LambdaPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, LambdaPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return LambdaPolynomial.zero()
        out = [Polynomial.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            if ca.is_zero:
                continue
            for b, cb in enumerate(other.coeffs):
                if cb.is_zero:
                    continue
                out[a + b] = out[a + b] + ca * cb
        return LambdaPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LambdaPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            coef = self.coeffs[k]
            if coef.is_zero:
                continue
            head = f"({coef})"
            if k == 0:
                parts.append(head)
            elif k == 1:
                parts.append(f"{head}*L")
            else:
                parts.append(f"{head}*L^{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LambdaPolynomial({self})"

    def to_json(self) -> dict:
        return {"degree": self.degree, "coefficients": [str(c) for c in self.coeffs]}


def bracket_single(a: Root, b: Root) -> Optional[tuple[int, Root]]:
    """Structure constants on basis vectors: the bracket of the matrix
    units at roots a=(i,j), b=(k,l) is +1 times the unit at (i,l) when
    j = k, -1 times the unit at (k,j) when l = i, and zero otherwise."""
    i, j = a
    k, l = b
    if j == k:
        return (1, (i, l))
    if l == i:
        return (-1, (k, j))
    return None


def poisson_bracket(p: Polynomial, q: Polynomial) -> Polynomial:
    """Full Poisson bracket, extended from the basis as a biderivation."""
    out = Polynomial.zero()
    for a in p.variables():
        dp = p.derivative(a)
        if dp.is_zero:
            continue
        for b in q.variables():
            hit = bracket_single(a, b)
            if hit is None:
                continue
            sign, root = hit
            out = out + dp * q.derivative(b) * Polynomial({((root, 1),): sign})
    return out


def reduce_mod_ideal(p: Polynomial, ideal: RegularIdeal) -> Polynomial:
    """Drop every monomial containing a variable from the ideal."""
    out = {
        mono: coef
        for mono, coef in p.terms.items()
        if all(r not in ideal for r, _ in mono)
    }
    return Polynomial(out)


def poisson_bracket_generator(
    i: int, p: Polynomial, ideal: RegularIdeal
) -> Polynomial:
    """Bracket of the subdiagonal generator at rows (i+1, i) with ``p``,
    reduced modulo the ideal.

    ``p`` may only use variables outside the ideal; the result is zero when
    the generator itself lies in the ideal.
    """
    n = ideal.n
    if not 1 <= i <= n - 1:
        raise InputError(f"generator index must lie in [1, {n - 1}], got {i}")
    bad = [r for r in p.variables() if r in ideal]
    if bad:
        raise InputError(f"polynomial uses ideal variables: {sorted(bad)}")
    gen = (i + 1, i)
    if gen in ideal:
        return Polynomial.zero()
    out = Polynomial.zero()
    for b in p.variables():
        hit = bracket_single(gen, b)
        if hit is None:
            continue
        sign, root = hit
        if root in ideal:
            continue
        out = out + p.derivative(b) * Polynomial({((root, 1),): sign})
    return out


def jacobian_rank(
    polys: Sequence[Polynomial], point: Mapping[Root, Scalar]
) -> int:
    """Exact rank of the matrix of partial derivatives evaluated at a point."""
    if not polys:
        return 0
    variables = sorted({v for p in polys for v in p.variables()}, key=prec_key)
    rows = [
        [p.derivative(v).evaluate(point) for v in variables]
        for p in polys
    ]
    return linalg.rank(rows)
