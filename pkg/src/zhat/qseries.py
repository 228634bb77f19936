"""Sparse formal q-series with exact rational exponents and coefficients.

A :class:`QSeries` is a finite list of (exponent, coefficient) pairs with
strictly increasing exponents, plus a truncation order: every exponent
up to and including the order is fully determined, so "coefficient is
zero" and "not computed" stay distinguishable.  Values are immutable and
all arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import EmptySeries, FormatError


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QSeries:
    """Sparse exact series sum_e c_e * q^e, truncated at ``order``."""

    terms: tuple[tuple[Fraction, Fraction], ...]
    order: Fraction
    # expected lcm of exponent denominators (e.g. 4p); advisory only
    exponent_denominator_hint: int = field(default=1, compare=False)

    @staticmethod
    def from_terms(terms: Iterable[tuple], order, hint: int = 1) -> "QSeries":
        """Normalize: sort by exponent, merge duplicates, drop zeros and
        anything above the truncation order."""
        order = _fr(order)
        acc: dict[Fraction, Fraction] = {}
        for e, c in terms:
            e, c = _fr(e), _fr(c)
            if e <= order:
                acc[e] = acc.get(e, Fraction(0)) + c
        clean = tuple((e, acc[e]) for e in sorted(acc) if acc[e] != 0)
        return QSeries(clean, order, hint)

    @staticmethod
    def zero(order, hint: int = 1) -> "QSeries":
        return QSeries((), _fr(order), hint)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e) -> Fraction:
        e = _fr(e)
        for exp, c in self.terms:
            if exp == e:
                return c
        return Fraction(0)

    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(e for e, _ in self.terms)

    def prefix(self, count: int) -> "QSeries":
        """First ``count`` terms as a series truncated at the last kept exponent."""
        kept = self.terms[:count]
        order = kept[-1][0] if kept else self.order
        return QSeries(kept, order, self.exponent_denominator_hint)

    def add(self, other: "QSeries") -> "QSeries":
        """Termwise sum; the result's order is the smaller of the two."""
        order = min(self.order, other.order)
        hint = math.lcm(self.exponent_denominator_hint, other.exponent_denominator_hint)
        return QSeries.from_terms(list(self.terms) + list(other.terms), order, hint)

    def scale(self, c) -> "QSeries":
        c = _fr(c)
        if c == 0:
            return QSeries.zero(self.order, self.exponent_denominator_hint)
        return QSeries(
            tuple((e, coeff * c) for e, coeff in self.terms),
            self.order,
            self.exponent_denominator_hint,
        )

    def __add__(self, other: "QSeries") -> "QSeries":
        return self.add(other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self.add(other.scale(-1))

    def shift_exponent(self, r) -> "QSeries":
        """Multiply by q^r: every exponent and the order move up by r."""
        r = _fr(r)
        return QSeries(
            tuple((e + r, c) for e, c in self.terms),
            self.order + r,
            math.lcm(self.exponent_denominator_hint, r.denominator),
        )

    def leading_exponent_and_normalize(self) -> tuple[Fraction, "QSeries", int]:
        """(delta, tail, eta) with self = q^delta * tail, tail(0) != 0.

        ``eta`` is the least e >= 0 with 2^e * (all coefficients) integral.
        Raises EmptySeries when no terms survive below the truncation
        order (the caller should raise the order).
        """
        if not self.terms:
            raise EmptySeries("series has no terms below its truncation order")
        delta = self.terms[0][0]
        tail = self.shift_exponent(-delta)
        eta = 0
        for _, c in tail.terms:
            den = c.denominator
            e2 = den.bit_length() - 1
            if den != (1 << e2):
                raise ValueError("coefficient denominators are not powers of two")
            eta = max(eta, e2)
        return delta, tail, eta

    # -- rendering / serialization ------------------------------------

    def text(self, ellipsis: bool = False) -> str:
        """Canonical text form, e.g. ``1 - q^7 - q^9 + q^20 + ...``."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for i, (e, c) in enumerate(self.terms):
            mag = _term_text(e, abs(c))
            if i == 0:
                parts.append(mag if c > 0 else "-" + mag)
            else:
                parts.append(("+ " if c > 0 else "- ") + mag)
        out = " ".join(parts)
        if ellipsis:
            out += " + ..."
        return out

    def to_json_obj(self) -> dict:
        return {
            "terms": [{"exp": str(e), "coeff": str(c)} for e, c in self.terms],
            "order": str(self.order),
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "QSeries":
        try:
            terms = [(Fraction(t["exp"]), Fraction(t["coeff"])) for t in obj["terms"]]
            order = Fraction(obj["order"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad QSeries object: {exc}") from exc
        return QSeries.from_terms(terms, order)


def _term_text(e: Fraction, c: Fraction) -> str:
    if e == 0:
        return str(c)
    if e == 1:
        q = "q"
    elif e.denominator == 1:
        q = f"q^{e}"
    else:
        q = f"q^({e})"
    if c == 1:
        return q
    if c.denominator == 1:
        return f"{c}{q}"
    return f"({c}){q}"


def false_theta(p: int, a: int, order) -> QSeries:
    """One-sided theta-like series sum_{n >= 0} psi(n) q^(n^2/4p).

    psi(n) is +1 on n = a mod 2p, -1 on n = -a mod 2p, 0 otherwise (so
    exactly 0 when both congruences hold, i.e. p | a).  Terms are kept
    while n^2/4p <= order.
    """
    if p < 1:
        raise ValueError("p must be a positive integer")
    order = _fr(order)
    if order < 0:
        return QSeries.zero(order, 4 * p)
    # largest n with n^2 <= 4*p*order
    nmax = math.isqrt((4 * p * order.numerator) // order.denominator)
    twop = 2 * p
    terms: list[tuple[Fraction, Fraction]] = []
    seen: set[int] = set()
    for start in (a % twop, (-a) % twop):
        n = start
        while n <= nmax:
            if n not in seen:
                seen.add(n)
                c = (1 if (n - a) % twop == 0 else 0) - (1 if (n + a) % twop == 0 else 0)
                if c:
                    terms.append((Fraction(n * n, 4 * p), Fraction(c)))
            n += twop
    return QSeries.from_terms(terms, order, 4 * p)
