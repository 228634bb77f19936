"""Closed-form pipeline for Brieskorn sphere invariants.

For pairwise coprime 0 < b1 < b2 < b3 (with b1 >= 2 and excluding
(2, 3, 5)), the sphere is realized as a star-shaped negative definite
plumbing: a central vertex of weight b < 0 and three legs whose weights
are the negated continued-fraction coefficients of b_i/a_i, where
(b, a1, a2, a3) solves

    b1*b2*b3*b + b2*b3*a1 + b1*b3*a2 + b1*b2*a3 = -1.

From the tree one reads off h_i (absolute determinants after deleting
each leg's terminal vertex), the normalization exponent xi, the leading
exponent delta0 = xi + alpha1^2/(4p), and the full series as a signed
combination of four one-sided theta series of level p = b1*b2*b3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .engine import SpinCRep, ZhatResult
from .errors import ExcludedTriple, InvalidFraction, InvalidTriple
from .plumbing import PlumbingGraph
from .qseries import QSeries, false_theta


@dataclass(frozen=True)
class BrieskornData:
    """Everything the closed form needs, fully populated."""

    b: tuple[int, int, int]
    seifert_b: int
    a: tuple[int, int, int]
    p: int
    alphas: tuple[int, int, int, int]
    leg_fractions: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    h: tuple[int, int, int]
    xi: Fraction
    delta0: Fraction

    @property
    def vertex_count(self) -> int:
        return 1 + sum(len(f) for f in self.leg_fractions)

    def to_json_obj(self) -> dict:
        return {
            "b": list(self.b),
            "seifertB": self.seifert_b,
            "a": list(self.a),
            "p": self.p,
            "alphas": list(self.alphas),
            "legFractions": [list(f) for f in self.leg_fractions],
            "h": list(self.h),
            "xi": str(self.xi),
            "delta0": str(self.delta0),
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "BrieskornData":
        return BrieskornData(
            tuple(obj["b"]),
            int(obj["seifertB"]),
            tuple(obj["a"]),
            int(obj["p"]),
            tuple(obj["alphas"]),
            tuple(tuple(f) for f in obj["legFractions"]),
            tuple(obj["h"]),
            Fraction(obj["xi"]),
            Fraction(obj["delta0"]),
        )


def validate_triple(b1: int, b2: int, b3: int) -> None:
    if not (2 <= b1 < b2 < b3):
        raise InvalidTriple(f"need 2 <= b1 < b2 < b3, got ({b1}, {b2}, {b3})")
    for x, y in ((b1, b2), (b1, b3), (b2, b3)):
        if math.gcd(x, y) != 1:
            raise InvalidTriple(f"{x} and {y} are not coprime")


def solve_seifert_data(b1: int, b2: int, b3: int) -> tuple[int, int, int, int]:
    """Canonical (b, a1, a2, a3) with 0 < a_i < b_i.

    a_i is the unique solution of a_i * (p/b_i) = -1 (mod b_i) in
    (0, b_i); b then comes out of the defining equation exactly and is
    negative.  Positivity of the a_i plus the equation forces this
    choice up to the a_i's residues, so it is the only solution that
    also builds a star plumbing with all leg weights <= -2.
    """
    validate_triple(b1, b2, b3)
    p = b1 * b2 * b3
    a = [(-pow(p // bi, -1, bi)) % bi for bi in (b1, b2, b3)]
    rest = (p // b1) * a[0] + (p // b2) * a[1] + (p // b3) * a[2]
    b, r = divmod(-1 - rest, p)
    assert r == 0, "Seifert equation must close exactly"
    return b, a[0], a[1], a[2]


def hj_continued_fraction(num: int, den: int) -> list[int]:
    """Minus-sign continued fraction num/den = k1 - 1/(k2 - ...), all k_i >= 2.

    Computed by repeated ceiling division; requires 0 < den < num and
    gcd(num, den) = 1.
    """
    if not (0 < den < num) or math.gcd(num, den) != 1:
        raise InvalidFraction(f"need 0 < den < num coprime, got {num}/{den}")
    ks = []
    while den > 0:
        k = -(-num // den)  # ceil
        ks.append(k)
        num, den = den, k * den - num
    return ks


def evaluate_hj(ks: list[int]) -> Fraction:
    """Evaluate [k1, ..., ks] back to a fraction (round-trip check)."""
    val = Fraction(ks[-1])
    for k in reversed(ks[:-1]):
        val = k - 1 / val
    return val


def alphas(b1: int, b2: int, b3: int) -> tuple[int, int, int, int]:
    """The four exponent offsets; alpha1 is always the smallest."""
    p = b1 * b2 * b3
    e12, e13, e23 = b1 * b2, b1 * b3, b2 * b3
    return (
        p - e12 - e13 - e23,
        p + e12 - e13 - e23,
        p - e12 + e13 - e23,
        p + e12 + e13 - e23,
    )


def _leg_fractions(b: tuple[int, int, int], a: tuple[int, int, int]):
    return tuple(tuple(hj_continued_fraction(bi, ai)) for bi, ai in zip(b, a))


def build_plumbing_from_legs(seifert_b: int, leg_fractions) -> PlumbingGraph:
    """Star tree: vertex 0 is the center with weight b; leg i follows as
    a path with weights -k_{i,1}, ..., -k_{i,s_i} (terminal last)."""
    weights = [seifert_b]
    edges = []
    for frac in leg_fractions:
        prev = 0
        for k in frac:
            weights.append(-k)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return PlumbingGraph(tuple(weights), tuple(edges))


def build_plumbing(d: BrieskornData) -> PlumbingGraph:
    return build_plumbing_from_legs(d.seifert_b, d.leg_fractions)


def _terminal_indices(leg_fractions) -> list[int]:
    idx = []
    pos = 0
    for frac in leg_fractions:
        pos += len(frac)
        idx.append(pos)  # center is 0, legs occupy 1..; terminal = last of block
    return idx


def leg_determinants(g: PlumbingGraph, leg_fractions) -> tuple[int, int, int]:
    """h_i = |det| of the linking matrix after deleting leg i's terminal vertex."""
    hs = []
    for t in _terminal_indices(leg_fractions):
        det = g.delete_vertex(t).linking_matrix().determinant()
        hs.append(abs(int(det)))
    return tuple(hs)


def compute_xi_delta0(
    b: tuple[int, int, int],
    h: tuple[int, int, int],
    g: PlumbingGraph,
) -> tuple[Fraction, Fraction]:
    """xi = (sum h_i - 3s - Tr(M) - b2*b3/b1 - b1*b3/b2 - b1*b2/b3)/4 and
    delta0 = xi + alpha1^2/(4p)."""
    b1, b2, b3 = b
    if (b1, b2, b3) == (2, 3, 5):
        raise ExcludedTriple("the closed form needs an extra term for (2, 3, 5)")
    s = g.vertex_count
    tr = g.linking_matrix().trace()
    xi = (
        sum(h) - 3 * s - tr
        - Fraction(b2 * b3, b1) - Fraction(b1 * b3, b2) - Fraction(b1 * b2, b3)
    ) / 4
    p = b1 * b2 * b3
    a1 = alphas(b1, b2, b3)[0]
    return xi, xi + Fraction(a1 * a1, 4 * p)


def brieskorn_data(b1: int, b2: int, b3: int, seifert_override=None) -> BrieskornData:
    """Run the full pipeline for one triple.

    ``seifert_override`` is an optional (b, a1, a2, a3) tuple; it must
    satisfy the defining equation with a_i > 0, and building the star
    plumbing additionally needs a_i < b_i (which pins the canonical
    solution, so any valid override reproduces it).
    """
    validate_triple(b1, b2, b3)
    if (b1, b2, b3) == (2, 3, 5):
        raise ExcludedTriple("the closed form needs an extra term for (2, 3, 5)")
    if seifert_override is not None:
        b, a1, a2, a3 = (int(x) for x in seifert_override)
        p = b1 * b2 * b3
        lhs = p * b + b2 * b3 * a1 + b1 * b3 * a2 + b1 * b2 * a3
        if lhs != -1:
            raise InvalidTriple(f"Seifert data {seifert_override} does not satisfy the defining equation (got {lhs})")
        if not all(0 < ai for ai in (a1, a2, a3)):
            raise InvalidTriple("Seifert data needs a_i > 0")
        if not (a1 < b1 and a2 < b2 and a3 < b3):
            raise InvalidTriple("star plumbing construction needs a_i < b_i")
    else:
        b, a1, a2, a3 = solve_seifert_data(b1, b2, b3)
    legs = _leg_fractions((b1, b2, b3), (a1, a2, a3))
    assert all(len(f) >= 1 for f in legs)  # a_i >= 1 and b_i >= 2 force nonempty legs
    g = build_plumbing_from_legs(b, legs)
    h = leg_determinants(g, legs)
    xi, delta0 = compute_xi_delta0((b1, b2, b3), h, g)
    return BrieskornData(
        (b1, b2, b3), b, (a1, a2, a3), b1 * b2 * b3, alphas(b1, b2, b3), legs, h, xi, delta0
    )


def zhat0_brieskorn(b1: int, b2: int, b3: int, order, data: BrieskornData | None = None) -> ZhatResult:
    """Series via the theta combination, normalized to q^delta0 * tail.

    ``order`` bounds the tail exponents (integers >= 0); the tail has
    constant term 1 and integer coefficients.
    """
    d = data if data is not None else brieskorn_data(b1, b2, b3)
    order = Fraction(order)
    p = d.p
    a1 = d.alphas[0]
    shift = Fraction(a1 * a1, 4 * p)
    abs_order = shift + order
    combo = QSeries.zero(abs_order, 4 * p)
    for alpha, sign in zip(d.alphas, (1, -1, -1, 1)):
        combo = combo + false_theta(p, alpha, abs_order).scale(sign)
    tail = combo.shift_exponent(-shift)
    rep = SpinCRep(build_plumbing(d).degree_vector(), 0)  # unique class of a ZHS
    return ZhatResult(rep, d.delta0, tail, 0, 1, order)


def tail_order_for_terms(b1: int, b2: int, b3: int, count: int) -> int:
    """Smallest integer tail order that realizes ``count`` series terms.

    The tail exponents are ((n^2 - alpha1^2)/4p) over n >= 0 in the
    eight residue progressions +-alpha_i mod 2p; all are distinct, so
    the count-th smallest exponent is exact.
    """
    al = alphas(b1, b2, b3)
    p = b1 * b2 * b3
    exps: list[Fraction] = []
    shell = 0
    while len(exps) < 4 * count:
        base = 2 * p * shell
        for a in al:
            for n in (base + a, base + 2 * p - a):
                exps.append(Fraction(n * n - al[0] ** 2, 4 * p))
        shell += 1
    exps = sorted(set(exps))
    target = exps[count - 1]
    assert target.denominator == 1
    return int(target)
