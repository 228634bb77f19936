"""Bundled invariant suite for a single Brieskorn triple.

Used by the ``check`` CLI subcommand: each entry recomputes one of the
structural facts the closed form relies on and reports pass/fail, ending
with a term-for-term comparison between the theta closed form and the
general contour-coefficient engine.
"""

from __future__ import annotations

from fractions import Fraction

from .brieskorn import brieskorn_data, build_plumbing, evaluate_hj, zhat0_brieskorn
from .compare import homology_sphere_delta_check
from .engine import compute_zhat

CheckResult = tuple[str, bool, str]


def run_invariant_suite(b1: int, b2: int, b3: int, order=Fraction(50)) -> list[CheckResult]:
    data = brieskorn_data(b1, b2, b3)
    results: list[CheckResult] = []

    p = data.p
    lhs = p * data.seifert_b + sum(
        (p // bi) * ai for bi, ai in zip(data.b, data.a)
    )
    results.append(("seifert-equation", lhs == -1, f"b={data.seifert_b}, a={data.a}, lhs={lhs}"))

    cf_ok = all(
        evaluate_hj(list(frac)) == Fraction(bi, ai) and all(k >= 2 for k in frac)
        for frac, bi, ai in zip(data.leg_fractions, data.b, data.a)
    )
    results.append(("continued-fraction-round-trip", cf_ok, f"legs={[list(f) for f in data.leg_fractions]}"))

    al = data.alphas
    alpha_ok = (
        al[0] == min(al)
        and all((ai * ai - al[0] ** 2) % (4 * p) == 0 for ai in al)
        and all(0 < ai < 2 * p for ai in al)
    )
    results.append(("alpha-structure", alpha_ok, f"alpha={al}, p={p}"))

    mod1_ok = homology_sphere_delta_check(data.delta0)
    results.append(("delta0-mod-1", mod1_ok, f"delta0={data.delta0}"))

    closed = zhat0_brieskorn(b1, b2, b3, order, data=data)
    engine = compute_zhat(build_plumbing(data), 0, order=order)
    same = (
        closed.delta == engine.delta
        and closed.tail.terms == engine.tail.terms
        and closed.eta_pow2 == engine.eta_pow2
    )
    results.append(
        (
            "engine-cross-check",
            same,
            f"delta0={closed.delta}, terms={len(closed.tail.terms)} (order {order})",
        )
    )
    return results
