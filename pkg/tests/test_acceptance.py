"""Acceptance suite: one check per criterion, exact equality throughout.

Each ``criterion_N`` returns a list of failure descriptions (empty on
success).  The pytest wrappers record a PASS/FAIL line per criterion that
``conftest.py`` prints at the end of the run; running this file directly
prints the same lines.
"""

from __future__ import annotations

import itertools
import math
import time
from fractions import Fraction
from unittest import mock

import pytest

from adamsrr import classes, model, rr, series
from adamsrr.classes import (
    adams,
    adams_op,
    chern_op,
    identity_op,
    multiplicative_extension,
    newton_s,
    twisted_chern_op,
)
from adamsrr.coeff import Coefficient
from adamsrr.model import (
    CH,
    K,
    O,
    Space,
    TheoryRing,
    VirtualBundle,
    compose,
    from_lines,
    immersion,
    immersions_into,
    projection,
    projections_from,
    pullback,
    pushforward,
    tangent_bundle,
)
from adamsrr.series import (
    BivariateSeries,
    UnivariateSeries,
    builtin_series,
    check_group_law,
    check_multiplicativity,
    group_law,
)

NONZERO_J = [j for j in range(-3, 6) if j]
RESULTS: dict = {}


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def spaces_up_to(total):
    return [Space(p) for n in range(1, total + 1) for p in _partitions(n)]


def morphisms_on(space):
    return projections_from(space) + immersions_into(space)


def _report_failures(label, report, out):
    if not report.passed:
        out.append(f"{label}: {report.summary()}")


# 1 -----------------------------------------------------------------------------


def criterion_1():
    out = []
    for tag in ("additive", "multiplicative"):
        _report_failures(tag, check_group_law(group_law(tag, 8).series), out)
    bad = BivariateSeries(8, {(1, 0): 1, (0, 1): 1, (1, 2): 1})
    report = check_group_law(bad)
    assoc = [c for c in report.cases if c.input.startswith("(c)")]
    if not assoc or assoc[0].passed:
        out.append("u+v+uv^2 was not rejected by the associativity check")
    return out


# 2 -----------------------------------------------------------------------------


def criterion_2():
    out = []
    mult = group_law("multiplicative", 8)
    for j in NONZERO_J:
        _report_failures(f"(1-t)^-{j}", check_multiplicativity(builtin_series("OneMinusTPow", 8, j=j), mult), out)
    _report_failures("exp", check_multiplicativity(builtin_series("Exp", 8), group_law("additive", 8)), out)
    for p in (2, 3, 5):
        law = group_law("additive", 8, p=p)
        _report_failures(f"exp_eps p={p}", check_multiplicativity(builtin_series("ExpEps", 8, p=p), law), out)
    one_plus_t = UnivariateSeries([1, 1] + [0] * 7)
    if check_multiplicativity(one_plus_t, mult).passed:
        out.append("1+t was accepted under the multiplicative law")
    return out


# 3 -----------------------------------------------------------------------------


def criterion_3():
    out = []
    for j in (2, 3, 4, 5):
        S = rr.associated_series(adams_op(j), j + 2)
        # (1 - (1-t)^j)/t has coefficient (-1)^k C(j, k+1) at t^k
        expected = [(-1) ** k * math.comb(j, k + 1) for k in range(j + 2)]
        if list(S.coeffs) != expected:
            out.append(f"B^{j}: got {S}")
    T = rr.associated_series(chern_op(), 7)
    if list(T.coeffs) != [Fraction((-1) ** n, math.factorial(n + 1)) for n in range(7)]:
        out.append(f"T: got {T}")
    ident = rr.associated_series(identity_op(), 6)
    if list(ident.coeffs) != [1, 0, 0, 0, 0, 0]:
        out.append(f"identity: got {ident}")
    for p in (3, 5):
        S = rr.associated_series(twisted_chern_op(p), 6)
        e = Coefficient.eps(p)
        expected = [e ** (n + 1) * Fraction((-1) ** n, math.factorial(n + 1)) for n in range(6)]
        if list(S.coeffs) != expected:
            out.append(f"ch_eps p={p}: got {S}")
        if str(S).split(" + ")[0] != "e - 1/2*e^2*t":
            out.append(f"ch_eps p={p}: leading terms {S}")
    return out


# 4 -----------------------------------------------------------------------------


def _binomial_oracle(d, n):
    """Independent of the package: count monomials, then Serre duality."""
    if n >= 0:
        return len([m for m in itertools.combinations_with_replacement(range(d + 1), n)])
    if n >= -d:
        return 0
    return (-1) ** d * _binomial_oracle(d, -n - d - 1)


def criterion_4():
    out = []
    for d in range(0, 7):
        rows, report = rr.chi_table(d, -d - 3, 6)
        _report_failures(f"P^{d}", report, out)
        for n, k_value, grr_value, oracle in rows:
            reference = _binomial_oracle(d, n)
            if not (k_value == grr_value == oracle == reference):
                out.append(f"chi(P^{d}, O({n})): K {k_value}, GRR {grr_value}, oracle {reference}")
            if n >= 0 and k_value != math.comb(n + d, d):
                out.append(f"chi(P^{d}, O({n})) != C({n + d},{d})")
    return out


# 5 -----------------------------------------------------------------------------


def _no_inversion(*_args, **_kwargs):
    raise AssertionError("an inversion was attempted")


def criterion_5():
    out = []
    immersions = [immersion(Space((d,)), 0, c) for d in range(1, 6) for c in range(1, d + 1)]
    for i in immersions:
        for j in NONZERO_J:
            report = rr.verify_immersion_rr(adams_op(j), i)
            if not any("theta" in str(c.input) for c in report.cases):
                out.append(f"psi^{j} on {i}: theta cross-check missing")
            _report_failures(f"psi^{j} on {i}", report, out)
    with mock.patch.object(model.TruncatedPolynomial, "inverse", _no_inversion), \
            mock.patch.object(series, "series_invert", _no_inversion), \
            mock.patch.object(rr, "series_invert", _no_inversion):
        for i in immersions:
            for p in (2, 3, 5):
                _report_failures(f"ch_eps p={p} on {i}", rr.verify_immersion_rr(twisted_chern_op(p), i), out)
    return out


# 6 -----------------------------------------------------------------------------


def criterion_6():
    out = []
    for space in spaces_up_to(6):
        for f in morphisms_on(space):
            for j in NONZERO_J:
                report = rr.verify_projective_rr(adams_op(j), f)
                if not report.integrality:
                    out.append(f"psi^{j} on {f}: no integrality certificate")
                _report_failures(f"psi^{j} on {f}", report, out)
            report = rr.verify_projective_rr(chern_op(), f)
            if not any("Td" in str(c.input) for c in report.cases):
                out.append(f"ch on {f}: Todd comparison missing")
            _report_failures(f"ch on {f}", report, out)
    return out


# 7 -----------------------------------------------------------------------------

CUBE_GROUPS = {"ch o psi = Phi o ch", "top (Adams-RR)", "back (GRR)", "front (ch)", "bottom (Phi)"}


def criterion_7():
    out = []
    for dims in ((2,), (3,), (1, 1), (2, 1)):
        for j in (2, 3, 5):
            report = rr.verify_cube(Space(dims), j)
            groups = report.groups()
            if set(groups) != CUBE_GROUPS:
                out.append(f"cube {dims} j={j}: faces {sorted(groups)}")
            if not any(str(c.input).startswith("ch_") for c in report.cases):
                out.append(f"cube {dims} j={j}: degree-wise checks missing")
            _report_failures(f"cube {dims} j={j}", report, out)
    return out


# 8 -----------------------------------------------------------------------------


def criterion_8():
    out = []
    for d in range(0, 5):
        report = rr.verify_unique_k_morphism(Space((d,)) if d else Space(()))
        _report_failures(f"P^{d}", report, out)
    return out


# 9 -----------------------------------------------------------------------------


def _structural_projection_formula(out):
    for space in spaces_up_to(4):
        for law in (CH, K):
            for f in morphisms_on(space):
                src, tgt = TheoryRing(f.source, law), TheoryRing(f.target, law)
                for a in src.basis():
                    for b in tgt.basis():
                        if pushforward(f, a * pullback(f, b)) != pushforward(f, a) * b:
                            out.append(f"projection formula {law} {f} at {a}, {b}")


def _structural_functoriality(out):
    for law in (CH, K):
        for d in range(2, 6):
            for c_outer in range(1, d):
                for c_total in range(c_outer + 1, d + 1):
                    outer = immersion(Space((d,)), 0, c_outer)
                    inner = immersion(outer.source, 0, c_total - c_outer)
                    comp = compose(outer, inner)
                    for a in TheoryRing(inner.source, law).basis():
                        if pushforward(outer, pushforward(inner, a)) != pushforward(comp, a):
                            out.append(f"functoriality {law} {comp}")
        for space in (Space((2, 1, 1)), Space((1, 1, 1, 1))):
            for first in projections_from(space):
                for second in projections_from(first.target):
                    comp = compose(second, first)
                    for a in TheoryRing(space, law).basis():
                        if pushforward(second, pushforward(first, a)) != pushforward(comp, a):
                            out.append(f"functoriality {law} {comp}")


def _structural_base_change(out):
    for law in (CH, K):
        for d in range(1, 4):
            for e in range(1, 4):
                pi = projection(Space((d, e)), [0])
                pt = immersion(Space((e,)), 0, e)
                pi_pt = projection(Space((d, 0)), [0])
                pt_up = immersion(Space((d, e)), 1, e)
                for a in TheoryRing(pi.source, law).basis():
                    if pullback(pt, pushforward(pi, a)) != pushforward(pi_pt, pullback(pt_up, a)):
                        out.append(f"base change {law} d={d} e={e} at {a}")


def _structural_relations(out):
    phis = [adams_op(2), adams_op(-3), chern_op(), twisted_chern_op(3)]
    for dims in ((2,), (1, 2), (3, 1), (2, 2)):
        r = TheoryRing(Space(dims), K)
        zero = [0] * len(dims)
        for i, d in enumerate(dims):
            hyper = {O(*zero): 1, O(*[(-1 if k == i else 0) for k in range(len(dims))]): -1}
            relation = from_lines(r, hyper) ** (d + 1)
            if not relation.is_zero():
                out.append(f"relation for factor {i} of {dims} survives")
            for phi in phis:
                if not phi(relation).is_zero():
                    out.append(f"{phi} does not kill the relation on {dims}")
            E = VirtualBundle.of(r.space, {
                O(*[(-m if k == i else 0) for k in range(len(dims))]): (-1) ** m * math.comb(d + 1, m)
                for m in range(d + 2)
            })
            if multiplicative_extension(builtin_series("Bj", r.nilpotency, j=2), E, r) != 1:
                out.append(f"B^2_x does not send the relation on {dims} to 1")


def _structural_adams(out):
    r = TheoryRing(Space((2, 1)), K)
    js = range(-2, 4)
    for j, k in itertools.product(js, js):
        for a in r.basis():
            if adams(j, adams(k, a)) != adams(j * k, a):
                out.append(f"psi^{j} psi^{k} != psi^{j * k} on {a}")
    for a in r.basis():
        if adams(1, a) != a:
            out.append(f"psi^1 moves {a}")


def _structural_newton(out):
    for law in (CH, K):
        r = TheoryRing(Space((2, 2)), law)
        bundles = [
            VirtualBundle.of(r.space, {O(1, 0): 1, O(0, 1): 1}),
            VirtualBundle.of(r.space, {O(2, -1): 2, O(-1, 3): -1}),
            tangent_bundle(r.space),
        ]
        for E in bundles:
            for m in range(7):
                try:
                    newton_s(m, E, r)
                except Exception as exc:  # NewtonMismatch or worse
                    out.append(f"newton s_{m}({E}) on {law}: {exc}")


def _structural_inverse_bundles(out):
    names = [("Bj", {"j": 2}), ("Bj", {"j": -3}), ("T", {}), ("Todd", {}), ("Sj", {"j": 5}), ("OneMinusTPow", {"j": 3})]
    for dims in ((2,), (2, 1), (1, 1, 1)):
        for law in (CH, K):
            r = TheoryRing(Space(dims), law)
            bundles = [tangent_bundle(r.space), VirtualBundle.of(r.space, {O(*([1] * len(dims))): 2, O(*([-1] * len(dims))): -1})]
            for name, params in names:
                F = builtin_series(name, r.nilpotency, **params)
                for E in bundles:
                    if multiplicative_extension(F, -E, r) != multiplicative_extension(F, E, r).inverse():
                        out.append(f"{name}_x(-E) != {name}_x(E)^-1 for {E} on {law}")


def criterion_9():
    out = []
    for check in (
        _structural_projection_formula,
        _structural_functoriality,
        _structural_base_change,
        _structural_relations,
        _structural_adams,
        _structural_newton,
        _structural_inverse_bundles,
    ):
        check(out)
    return out


CRITERIA = {
    1: ("group laws", criterion_1),
    2: ("multiplicativity", criterion_2),
    3: ("associated series", criterion_3),
    4: ("Euler characteristics", criterion_4),
    5: ("immersion squares", criterion_5),
    6: ("projective squares", criterion_6),
    7: ("cube", criterion_7),
    8: ("unique K morphism", criterion_8),
    9: ("structural properties", criterion_9),
}

TIME_BUDGET = 60.0


def run_criterion(number):
    label, check = CRITERIA[number]
    start = time.perf_counter()
    failures = check()
    elapsed = time.perf_counter() - start
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} ({label}): {status} [{elapsed:.2f}s]"
    RESULTS[number] = (line, failures, elapsed)
    return line, failures


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    line, failures = run_criterion(number)
    print(line)
    assert not failures, "\n".join(failures[:20])


def test_time_budget():
    missing = [n for n in CRITERIA if n not in RESULTS]
    if missing:
        pytest.skip(f"criteria {missing} were not run in this session")
    total = sum(elapsed for _, _, elapsed in RESULTS.values())
    print(f"acceptance total: {total:.2f}s (budget {TIME_BUDGET:.0f}s)")
    assert total < TIME_BUDGET


if __name__ == "__main__":
    total = 0.0
    for n in sorted(CRITERIA):
        line, failures = run_criterion(n)
        total += RESULTS[n][2]
        print(line, flush=True)
        for f in failures[:20]:
            print("   ", f)
    print(f"acceptance total: {total:.2f}s (budget {TIME_BUDGET:.0f}s)")
