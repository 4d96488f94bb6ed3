"""Riemann-Roch squares: associated series, modified pushforwards, verifiers.

Every verifier evaluates both sides of a commutative square on a list of
source elements (the full monomial basis by default; by linearity this is a
complete check) and records the exact residual of each case.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .classes import (
    ADAMS,
    CHERN,
    IDENTITY,
    TWISTED,
    Transformation,
    adams_op,
    additive_ext_op,
    chern_op,
    multiplicative_extension,
    phi_grading,
    theta_literal,
)
from .coeff import integrality_profile, invert_coefficient
from .errors import BadOrder, BadParam, ConsistencyError, NonUnit, SolveFailure
from .model import (
    CH,
    IMMERSION,
    K,
    MorphismDesc,
    Space,
    TheoryRing,
    TruncatedPolynomial,
    euler_characteristic_oracle,
    immersions_into,
    line_element,
    O,
    normal_bundle,
    projections_from,
    pushforward,
    relative_tangent,
    tangent_bundle,
    to_point,
    x_class,
)
from .report import IntegralityEntry, VerificationReport
from .series import UnivariateSeries, builtin_series, series_invert


@lru_cache(maxsize=None)
def associated_series(phi: Transformation, order: int, source_law: str = K) -> UnivariateSeries:
    """The series ``S`` with ``phi(x) = S(xbar) xbar`` on ``P^order``.

    ``x`` and ``xbar`` are the first Chern classes of the tautological bundle
    in the source and target model.  ``phi(x)`` is peeled off one power of
    ``xbar`` at a time (``xbar = -y + ...`` makes the system triangular), and
    the result has order ``order - 1``.
    """
    if order < 1:
        raise BadOrder("the probe projective space must have dimension >= 1")
    space = Space((order,))
    law = phi.source_law or source_law
    source = TheoryRing(space, law, phi.p)
    target = phi.target_ring(source)
    residual = phi(x_class(source))
    xbar = x_class(target)
    if not residual.constant_term().is_zero():
        raise SolveFailure(f"{phi} does not send x to the augmentation ideal")
    coeffs = []
    power = target.one()
    for n in range(1, order + 1):
        power = power * xbar
        lead = power.coefficient((n,))
        a_n = residual.coefficient((n,)) * invert_coefficient(lead)
        coeffs.append(a_n)
        residual = residual - power * a_n
    if not residual.is_zero():
        raise SolveFailure(f"triangular solve for {phi} left residual {residual}")
    return UnivariateSeries(coeffs, target.p)


def series_for(phi: Transformation, *spaces: Space) -> UnivariateSeries:
    """Associated series long enough to be evaluated on each of ``spaces``."""
    return associated_series(phi, max(s.dimension for s in spaces) + 1)


class ModifiedPushforward:
    """``f_*^S = f_*(S_x(-T_f) . _)`` on one model, with the two-sided form cross-checked."""

    def __init__(self, S: UnivariateSeries, m: MorphismDesc, ring: TheoryRing):
        if ring.space != m.source:
            raise BadParam(f"{ring} is not the source of {m}")
        if not S.coeffs[0].is_unit():
            raise NonUnit(f"series {S} is not invertible")
        self.S = S
        self.m = m
        self.ring = ring
        self.correction = multiplicative_extension(S, -relative_tangent(m), ring)
        target = ring.on(m.target)
        self._outer = multiplicative_extension(S, tangent_bundle(m.target), target)
        self._inner = multiplicative_extension(S, -tangent_bundle(m.source), ring)

    def __call__(self, a: TruncatedPolynomial, check: bool = True) -> TruncatedPolynomial:
        value = pushforward(self.m, self.correction * a)
        if check:
            two_sided = self._outer * pushforward(self.m, self._inner * a)
            if two_sided != value:
                raise ConsistencyError(
                    f"modified pushforward along {self.m}: {value} vs two-sided {two_sided}"
                )
        return value


def modified_pushforward(
    S: UnivariateSeries, m: MorphismDesc, a: TruncatedPolynomial
) -> TruncatedPolynomial:
    return ModifiedPushforward(S, m, a.ring)(a)


def _samples(ring: TheoryRing, samples: Optional[Sequence], limit: Optional[int] = None) -> list:
    if samples is None:
        samples = ring.basis()
    else:
        samples = [s if s.ring == ring else s.relabel(ring) for s in samples]
    if limit is not None:
        samples = list(samples)[:limit]
    return list(samples)


def _k_ring(space: Space, phi: Transformation) -> TheoryRing:
    return TheoryRing(space, K, phi.p)


def verify_immersion_rr(
    phi: Transformation,
    i: MorphismDesc,
    samples: Optional[Sequence] = None,
    limit: Optional[int] = None,
) -> VerificationReport:
    """``phi(i_* a) = i_*(S_x(N_i) . phi(a))``; no inversion is ever needed."""
    if i.kind != IMMERSION:
        raise BadParam(f"{i} is not an immersion")
    if phi.kind == ADAMS and phi.j == 0:
        raise BadParam("psi^0 is excluded from Riemann-Roch squares")
    kz = _k_ring(i.source, phi)
    tz = phi.target_ring(kz)
    S = series_for(phi, i.source)
    report = VerificationReport(
        "immersion-rr", {"phi": str(phi), "morphism": str(i), "S": str(S)}
    )
    N = normal_bundle(i)
    corr = multiplicative_extension(S, N, tz)
    report.add("S_x(N) = S_x(-T_i)", corr, multiplicative_extension(S, -relative_tangent(i), tz), "correction")
    if phi.kind == ADAMS:
        report.add(
            f"S_x(N) = theta^{phi.j}(N*)", corr, theta_literal(phi.j, N.dual(), kz), "correction"
        )
    for a in _samples(kz, samples, limit):
        lhs = phi(pushforward(i, a))
        rhs = pushforward(i, corr * phi(a))
        report.add(a, lhs, rhs, "square")
    return report


def verify_projective_rr(
    phi: Transformation,
    f: MorphismDesc,
    samples: Optional[Sequence] = None,
    limit: Optional[int] = None,
) -> VerificationReport:
    """``phi(f_* a) = f_*(S_x(-T_f) . phi(a))`` for invertible ``S``.

    For Adams operations the correction is also computed as
    ``theta^j(Omega_f)^-1`` and every coefficient is certified integral
    after inverting ``j``; for the Chern character it is compared with
    ``Td(T_f)``.
    """
    if phi.kind == ADAMS and phi.j == 0:
        raise BadParam("psi^0 is excluded from Riemann-Roch squares")
    ky = _k_ring(f.source, phi)
    ty = phi.target_ring(ky)
    S = series_for(phi, f.source, f.target)
    if not S.coeffs[0].is_unit():
        raise NonUnit(f"associated series {S} of {phi} is not invertible")
    push = ModifiedPushforward(S, f, ty)
    corr = push.correction
    report = VerificationReport(
        "projective-rr", {"phi": str(phi), "morphism": str(f), "S": str(S)}
    )
    T_f = relative_tangent(f)
    if phi.kind == ADAMS:
        classical = theta_literal(phi.j, T_f.dual(), ky).inverse()
        report.add(f"S_x(-T_f) = theta^{phi.j}(Omega_f)^-1", corr, classical, "correction")
        for exp, c in corr.coefficients():
            verdict, den = integrality_profile(c, phi.j)
            report.integrality.append(
                IntegralityEntry(f"{f}: y^{list(exp)}", str(c), verdict.value, den)
            )
    elif phi.kind == CHERN:
        todd = series_invert(S)
        report.add("S_x(-T_f) = Td(T_f)", corr, multiplicative_extension(todd, T_f, ty), "correction")
    for a in _samples(ky, samples, limit):
        lhs = phi(pushforward(f, a))
        rhs = push(phi(a))
        report.add(a, lhs, rhs, "square")
    return report


def _morphisms(space: Space) -> list:
    return projections_from(space) + immersions_into(space)


def verify_cube(
    space: Space,
    j: int,
    samples: Optional[int] = None,
    morphisms: Optional[Iterable[MorphismDesc]] = None,
) -> VerificationReport:
    """All five faces of the Adams / Chern character / grading cube.

    ``samples`` optionally caps the number of basis elements per case list.
    """
    if j == 0:
        raise BadParam("the cube needs j != 0")
    psi, ch = adams_op(j), chern_op()
    kx = TheoryRing(space, K)
    report = VerificationReport("cube", {"space": list(space.dims), "j": j})
    for a in _samples(kx, None, samples):
        lhs = ch(psi(a))
        rhs = phi_grading(j, ch(a))
        report.add(a, lhs, rhs, "ch o psi = Phi o ch")
        for n in range(space.dimension + 1):
            report.add(
                f"ch_{n}({a})",
                lhs.homogeneous_part(n),
                ch(a).homogeneous_part(n) * j**n,
                "ch o psi = Phi o ch",
            )
    morphisms = list(_morphisms(space) if morphisms is None else morphisms)
    report.params["morphisms"] = [str(m) for m in morphisms]
    for f in morphisms:
        report.extend(verify_projective_rr(psi, f, limit=samples), group="top (Adams-RR)")
        report.extend(verify_projective_rr(ch, f, limit=samples), group="back (GRR)")
        ky = TheoryRing(f.source, K)
        cy = TheoryRing(f.source, CH)
        order = max(f.source.dimension, f.target.dimension) + 1
        B = associated_series(psi, order)
        T = associated_series(ch, order)
        Sj = builtin_series("Sj", order - 1, j=j)
        push_b = ModifiedPushforward(B, f, ky)
        push_t = ModifiedPushforward(T, f, cy)
        push_s = ModifiedPushforward(Sj, f, cy)
        for a in _samples(ky, None, samples):
            report.add(f"{f}: {a}", ch(push_b(a)), push_s(ch(a)), "front (ch)")
        for b in _samples(cy, None, samples):
            report.add(
                f"{f}: {b}", phi_grading(j, push_t(b)), push_s(phi_grading(j, b)), "bottom (Phi)"
            )
    return report


def verify_unique_k_morphism(space: Space) -> VerificationReport:
    """The additive extension of ``1/(1-t)`` into K is the identity and commutes
    with every pushforward without correction."""
    phi = additive_ext_op("Geometric", K)
    kx = TheoryRing(space, K)
    report = VerificationReport("unique-k", {"space": list(space.dims), "phi": str(phi)})
    S = associated_series(phi, max(space.dimension, 1) + 1)
    report.add("associated series", S, UnivariateSeries.constant(1, S.order), "series")
    for a in kx.basis():
        report.add(a, phi(a), a, "identity")
    for f in _morphisms(space):
        for a in TheoryRing(f.source, K).basis():
            report.add(f"{f}: {a}", phi(pushforward(f, a)), pushforward(f, phi(a)), "pushforward")
    return report


def chi_table(d: int, n_min: int, n_max: int) -> tuple[list, VerificationReport]:
    """``chi(P^d, O(n))`` three ways: K pushforward, GRR square, and the oracle.

    Returns rows ``(n, k_value, grr_value, oracle)`` and a report comparing
    both computed columns with the oracle.
    """
    if d < 0:
        raise BadParam("d must be >= 0")
    if n_min > n_max:
        raise BadParam(f"empty range: n-min {n_min} > n-max {n_max}")
    space = Space((d,))
    f = to_point(space)
    k_ring = TheoryRing(space, K)
    ch = chern_op()
    grr = ModifiedPushforward(associated_series(ch, d + 1), f, k_ring.with_law(CH))
    report = VerificationReport("chi-table", {"d": d, "n_min": n_min, "n_max": n_max})
    rows = []
    for n in range(n_min, n_max + 1):
        line = line_element(k_ring, O(n))
        k_value = pushforward(f, line).constant_term()
        grr_value = grr(ch(line)).constant_term()
        oracle = euler_characteristic_oracle(d, n)
        report.add(f"K: chi(P^{d}, O({n}))", k_value, oracle, "K pushforward")
        report.add(f"GRR: chi(P^{d}, O({n}))", grr_value, oracle, "GRR square")
        rows.append((n, k_value, grr_value, oracle))
    return rows, report
