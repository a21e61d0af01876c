"""Recipe search: realize a target density as a belted sum of two links.

Any value between the modified densities of two anchor links L1, L2 is a
convex combination alpha*vd_mod(L1) + (1-alpha)*vd_mod(L2).  Mixing k
copies of L1 with l copies of L2 realizes the combination with effective
weight ratio k*(a1-1) : l*(a2-1), so driving k/l toward

    r = (a2-1)*alpha / ((a1-1)*(1-alpha))

makes the mixture converge to the target.  Continued-fraction
convergents of r supply the (k, l) pairs: they are the best rational
approximations per denominator and reach any tolerance in O(log) steps.

The plain (non-modified) density of a recipe always sits below its
modified density by exactly vd_mod/(m*atilde+1) after replicating the
whole recipe m times, so targets for vd are reached by first matching
vd_mod to half the tolerance and then replicating until the remaining
gap fits in the other half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .calculus import (
    Composition,
    DensityValue,
    composition,
    format_recipe,
    modified_augmentations,
    replicate,
    replication_error,
    self_sum,
    vd,
    vd_mod,
)
from .catalog import BaseLink
from .errors import CapExceededError, DegeneratePairError, DomainError, TargetRangeError
from .numerics import PrecisionContext

__all__ = [
    "Convergent",
    "DEFAULT_MAX_DENOMINATOR",
    "Recipe",
    "alpha_for_target",
    "approximate_vd",
    "approximate_vd_mod",
    "best_rational_approximations",
    "target_ratio",
]

#: Convergents are plain fractions in lowest terms.
Convergent = Fraction

DEFAULT_MAX_DENOMINATOR = 10**9


@dataclass(frozen=True)
class Recipe:
    """A found approximation: m replications of (k copies of L1 + l copies of L2).

    ``composition`` is the fully expanded multiset (m*k copies of L1 and
    m*l copies of L2); re-evaluating it through the calculus module
    reproduces the stored densities exactly.  ``error`` is the distance
    of the mode's achieved density from the target.
    """

    k: int
    l: int
    m: int
    composition: Composition
    achieved_vd_mod: DensityValue
    achieved_vd: DensityValue
    error: Decimal
    target: Decimal
    mode: str

    def recipe_string(self) -> str:
        return format_recipe(self.composition)


def _as_decimal(value) -> Decimal:
    if isinstance(value, DensityValue):
        return value.evaluated
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        raise DomainError("densities must be Decimal, not float")
    return Decimal(value)


def alpha_for_target(target, v1, v2, ctx: PrecisionContext) -> Fraction:
    """Exact mixing weight alpha with target = alpha*v1 + (1-alpha)*v2."""
    t, d1, d2 = _as_decimal(target), _as_decimal(v1), _as_decimal(v2)
    tol = ctx.comparison_tolerance
    if abs(d1 - d2) <= tol:
        raise DegeneratePairError(
            f"anchor densities {d1} and {d2} coincide within tolerance; no mixing ratio exists"
        )
    low, high = sorted((d1, d2))
    if t < low - tol or t > high + tol:
        raise TargetRangeError(f"target {t} lies outside [{low}, {high}]")
    alpha = (Fraction(t) - Fraction(d2)) / (Fraction(d1) - Fraction(d2))
    return min(max(alpha, Fraction(0)), Fraction(1))


def target_ratio(alpha: Fraction, atilde1: int, atilde2: int) -> Fraction:
    """Ratio r that k/l must approach so the weights mix as alpha : 1-alpha."""
    if not 0 < alpha < 1:
        raise DomainError(
            f"mixing weight must be strictly between 0 and 1, got {alpha} "
            "(endpoints are pure self-sums of one link)"
        )
    if atilde1 < 1 or atilde2 < 1:
        raise DomainError("modified augmentation counts must be positive")
    return Fraction(atilde2) * alpha / (Fraction(atilde1) * (1 - alpha))


def best_rational_approximations(r, max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> list[Fraction]:
    """Continued-fraction convergents of r with denominator <= max_denominator.

    Emitted in increasing denominator order; every convergent p/q
    satisfies |r - p/q| < 1/q^2 and is a best approximation among all
    fractions with denominator at most q.  A leading integer convergent
    that the next convergent (same denominator 1) supersedes is dropped,
    as are zero-numerator convergents of r < 1.
    """
    if isinstance(r, float):
        raise DomainError("pass the ratio as Fraction, Decimal or string, not float")
    value = Fraction(r)
    if value <= 0:
        raise DomainError(f"ratio must be positive, got {r}")
    if not isinstance(max_denominator, int) or max_denominator < 1:
        raise DomainError(f"max_denominator must be a positive integer, got {max_denominator!r}")

    convergents: list[Fraction] = []
    h_prev, h = 0, 1  # numerator recurrence seeds p_{n-2}, p_{n-1}
    k_prev, k = 1, 0  # denominator recurrence seeds q_{n-2}, q_{n-1}
    num, den = value.numerator, value.denominator
    while den:
        a, rem = divmod(num, den)
        num, den = den, rem
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        if k > max_denominator:
            break
        if h == 0:
            continue
        candidate = Fraction(h, k)
        if convergents and convergents[-1].denominator == k:
            convergents[-1] = candidate
        else:
            convergents.append(candidate)
    return convergents


def _endpoint_recipe(link: BaseLink, is_first: bool, target: Decimal, ctx: PrecisionContext) -> Recipe:
    c = self_sum(link, 1)
    achieved = vd_mod(c, ctx)
    return Recipe(
        k=1 if is_first else 0,
        l=0 if is_first else 1,
        m=1,
        composition=c,
        achieved_vd_mod=achieved,
        achieved_vd=vd(c, ctx),
        error=abs(achieved.evaluated - target),
        target=target,
        mode="vdmod",
    )


def approximate_vd_mod(
    target,
    link1: BaseLink,
    link2: BaseLink,
    eps,
    ctx: PrecisionContext,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> Recipe:
    """Smallest-denominator convergent recipe with |vd_mod - target| < eps."""
    target = _as_decimal(target)
    eps = _as_decimal(eps)
    if eps <= 0:
        raise DomainError(f"tolerance must be positive, got {eps}")
    tol = ctx.comparison_tolerance
    with localcontext() as dec:
        dec.prec = ctx.working_prec
        v1 = vd_mod(self_sum(link1, 1), ctx)
        v2 = vd_mod(self_sum(link2, 1), ctx)
        err1 = abs(v1.evaluated - target)
        err2 = abs(v2.evaluated - target)
        if err1 <= tol and err1 < eps:
            return _endpoint_recipe(link1, True, target, ctx)
        if err2 <= tol and err2 < eps:
            return _endpoint_recipe(link2, False, target, ctx)

        alpha = alpha_for_target(target, v1, v2, ctx)
        if alpha == 0 or alpha == 1:
            raise DomainError(
                f"target {target} sits at an endpoint but eps={eps} is below the "
                "endpoint error; nothing closer exists"
            )
        ratio = target_ratio(alpha, link1.atilde, link2.atilde)
        for convergent in best_rational_approximations(ratio, max_denominator):
            k, l = convergent.numerator, convergent.denominator
            c = composition({link1: k, link2: l})
            achieved = vd_mod(c, ctx)
            error = abs(achieved.evaluated - target)
            if error < eps:
                return Recipe(
                    k=k,
                    l=l,
                    m=1,
                    composition=c,
                    achieved_vd_mod=achieved,
                    achieved_vd=vd(c, ctx),
                    error=error,
                    target=target,
                    mode="vdmod",
                )
    raise CapExceededError(
        f"no convergent recipe reaches eps={eps} with denominator <= {max_denominator}; "
        "raise the max_denominator cap"
    )


def approximate_vd(
    target,
    link1: BaseLink,
    link2: BaseLink,
    eps,
    ctx: PrecisionContext,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> Recipe:
    """Recipe with |vd - target| < eps.

    Matches vd_mod to eps/2 first, then replicates the whole recipe m
    times; the replication gap vd_mod/(m*atilde+1) has a closed form, so
    the least m bringing it under eps/2 is computed directly.
    """
    target = _as_decimal(target)
    eps = _as_decimal(eps)
    if eps <= 0:
        raise DomainError(f"tolerance must be positive, got {eps}")
    with localcontext() as dec:
        dec.prec = ctx.working_prec
        half = eps / 2
        base = approximate_vd_mod(target, link1, link2, half, ctx, max_denominator)
        core = base.composition
        atilde = modified_augmentations(core)
        vdm = base.achieved_vd_mod.evaluated
        # least m with vd_mod/(m*atilde+1) < eps/2, i.e. m > (2*vd_mod/eps - 1)/atilde
        threshold = (2 * Fraction(vdm) / Fraction(eps) - 1) / atilde
        m = max(1, math.floor(threshold) + 1)
        while replication_error(core, m, ctx) >= half:  # rounding safety; rarely taken
            m += 1
        expanded = core if m == 1 else replicate(core, m)
        achieved_vd = vd(expanded, ctx)
        return Recipe(
            k=base.k,
            l=base.l,
            m=m,
            composition=expanded,
            achieved_vd_mod=vd_mod(expanded, ctx),
            achieved_vd=achieved_vd,
            error=abs(achieved_vd.evaluated - target),
            target=target,
            mode="vd",
        )
