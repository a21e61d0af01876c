"""Discreteness-side machinery: volume bounds, certificates, window classes.

Cutting a fully augmented link complement along its reflection surface
leaves two pieces with totally geodesic boundary and Euler characteristic
1 - a, so Miyamoto's theorem (vol >= -v_oct * chi for such manifolds)
bounds the total volume below by 2*(a-1)*v_oct and the density by
2*v_oct*(a-1)/a.  That bound increases with a, which turns any density
threshold below 2*v_oct into a cap on the augmentation count: the
certificates issued here state that cap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

from . import numerics
from .calculus import DensityValue, augmentations, composition, format_recipe, modified_augmentations, vd, vd_mod
from .catalog import Catalog, ExactVolume
from .errors import CapExceededError, DomainError
from .numerics import PrecisionContext

__all__ = [
    "Certificate",
    "DEFAULT_SCAN_CAP",
    "ScanRow",
    "WindowClass",
    "classify",
    "euler_characteristic",
    "max_augmentations_below",
    "miyamoto_volume_lower_bound",
    "spectrum_scan",
    "vd_lower_bound",
]

DEFAULT_SCAN_CAP = 100_000


class WindowClass(enum.Enum):
    BELOW_SPECTRUM = "BelowSpectrum"
    DISCRETE_WINDOW = "DiscreteWindow"
    DENSE_WINDOW = "DenseWindow"
    AT_OR_ABOVE_UPPER_BOUND = "AtOrAboveUpperBound"


@dataclass(frozen=True)
class Certificate:
    """Finiteness statement: every FAL with vd at most ``threshold`` has
    at most ``max_augmentations`` augmentation circles."""

    threshold: Decimal
    max_augmentations: int
    statement: str


def _check_augmentations(a: int) -> None:
    if not isinstance(a, int) or isinstance(a, bool) or a < 2:
        raise DomainError(f"augmentation count must be an integer >= 2, got {a!r}")


def euler_characteristic(a: int) -> int:
    """chi = 1 - a for either half of the cut-open complement."""
    _check_augmentations(a)
    return 1 - a


def miyamoto_volume_lower_bound(a: int, ctx: PrecisionContext) -> Decimal:
    """2*(a-1)*v_oct, attained exactly by octahedral decompositions."""
    _check_augmentations(a)
    voct, _ = numerics._constants_raw(ctx.digits)
    with localcontext() as c:
        c.prec = ctx.working_prec
        return numerics.round_to(2 * (a - 1) * voct, ctx)


def vd_lower_bound(a: int, ctx: PrecisionContext) -> Decimal:
    """2*v_oct*(a-1)/a; strictly increasing in a with supremum 2*v_oct."""
    _check_augmentations(a)
    voct, _ = numerics._constants_raw(ctx.digits)
    with localcontext() as c:
        c.prec = ctx.working_prec
        return numerics.round_to(2 * voct * (a - 1) / a, ctx)


def _density_parts(value) -> tuple[Fraction, Fraction, Fraction]:
    """Normalize a density input to exact (c_oct, c_tet, remainder) parts."""
    if isinstance(value, DensityValue):
        return value.exact_parts()
    if isinstance(value, ExactVolume):
        return value.components()
    if isinstance(value, float):
        raise DomainError("densities must be Decimal (or exact forms), not float")
    if isinstance(value, (Decimal, int, str)):
        return (Fraction(0), Fraction(0), Fraction(Decimal(value)))
    raise DomainError(f"cannot interpret {value!r} as a density")


def _sign_against(parts, oct_coeff: int, tet_coeff: int, ctx: PrecisionContext) -> int:
    """Sign of (parts - boundary) where boundary = oct_coeff*v_oct + tet_coeff*v_tet.

    Decided symbolically when all component differences share a sign,
    numerically with the context tolerance otherwise."""
    d_oct = parts[0] - oct_coeff
    d_tet = parts[1] - tet_coeff
    d_rem = parts[2]
    if d_oct >= 0 and d_tet >= 0 and d_rem >= 0:
        return 0 if not (d_oct or d_tet or d_rem) else 1
    if d_oct <= 0 and d_tet <= 0 and d_rem <= 0:
        return -1
    value = numerics.combination(d_oct, d_tet, d_rem, ctx, rounded=False)
    if abs(value) <= ctx.comparison_tolerance:
        return 0
    return 1 if value > 0 else -1


def classify(density, ctx: PrecisionContext) -> WindowClass:
    """Place a density against the half-open windows
    [v_oct, 2*v_oct) discrete and [2*v_oct, 10*v_tet) dense.

    Accepts a Decimal, an ExactVolume, or a DensityValue; exact inputs
    are classified symbolically, decimals within the context tolerance of
    a boundary count as sitting on it."""
    parts = _density_parts(density)
    if _sign_against(parts, 1, 0, ctx) < 0:
        return WindowClass.BELOW_SPECTRUM
    if _sign_against(parts, 2, 0, ctx) < 0:
        return WindowClass.DISCRETE_WINDOW
    if _sign_against(parts, 0, 10, ctx) < 0:
        return WindowClass.DENSE_WINDOW
    return WindowClass.AT_OR_ABOVE_UPPER_BOUND


def max_augmentations_below(density, ctx: PrecisionContext) -> Certificate:
    """Certificate for a threshold in the discrete window [v_oct, 2*v_oct).

    Returns the largest a with 2*v_oct*(a-1)/a <= threshold; any link
    with more augmentations has density strictly above the threshold, and
    only finitely many links exist per augmentation count."""
    parts = _density_parts(density)
    if _sign_against(parts, 1, 0, ctx) < 0:
        raise DomainError("threshold lies below the spectrum floor v_oct; nothing to certify")
    if _sign_against(parts, 2, 0, ctx) >= 0:
        raise DomainError(
            "threshold reaches the dense window at 2*v_oct; no finite certificate exists there"
        )
    voct, _ = numerics._constants_raw(ctx.digits)
    with localcontext() as c:
        c.prec = ctx.working_prec
        evaluated = numerics.combination(*parts, ctx, rounded=False)
    two_voct = 2 * Fraction(voct)
    target = Fraction(evaluated) + Fraction(ctx.comparison_tolerance)
    if target >= two_voct:
        raise DomainError(
            "threshold is within tolerance of 2*v_oct; no finite certificate exists there"
        )

    def bound(a: int) -> Fraction:
        return two_voct * (a - 1) / a

    # bound(a) <= target  iff  a <= 2*v_oct / (2*v_oct - target)
    n = max(2, int(two_voct / (two_voct - target)))
    while bound(n + 1) <= target:
        n += 1
    while n > 2 and bound(n) > target:
        n -= 1
    threshold = numerics.round_to(evaluated, ctx)
    return Certificate(
        threshold=threshold,
        max_augmentations=n,
        statement=f"every FAL with vd(L) <= {threshold} has a(L) <= {n}",
    )


@dataclass(frozen=True)
class ScanRow:
    recipe: str
    a: int
    atilde: int
    vd: DensityValue
    vd_mod: DensityValue


def _count_multisets(atildes: tuple[int, ...], budget: int) -> int:
    """Number of multiplicity assignments with sum k_i*atilde_i <= budget
    (including the empty one)."""

    @lru_cache(maxsize=None)
    def walk(index: int, remaining: int) -> int:
        if index == len(atildes):
            return 1
        step = atildes[index]
        return sum(walk(index + 1, remaining - k * step) for k in range(remaining // step + 1))

    return walk(0, budget)


def spectrum_scan(
    catalog: Catalog,
    budget: int,
    ctx: PrecisionContext,
    max_rows: int = DEFAULT_SCAN_CAP,
) -> list[ScanRow]:
    """All compositions over the catalog with total atilde <= budget,
    one row each, sorted by vd (ties broken by recipe string)."""
    if not isinstance(budget, int) or isinstance(budget, bool) or budget < 1:
        raise DomainError(f"budget must be a positive integer, got {budget!r}")
    links = list(catalog)
    atildes = tuple(link.atilde for link in links)
    total = _count_multisets(atildes, budget) - 1
    if total > max_rows:
        raise CapExceededError(
            f"scan with budget {budget} would emit {total} rows, above the cap of {max_rows}"
        )

    rows: list[ScanRow] = []
    chosen: list[tuple] = []

    def walk(index: int, remaining: int) -> None:
        if index == len(links):
            if chosen:
                c = composition(dict(chosen))
                rows.append(
                    ScanRow(
                        recipe=format_recipe(c),
                        a=augmentations(c),
                        atilde=modified_augmentations(c),
                        vd=vd(c, ctx),
                        vd_mod=vd_mod(c, ctx),
                    )
                )
            return
        link = links[index]
        for k in range(remaining // link.atilde + 1):
            if k:
                chosen.append((link, k))
            walk(index + 1, remaining - k * link.atilde)
            if k:
                chosen.pop()

    walk(0, budget)
    rows.sort(key=lambda row: (row.vd.evaluated, row.recipe))
    return rows
