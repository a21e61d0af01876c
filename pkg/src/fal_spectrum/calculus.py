"""Belted-sum composition calculus and the two volume densities.

Belted sums of base links form a commutative monoid at the value level:
volumes add, and modified augmentation counts (a - 1) add.  A composition
is therefore canonically a multiset of base links with multiplicities;
the order in which sums were taken is irrelevant and two recipes are
equal exactly when their multisets agree.

For a composition c with volume vol(c) and augmentation count a(c):

    vd(c)     = vol(c) / a(c)          (volume density)
    vd_mod(c) = vol(c) / (a(c) - 1)    (modified volume density)

Both carry an exact form (an ExactVolume numerator over an integer
denominator) next to their evaluated decimal, so identities such as the
invariance of vd_mod under self-sums hold with zero tolerance whenever
the inputs are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Mapping

from . import numerics
from .catalog import BaseLink, Catalog, ExactVolume
from .errors import DomainError
from .numerics import PrecisionContext

__all__ = [
    "Composition",
    "DensityValue",
    "augmentations",
    "belted_sum",
    "composition",
    "exact_combo_string",
    "format_recipe",
    "modified_augmentations",
    "parse_recipe",
    "replicate",
    "replication_error",
    "self_sum",
    "vd",
    "vd_mod",
    "volume",
    "weighted_average_vd_mod",
]


@dataclass(frozen=True)
class Composition:
    """Multiset of (base link, multiplicity) pairs; build via composition()."""

    parts: tuple[tuple[BaseLink, int], ...]

    def counts(self) -> dict[BaseLink, int]:
        return dict(self.parts)


def composition(parts: Mapping[BaseLink, int] | Iterable[tuple[BaseLink, int]]) -> Composition:
    items = parts.items() if isinstance(parts, Mapping) else parts
    merged: dict[BaseLink, int] = {}
    for link, multiplicity in items:
        if not isinstance(link, BaseLink):
            raise DomainError(f"composition parts must be BaseLink, got {type(link).__name__}")
        if not isinstance(multiplicity, int) or isinstance(multiplicity, bool) or multiplicity < 1:
            raise DomainError(f"multiplicity for {link.name} must be a positive integer")
        merged[link] = merged.get(link, 0) + multiplicity
    if not merged:
        raise DomainError("a composition needs at least one part")
    ordered = tuple(sorted(merged.items(), key=lambda item: item[0].sort_key()))
    return Composition(ordered)


def belted_sum(x: Composition, y: Composition) -> Composition:
    """Multiset union; multiplicities add for shared base links."""
    merged = x.counts()
    for link, multiplicity in y.parts:
        merged[link] = merged.get(link, 0) + multiplicity
    return composition(merged)


def self_sum(link: BaseLink, k: int) -> Composition:
    """k copies of one link."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError(f"self-sum count must be a positive integer, got {k!r}")
    return composition({link: k})


def replicate(c: Composition, m: int) -> Composition:
    """m copies of the whole composition."""
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise DomainError(f"replication count must be a positive integer, got {m!r}")
    return composition({link: k * m for link, k in c.parts})


def volume(c: Composition) -> ExactVolume:
    """Total volume: volumes add under belted sum."""
    total = ExactVolume()
    for link, multiplicity in c.parts:
        total = total + link.volume * multiplicity
    return total


def modified_augmentations(c: Composition) -> int:
    """a(c) - 1; additive under belted sum."""
    return sum(k * link.atilde for link, k in c.parts)


def augmentations(c: Composition) -> int:
    return modified_augmentations(c) + 1


@dataclass(frozen=True)
class DensityValue:
    """A density with exact form (numerator volume / integer denominator)
    alongside its evaluated decimal."""

    numerator: ExactVolume
    denominator: int
    evaluated: Decimal

    def exact_parts(self) -> tuple[Fraction, Fraction, Fraction]:
        """(c_oct, c_tet, remainder) of the density itself, exact."""
        d = self.denominator
        n = self.numerator
        return (n.c_oct / d, n.c_tet / d, n.remainder / d)

    def exactly_equals(self, other: "DensityValue") -> bool:
        return self.exact_parts() == other.exact_parts()

    def exact_string(self, ctx: PrecisionContext) -> str:
        oct_part, tet_part, rem_part = self.exact_parts()
        return exact_combo_string(oct_part, tet_part, rem_part, ctx)


def exact_combo_string(
    c_oct: Fraction, c_tet: Fraction, remainder: Fraction, ctx: PrecisionContext
) -> str:
    """Render "p/q*voct+r/s*vtet+rem"; the remainder is exact when it has a
    finite decimal form and context-rounded otherwise."""
    rem = numerics.exact_decimal_string(remainder)
    if rem is None:
        rem = str(numerics.fraction_to_decimal(remainder, ctx))
    return f"{c_oct}*voct+{c_tet}*vtet+{rem}"


def _density(c: Composition, denominator: int, ctx: PrecisionContext) -> DensityValue:
    vol = volume(c)
    with localcontext() as dec:
        dec.prec = ctx.working_prec
        evaluated = vol.evaluate(ctx, rounded=False) / denominator
    return DensityValue(vol, denominator, numerics.round_to(evaluated, ctx))


def vd(c: Composition, ctx: PrecisionContext) -> DensityValue:
    """Volume density vol/a."""
    return _density(c, augmentations(c), ctx)


def vd_mod(c: Composition, ctx: PrecisionContext) -> DensityValue:
    """Modified volume density vol/(a-1)."""
    return _density(c, modified_augmentations(c), ctx)


def weighted_average_vd_mod(c: Composition, ctx: PrecisionContext) -> DensityValue:
    """vd_mod computed the other way: the per-part modified densities averaged
    with weights k_i * (a_i - 1).  Must agree exactly with vd_mod."""
    weight_total = 0
    acc = ExactVolume()
    for link, k in c.parts:
        weight = k * link.atilde
        weight_total += weight
        acc = acc + link.volume * Fraction(weight, link.atilde)
    with localcontext() as dec:
        dec.prec = ctx.working_prec
        evaluated = acc.evaluate(ctx, rounded=False) / weight_total
    return DensityValue(acc, weight_total, numerics.round_to(evaluated, ctx))


def replication_error(c: Composition, m: int, ctx: PrecisionContext) -> Decimal:
    """Exact gap vd_mod(c^(m)) - vd(c^(m)) = vd_mod(c) / (m * (a-1) + 1)."""
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise DomainError(f"replication count must be a positive integer, got {m!r}")
    atilde = modified_augmentations(c)
    with localcontext() as dec:
        dec.prec = ctx.working_prec
        gap = volume(c).evaluate(ctx, rounded=False) / (atilde * (m * atilde + 1))
    return numerics.round_to(gap, ctx)


# ---------------------------------------------------------------------------
# Recipe strings: comma-separated name*multiplicity, multiplicity defaults to 1

def parse_recipe(text: str, catalog: Catalog) -> Composition:
    counts: dict[BaseLink, int] = {}
    for raw in text.split(","):
        token = raw.strip()
        if not token:
            raise DomainError(f"empty part in recipe {text!r}")
        name, star, mult_text = token.partition("*")
        name = name.strip()
        if star:
            try:
                multiplicity = int(mult_text.strip())
            except ValueError:
                raise DomainError(f"bad multiplicity in recipe part {token!r}") from None
        else:
            multiplicity = 1
        if multiplicity < 1:
            raise DomainError(f"multiplicity must be positive in recipe part {token!r}")
        link = catalog[name]
        counts[link] = counts.get(link, 0) + multiplicity
    return composition(counts)


def format_recipe(c: Composition) -> str:
    return ",".join(
        link.name if k == 1 else f"{link.name}*{k}" for link, k in c.parts
    )
