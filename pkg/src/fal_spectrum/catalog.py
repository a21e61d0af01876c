"""Base link catalog: exact volumes, JSON (de)serialization, validation.

A catalog file is a UTF-8 JSON document::

    {"links": [{"name": "L41", "c_oct": "2", "c_tet": "0",
                "remainder": "0", "a": 2, "note": "..."}]}

Rational coefficients are "p/q" strings (plain integers allowed) and the
remainder is a decimal string, so nothing passes through binary floats.
Missing c_oct/c_tet/remainder default to "0".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation, localcontext
from fractions import Fraction
from typing import Iterator

from . import numerics
from .errors import CatalogError
from .numerics import PrecisionContext

__all__ = [
    "BaseLink",
    "Catalog",
    "Diagnostic",
    "ExactVolume",
    "builtin_links",
    "builtin_catalog",
    "load_catalog",
    "save_catalog",
    "validate_entry",
]

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _coerce_fraction(value, what: str) -> Fraction:
    if isinstance(value, float):
        raise CatalogError(f"{what}: floats are not accepted, pass a string or Fraction")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise CatalogError(f"{what}: not a valid rational: {value!r}") from exc


def _decimal_string_fraction(text: str, what: str) -> Fraction:
    if isinstance(text, float):
        raise CatalogError(f"{what}: floats are not accepted, pass a decimal string")
    try:
        return Fraction(Decimal(text))
    except (InvalidOperation, ValueError, TypeError) as exc:
        raise CatalogError(f"{what}: not a valid decimal string: {text!r}") from exc


@dataclass(frozen=True)
class ExactVolume:
    """A volume c_oct*v_oct + c_tet*v_tet + remainder with exact components.

    The remainder carries any part of the volume that is not a rational
    multiple of the two base constants; it is stored as the exact rational
    value of its decimal form, so sums and integer multiples stay exact.
    All components are nonnegative.
    """

    c_oct: Fraction = Fraction(0)
    c_tet: Fraction = Fraction(0)
    remainder: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("c_oct", "c_tet", "remainder"):
            value = _coerce_fraction(getattr(self, name), name)
            if value < 0:
                raise CatalogError(f"{name} must be nonnegative, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_fields(cls, c_oct="0", c_tet="0", remainder="0") -> "ExactVolume":
        """Build from the file-format fields (rationals as "p/q", decimal remainder)."""
        return cls(
            _coerce_fraction(c_oct, "c_oct"),
            _coerce_fraction(c_tet, "c_tet"),
            _decimal_string_fraction(remainder, "remainder"),
        )

    def is_zero(self) -> bool:
        return not (self.c_oct or self.c_tet or self.remainder)

    def components(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c_oct, self.c_tet, self.remainder)

    def __add__(self, other: "ExactVolume") -> "ExactVolume":
        if not isinstance(other, ExactVolume):
            return NotImplemented
        return ExactVolume(
            self.c_oct + other.c_oct,
            self.c_tet + other.c_tet,
            self.remainder + other.remainder,
        )

    def __mul__(self, scalar) -> "ExactVolume":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return ExactVolume(self.c_oct * scalar, self.c_tet * scalar, self.remainder * scalar)

    __rmul__ = __mul__

    def evaluate(self, ctx: PrecisionContext, *, rounded: bool = True) -> Decimal:
        return numerics.combination(self.c_oct, self.c_tet, self.remainder, ctx, rounded=rounded)

    def remainder_decimal_string(self) -> str:
        text = numerics.exact_decimal_string(self.remainder)
        if text is None:  # pragma: no cover - unreachable for file-loaded volumes
            raise CatalogError(f"remainder {self.remainder} has no finite decimal form")
        return text


@dataclass(frozen=True)
class BaseLink:
    """A named fully augmented link with known volume and augmentation count."""

    name: str
    volume: ExactVolume
    augmentations: int
    note: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not _NAME_RE.match(self.name):
            raise CatalogError(f"link name must be an identifier, got {self.name!r}")
        a = self.augmentations
        if not isinstance(a, int) or isinstance(a, bool) or a < 2:
            raise CatalogError(f"{self.name}: augmentation count must be an integer >= 2, got {a!r}")
        if not isinstance(self.volume, ExactVolume):
            raise CatalogError(f"{self.name}: volume must be an ExactVolume")
        if self.volume.is_zero():
            raise CatalogError(f"{self.name}: volume must be positive")
        if not isinstance(self.note, str):
            raise CatalogError(f"{self.name}: note must be a string")

    @property
    def atilde(self) -> int:
        """Modified augmentation count a - 1."""
        return self.augmentations - 1

    def sort_key(self):
        return (self.name, self.augmentations, *self.volume.components())


def builtin_links() -> tuple[BaseLink, ...]:
    """Links every catalog ships with (unless a file shadows the name)."""
    return (
        BaseLink(
            name="L41",
            volume=ExactVolume(c_oct=Fraction(2)),
            augmentations=2,
            note="fully augmented figure-eight knot; volume 2*v_oct, density at the spectrum floor",
        ),
    )


@dataclass(frozen=True)
class Catalog:
    """Immutable name-indexed collection of base links."""

    links: tuple[BaseLink, ...]

    @classmethod
    def from_links(cls, links, *, include_builtin: bool = True) -> "Catalog":
        seen: dict[str, BaseLink] = {}
        for link in links:
            if link.name in seen:
                raise CatalogError(f"duplicate link name {link.name!r}")
            seen[link.name] = link
        if include_builtin:
            for link in builtin_links():
                seen.setdefault(link.name, link)
        return cls(tuple(sorted(seen.values(), key=BaseLink.sort_key)))

    def __iter__(self) -> Iterator[BaseLink]:
        return iter(self.links)

    def __len__(self) -> int:
        return len(self.links)

    def __contains__(self, name: str) -> bool:
        return any(link.name == name for link in self.links)

    def __getitem__(self, name: str) -> BaseLink:
        for link in self.links:
            if link.name == name:
                return link
        known = ", ".join(link.name for link in self.links)
        raise CatalogError(f"unknown link {name!r} (catalog has: {known})")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(link.name for link in self.links)


def builtin_catalog() -> Catalog:
    return Catalog.from_links(())


_ENTRY_FIELDS = {"name", "c_oct", "c_tet", "remainder", "a", "note"}


def load_catalog(source: str) -> Catalog:
    """Parse a catalog document; the builtin L41 is present unless shadowed."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"malformed catalog JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("links"), list):
        raise CatalogError('catalog document must be an object with a "links" array')
    entries = []
    for index, raw in enumerate(doc["links"]):
        where = f"links[{index}]"
        if not isinstance(raw, dict):
            raise CatalogError(f"{where}: entry must be an object")
        unknown = set(raw) - _ENTRY_FIELDS
        if unknown:
            raise CatalogError(f"{where}: unknown fields {sorted(unknown)}")
        for required in ("name", "a"):
            if required not in raw:
                raise CatalogError(f'{where}: missing required field "{required}"')
        try:
            volume = ExactVolume.from_fields(
                raw.get("c_oct", "0"), raw.get("c_tet", "0"), raw.get("remainder", "0")
            )
            entries.append(
                BaseLink(
                    name=raw["name"],
                    volume=volume,
                    augmentations=raw["a"],
                    note=raw.get("note", ""),
                )
            )
        except CatalogError as exc:
            raise CatalogError(f"{where}: {exc}") from exc
    return Catalog.from_links(entries)


def load_catalog_file(path) -> Catalog:
    try:
        with open(path, encoding="utf-8") as handle:
            return load_catalog(handle.read())
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path!r}: {exc}") from exc


def save_catalog(catalog: Catalog) -> str:
    """Serialize back to the file format; load(save(c)) reproduces the entries."""
    doc = {
        "links": [
            {
                "name": link.name,
                "c_oct": str(link.volume.c_oct),
                "c_tet": str(link.volume.c_tet),
                "remainder": link.volume.remainder_decimal_string(),
                "a": link.augmentations,
                "note": link.note,
            }
            for link in catalog
        ]
    }
    return json.dumps(doc, indent=2) + "\n"


@dataclass(frozen=True)
class Diagnostic:
    level: str
    link: str
    message: str


def validate_entry(link: BaseLink, ctx: PrecisionContext) -> list[Diagnostic]:
    """Soft checks against the known density window.

    Violations are warnings, not errors: synthetic or hypothetical entries
    are allowed so the search engine can be exercised across the whole
    window.
    """
    voct, vtet = numerics._constants_raw(ctx.digits)
    tol = ctx.comparison_tolerance
    out: list[Diagnostic] = []
    with localcontext() as c:
        c.prec = ctx.working_prec
        vol = link.volume.evaluate(ctx, rounded=False)
        density = vol / link.augmentations
        if density < voct - tol:
            out.append(
                Diagnostic(
                    "warning",
                    link.name,
                    f"vd = {numerics.round_to(density, ctx)} lies below the spectrum floor v_oct",
                )
            )
        if density >= 10 * vtet - tol:
            out.append(
                Diagnostic(
                    "warning",
                    link.name,
                    f"vd = {numerics.round_to(density, ctx)} is at or above 10*v_tet, "
                    "which no fully augmented link attains",
                )
            )
        miyamoto = 2 * (link.augmentations - 1) * voct
        if vol < miyamoto - tol:
            out.append(
                Diagnostic(
                    "warning",
                    link.name,
                    f"volume {numerics.round_to(vol, ctx)} is below the Miyamoto bound "
                    f"2*(a-1)*v_oct = {numerics.round_to(miyamoto, ctx)}",
                )
            )
    return out
