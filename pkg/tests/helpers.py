"""Small construction helpers shared by the test modules."""

from __future__ import annotations

from decimal import Decimal, localcontext

from fal_spectrum import BaseLink, ExactVolume
from fal_spectrum.numerics import PrecisionContext, _pi_at


def make_link(name, c_oct=0, c_tet=0, remainder="0", a=2, note="synthetic test link"):
    volume = ExactVolume.from_fields(str(c_oct), str(c_tet), remainder)
    return BaseLink(name=name, volume=volume, augmentations=a, note=note)


def pi_angle(ctx: PrecisionContext, numerator: int, denominator: int) -> Decimal:
    """numerator*pi/denominator formed at working precision, so the angle
    itself does not eat into the comparison budget."""
    with localcontext() as c:
        c.prec = ctx.working_prec
        return _pi_at(ctx.working_prec) * numerator / denominator
