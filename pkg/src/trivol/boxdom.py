"""Box domains for the trilinear monomial x1*x2*x3.

A box is stored per variable as a center ``c`` and a half-length ``l > 0``
(so the variable ranges over ``[c - l, c + l]``). All values are exact
:class:`fractions.Fraction` numbers.

The canonical form used by the volume formulas has every center
nonnegative and the variables ordered by ``c1/l1 <= c2/l2 <= c3/l3``.
:func:`normalize` produces it together with a :class:`Normalization`
record that maps back to the input domain.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, Sequence

Scalar = Fraction


class DomainError(ValueError):
    """Raised for unparseable numbers or invalid (empty/degenerate) boxes."""


def to_scalar(value: Any) -> Fraction:
    """Convert ints, Fractions, Decimals, and strings ("3", "-2/5", "0.125") exactly.

    Floats are accepted only through their shortest decimal repr, which is
    what a user typed in almost every case.
    """
    if isinstance(value, bool):
        raise DomainError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise DomainError(f"not a finite number: {value!r}")
        return Fraction(value)
    if isinstance(value, float):
        return to_scalar(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse number {value!r}") from exc
    raise DomainError(f"unsupported number type {type(value).__name__}")


def fmt_scalar(x: Fraction) -> str:
    """Exact "p/q" rendering, always with an explicit denominator."""
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Interval:
    center: Fraction
    half_length: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", to_scalar(self.center))
        object.__setattr__(self, "half_length", to_scalar(self.half_length))
        if self.half_length <= 0:
            raise DomainError(f"half-length must be positive, got {self.half_length}")

    @property
    def lo(self) -> Fraction:
        return self.center - self.half_length

    @property
    def hi(self) -> Fraction:
        return self.center + self.half_length

    @property
    def ratio(self) -> Fraction:
        return self.center / self.half_length


def interval_from_bounds(lo: Any, hi: Any) -> Interval:
    lo, hi = to_scalar(lo), to_scalar(hi)
    if not lo < hi:
        raise DomainError(f"interval needs lo < hi, got [{lo}, {hi}]")
    return Interval((lo + hi) / 2, (hi - lo) / 2)


@dataclass(frozen=True)
class BoxDomain3:
    intervals: tuple[Interval, Interval, Interval]

    def __post_init__(self) -> None:
        ivs = tuple(self.intervals)
        if len(ivs) != 3 or not all(isinstance(iv, Interval) for iv in ivs):
            raise DomainError("a box domain needs exactly three intervals")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def from_bounds(cls, bounds: Iterable[Sequence[Any]]) -> BoxDomain3:
        return cls(tuple(interval_from_bounds(lo, hi) for lo, hi in bounds))

    @classmethod
    def from_centers(cls, centers: Sequence[Any], half_lengths: Sequence[Any]) -> BoxDomain3:
        if len(centers) != 3 or len(half_lengths) != 3:
            raise DomainError("need three centers and three half-lengths")
        return cls(tuple(Interval(c, l) for c, l in zip(centers, half_lengths)))

    @property
    def c(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(iv.center for iv in self.intervals)

    @property
    def l(self) -> tuple[Fraction, Fraction, Fraction]:  # noqa: E743
        return tuple(iv.half_length for iv in self.intervals)

    @property
    def bounds(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple((iv.lo, iv.hi) for iv in self.intervals)

    def is_canonical(self) -> bool:
        r = ratios(self)
        return all(c >= 0 for c in self.c) and r[0] <= r[1] <= r[2]


def ratios(domain: BoxDomain3) -> tuple[Fraction, Fraction, Fraction]:
    """Center-to-half-length ratios ``(c1/l1, c2/l2, c3/l3)``."""
    return tuple(iv.ratio for iv in domain.intervals)


@dataclass(frozen=True)
class Normalization:
    """How a raw domain maps onto its canonical form.

    ``signs[i]`` is the reflection applied to original variable ``i``
    (``x -> signs[i] * x``), and ``permutation[i]`` is the 1-based position
    that original variable ``i`` occupies in the canonical domain. With the
    worked example bounds ``[3,7] x [-2,4] x [-3,-1]`` the permutation is
    ``(3, 1, 2)``.
    """

    signs: tuple[int, int, int]
    permutation: tuple[int, int, int]

    @property
    def is_identity(self) -> bool:
        return self.signs == (1, 1, 1) and self.permutation == (1, 2, 3)

    def apply(self, domain: BoxDomain3) -> BoxDomain3:
        slots: list[Interval | None] = [None, None, None]
        for i, iv in enumerate(domain.intervals):
            slots[self.permutation[i] - 1] = Interval(self.signs[i] * iv.center, iv.half_length)
        return BoxDomain3(tuple(slots))

    def restore(self, canonical: BoxDomain3) -> BoxDomain3:
        """Inverse of :meth:`apply`."""
        ivs = []
        for i in range(3):
            iv = canonical.intervals[self.permutation[i] - 1]
            ivs.append(Interval(self.signs[i] * iv.center, iv.half_length))
        return BoxDomain3(tuple(ivs))


def normalize(domain: BoxDomain3) -> tuple[BoxDomain3, Normalization]:
    # reflect first, then order; ties keep the original index order
    signs = tuple(1 if c >= 0 else -1 for c in domain.c)
    abs_ratios = [abs(iv.center) / iv.half_length for iv in domain.intervals]
    order = sorted(range(3), key=lambda i: abs_ratios[i])
    perm = [0, 0, 0]
    for new_pos, orig in enumerate(order):
        perm[orig] = new_pos + 1
    record = Normalization(signs, tuple(perm))
    return record.apply(domain), record


# --- text formats -----------------------------------------------------------


def parse_pair(text: str) -> tuple[Fraction, Fraction]:
    parts = text.strip().split(",")
    if len(parts) != 2:
        raise DomainError(f"expected 'a,b', got {text!r}")
    return to_scalar(parts[0]), to_scalar(parts[1])


def domain_from_obj(obj: Any) -> BoxDomain3:
    """Build a domain from ``{"bounds": [[lo,hi]]*3}`` or ``{"intervals": [{"c","l"}]*3}``."""
    if not isinstance(obj, dict):
        raise DomainError("domain must be a JSON object")
    if "bounds" in obj:
        bounds = obj["bounds"]
        if not isinstance(bounds, list) or len(bounds) != 3:
            raise DomainError("'bounds' must list three [lo, hi] pairs")
        for pair in bounds:
            if not isinstance(pair, list) or len(pair) != 2:
                raise DomainError("each bound must be a [lo, hi] pair")
        return BoxDomain3.from_bounds(bounds)
    if "intervals" in obj:
        ivs = obj["intervals"]
        if not isinstance(ivs, list) or len(ivs) != 3:
            raise DomainError("'intervals' must list three {c, l} objects")
        try:
            return BoxDomain3(tuple(Interval(to_scalar(iv["c"]), to_scalar(iv["l"])) for iv in ivs))
        except (KeyError, TypeError) as exc:
            raise DomainError("each interval needs 'c' and 'l'") from exc
    raise DomainError("domain object needs 'bounds' or 'intervals'")


def loads_json(text: str) -> Any:
    """json.loads keeping decimal literals exact."""
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON: {exc}") from exc


def domain_to_obj(domain: BoxDomain3) -> dict[str, Any]:
    return {
        "bounds": [[fmt_scalar(lo), fmt_scalar(hi)] for lo, hi in domain.bounds],
        "intervals": [{"c": fmt_scalar(iv.center), "l": fmt_scalar(iv.half_length)} for iv in domain.intervals],
    }
