"""Six-case closed form for the 4D volume of the trilinear hull.

With ``r_i = c_i / l_i`` on a canonical domain and ``L = l1^2 l2^2 l3^2``:

====  =========================================================  ==============================
case  condition                                                  volume
====  =========================================================  ==============================
1     r1 >= 1                                                    8/3 L (r1 + 2 r2 + 2 r3)
2     r1 < 1, r2 >= 1                                            8/3 L (2 r2 + 2 r3 + 1)
3     r2 < 1, r3 >= 1                                            8/3 L (r2 + 2 r3 + 2)
4     r3 < 1, r1 + r2 + r3 >= 1, r2 + r3 >= 1 + r1               8/3 L (r2 + r3 + 3)
5     r3 < 1, r1 + r2 + r3 >= 1, r2 + r3 < 1 + r1                4/3 L (r1 + r2 + r3 + 7)
6     r3 < 1, r1 + r2 + r3 < 1                                   32/3 L
====  =========================================================  ==============================

On canonical input (c >= 0, r1 <= r2 <= r3) exactly one condition holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .boxdom import BoxDomain3, Normalization, normalize, ratios
from .hullgeom import vol3_q, vol3_r
from .mixedvol import MixedVolumeResult, assemble_volume, mixed_volume_qqr, mixed_volume_qrr, tetra_geometry

CASE5_LEAD = Fraction(4, 3)

# case -> (V(Q,Q,R) sub-case, V(Q,R,R) sub-case, vol Q branch)
TABLE1 = {
    1: (1, 1, 1),
    2: (2, 2, 1),
    3: (2, 3, 1),
    4: (2, 3, 2),
    5: (3, 3, 2),
    6: (4, 3, 2),
}


class PreconditionError(ValueError):
    pass


def case_conditions(domain: BoxDomain3) -> tuple[bool, ...]:
    """The six case predicates, each evaluated on its own (no fall-through)."""
    r1, r2, r3 = ratios(domain)
    s = r1 + r2 + r3
    return (
        r1 >= 1,
        r1 < 1 and r2 >= 1,
        r2 < 1 and r3 >= 1,
        r3 < 1 and s >= 1 and r2 + r3 >= 1 + r1,
        r3 < 1 and s >= 1 and r2 + r3 < 1 + r1,
        r3 < 1 and s < 1,
    )


def classify(domain: BoxDomain3) -> int:
    hits = [k + 1 for k, ok in enumerate(case_conditions(domain)) if ok]
    if len(hits) != 1:
        # unreachable on canonical input: the predicates partition that region
        raise RuntimeError(f"case predicates matched {hits} for ratios {ratios(domain)}")
    return hits[0]


def case_formula(case: int, domain: BoxDomain3) -> Fraction:
    """Evaluate one case's closed form, whether or not the domain lies in that case."""
    r1, r2, r3 = ratios(domain)
    l1, l2, l3 = domain.l
    big = l1**2 * l2**2 * l3**2
    k = Fraction(8, 3) * big
    if case == 1:
        return k * (r1 + 2 * r2 + 2 * r3)
    if case == 2:
        return k * (2 * r2 + 2 * r3 + 1)
    if case == 3:
        return k * (r2 + 2 * r3 + 2)
    if case == 4:
        return k * (r2 + r3 + 3)
    if case == 5:
        return CASE5_LEAD * big * (r1 + r2 + r3 + 7)
    if case == 6:
        return Fraction(32, 3) * big
    raise ValueError(f"no such case: {case}")


def hull_volume(domain: BoxDomain3) -> Fraction:
    return case_formula(classify(domain), domain)


def hull_volume_nonneg(domain: BoxDomain3) -> Fraction:
    """Single formula valid when every lower bound is nonnegative (c_i >= l_i).

    The domain must also be ordered by ratio, as :func:`normalize` leaves it.
    """
    if any(c < l for c, l in zip(domain.c, domain.l)):
        raise PreconditionError("requires c_i >= l_i for every variable")
    r1, r2, r3 = ratios(domain)
    if not r1 <= r2 <= r3:
        raise PreconditionError("requires c1/l1 <= c2/l2 <= c3/l3")
    l1, l2, l3 = domain.l
    return Fraction(8, 3) * l1**2 * l2**2 * l3**2 * (r1 + 2 * r2 + 2 * r3)


def table1_subcases(case: int) -> tuple[int, int, int]:
    return TABLE1[case]


@dataclass(frozen=True)
class VolumeReport:
    raw: BoxDomain3
    canonical: BoxDomain3
    normalization: Normalization
    vol_q: Fraction
    vol_r: Fraction
    qqr: MixedVolumeResult
    qrr: MixedVolumeResult
    volq_subcase: int
    case: int
    closed_form: Fraction
    assembled: Fraction

    @property
    def volume(self) -> Fraction:
        return self.closed_form

    @property
    def subcases(self) -> tuple[int, int, int]:
        return (self.qqr.subcase, self.qrr.subcase, self.volq_subcase)


def hull_volume_any(domain: BoxDomain3) -> VolumeReport:
    """Volume of the hull over any box, with the full derivation attached."""
    canonical, record = normalize(domain)
    vol_q, volq_sub = vol3_q(canonical)
    vol_r = vol3_r(canonical)
    geo = tetra_geometry(canonical)
    qqr = mixed_volume_qqr(canonical, geo)
    qrr = mixed_volume_qrr(canonical, geo)
    assembled = assemble_volume(vol_q, qqr.value, qrr.value, vol_r, canonical.l[2])
    case = classify(canonical)
    return VolumeReport(
        raw=domain,
        canonical=canonical,
        normalization=record,
        vol_q=vol_q,
        vol_r=vol_r,
        qqr=qqr,
        qrr=qrr,
        volq_subcase=volq_sub,
        case=case,
        closed_form=case_formula(case, canonical),
        assembled=assembled,
    )
