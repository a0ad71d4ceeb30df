"""The constant ledger: the numeric regime a verification run operates in.

Two profiles exist.  The *faithful* profile reproduces the published
formulas bit-exactly over rationals: the dominating constant is 10^4 times
the largest measured input and the distinguished segment length is
10^7 * dominating^5 / axis_step.  Those magnitudes are astronomically out
of reach for exact desk-scale enumeration, so verification runs use a
*scaled* profile, keeping the formula shapes (coefficient and exponent are
ledger fields) with user-set entries.  Every report names its profile, and
the structural inequalities the concatenation arguments rely on are
re-checked and recorded rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ConstantLedger:
    profile: str  # "faithful" or "scaled"
    delta: Fraction  # hyperbolicity constant of the space
    gen_displacement: Fraction  # max over generators s of d(x0, s x0)
    axis_step: Fraction  # d(x0, phi x0) = space translation length of phi
    axis_word_norm: Fraction  # word norm of phi
    linkage_bound: Fraction  # Gromov-product bound achievable by linkage letters
    contraction_bound: Fraction  # half-radius ball projection diameter bound
    proj_lipschitz: Fraction  # coarse Lipschitz constant of segment projections
    recovery_lipschitz: Fraction  # distance recovery from projection data
    dominating: Fraction  # single constant dominating all of the above
    segment_length: int  # length of distinguished orbit segments
    coeff: Fraction  # threshold coefficient (10^6 in the faithful profile)
    power: int  # threshold exponent (5 in the faithful profile)
    window: tuple = (Fraction(1, 4), Fraction(3, 10))  # thick-set distance window
    cut_window: tuple = (Fraction(27, 100), Fraction(28, 100))  # prefix-cut window

    # -- derived formulas ----------------------------------------------

    def capture_threshold(self, K) -> Fraction:
        """Segment length above which the single-segment capture bound applies."""
        return 2 * self.coeff / self.axis_step * (self.dominating**self.power + _frac(K))

    def chain_threshold(self, K) -> Fraction:
        """Segment length for the chain capture and its corollaries."""
        return 3 * self.coeff / self.axis_step * (self.dominating**self.power + _frac(K))

    def block_length(self) -> int:
        """Letters excised around a cut when splicing in an orbit segment."""
        return math.ceil(self.dominating * self.segment_length) + 2

    def alignment_level(self) -> Fraction:
        """Alignment level the replacement maps certify (linkage + snap slack)."""
        return self.linkage_bound + 8 * self.delta + 1

    def derived_checks(self) -> dict:
        measured = [
            self.gen_displacement,
            self.axis_word_norm,
            self.linkage_bound,
            self.contraction_bound,
            self.proj_lipschitz,
            self.recovery_lipschitz,
            self.delta,
            Fraction(1),
        ]
        return {
            "dominating_covers_inputs": self.dominating >= max(measured),
            "dominating_has_faithful_margin": self.dominating >= 10**4 * max(measured),
            "dominating_square_margin": self.dominating**2 >= 1000 * self.dominating,
            "segment_covers_chain_threshold": Fraction(self.segment_length)
            >= self.chain_threshold(10 * self.dominating),
        }

    def to_json(self) -> dict:
        doc = {
            "profile": self.profile,
            "delta": str(self.delta),
            "gen_displacement": str(self.gen_displacement),
            "axis_step": str(self.axis_step),
            "axis_word_norm": str(self.axis_word_norm),
            "linkage_bound": str(self.linkage_bound),
            "contraction_bound": str(self.contraction_bound),
            "proj_lipschitz": str(self.proj_lipschitz),
            "recovery_lipschitz": str(self.recovery_lipschitz),
            "dominating": str(self.dominating),
            "segment_length": self.segment_length,
            "coeff": str(self.coeff),
            "power": self.power,
            "window": [str(w) for w in self.window],
            "cut_window": [str(w) for w in self.cut_window],
            "derived_checks": self.derived_checks(),
        }
        return doc

    # -- constructors ---------------------------------------------------

    @classmethod
    def faithful(cls, delta, gen_displacement, axis_step, axis_word_norm,
                 linkage_bound, contraction_bound, proj_lipschitz, recovery_lipschitz) -> "ConstantLedger":
        vals = [_frac(v) for v in (gen_displacement, axis_word_norm, linkage_bound,
                                   contraction_bound, proj_lipschitz, recovery_lipschitz, delta, 1)]
        dominating = 10**4 * max(vals)
        coeff = Fraction(10**6)
        power = 5
        seg = 10 * coeff * dominating**power / _frac(axis_step)
        return cls(
            profile="faithful",
            delta=_frac(delta),
            gen_displacement=_frac(gen_displacement),
            axis_step=_frac(axis_step),
            axis_word_norm=_frac(axis_word_norm),
            linkage_bound=_frac(linkage_bound),
            contraction_bound=_frac(contraction_bound),
            proj_lipschitz=_frac(proj_lipschitz),
            recovery_lipschitz=_frac(recovery_lipschitz),
            dominating=dominating,
            segment_length=math.ceil(seg),
            coeff=coeff,
            power=power,
        )

    @classmethod
    def scaled(cls, delta, gen_displacement, axis_step, axis_word_norm,
               linkage_bound, contraction_bound, proj_lipschitz, recovery_lipschitz,
               dominating: Optional[Fraction] = None,
               segment_length: Optional[int] = None,
               coeff=Fraction(1), power: int = 1,
               window=(Fraction(1, 4), Fraction(3, 10)),
               cut_window=(Fraction(1, 4), Fraction(3, 10))) -> "ConstantLedger":
        vals = [_frac(v) for v in (gen_displacement, axis_word_norm, linkage_bound,
                                   contraction_bound, proj_lipschitz, recovery_lipschitz, delta, 1)]
        if dominating is None:
            dominating = max(vals)
        dominating = _frac(dominating)
        if segment_length is None:
            segment_length = math.ceil(10 * _frac(coeff) * dominating**power / _frac(axis_step))
        return cls(
            profile="scaled",
            delta=_frac(delta),
            gen_displacement=_frac(gen_displacement),
            axis_step=_frac(axis_step),
            axis_word_norm=_frac(axis_word_norm),
            linkage_bound=_frac(linkage_bound),
            contraction_bound=_frac(contraction_bound),
            proj_lipschitz=_frac(proj_lipschitz),
            recovery_lipschitz=_frac(recovery_lipschitz),
            dominating=dominating,
            segment_length=int(segment_length),
            coeff=_frac(coeff),
            power=int(power),
            window=tuple(_frac(w) for w in window),
            cut_window=tuple(_frac(w) for w in cut_window),
        )
