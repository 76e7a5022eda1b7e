"""Evidence combination rules and affine mixing of mass functions.

Conjunctive combination keeps the conflicting mass out of the result
(reported as ``conflict``) so the usual m(empty)=0 invariant holds
everywhere; Dempster's rule normalises it away. All three rules accept
pseudo inputs and propagate negativity faithfully.
"""

from __future__ import annotations

from dataclasses import dataclass

from .belief import EPS, MassFunction
from .frame import Frame


class TotalConflictError(ValueError):
    """Dempster combination of fully conflicting evidence."""


def _require_same_frame(m1: MassFunction, m2: MassFunction) -> Frame:
    if m1.frame != m2.frame:
        raise ValueError("mass functions live on different frames")
    return m1.frame


@dataclass(frozen=True)
class ConjunctiveResult:
    """Unnormalised intersection combination: masses plus the conflict kappa."""

    frame: Frame
    masses: dict[int, float]
    conflict: float
    pseudo: bool

    @property
    def normalisation(self) -> float:
        """k(Bel1, Bel2) = 1 - kappa, the Dempster denominator."""
        return 1.0 - self.conflict

    def normalized(self) -> MassFunction:
        if self.normalisation <= EPS:
            raise TotalConflictError(
                f"total conflict (kappa = {self.conflict!r}); nothing to normalise"
            )
        scale = 1.0 / self.normalisation
        return MassFunction(
            self.frame,
            {a: v * scale for a, v in self.masses.items()},
            pseudo=self.pseudo,
        )


def conjunctive(m1: MassFunction, m2: MassFunction) -> ConjunctiveResult:
    """Intersection convolution: m(A) = sum over B, C with B&C = A of m1(B)m2(C)."""
    frame = _require_same_frame(m1, m2)
    out: dict[int, float] = {}
    conflict = 0.0
    for b, vb in m1.masses.items():
        for c, vc in m2.masses.items():
            a = b & c
            w = vb * vc
            if a == 0:
                conflict += w
            else:
                out[a] = out.get(a, 0.0) + w
    return ConjunctiveResult(
        frame, out, conflict, pseudo=m1.pseudo or m2.pseudo
    )


def dempster(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Dempster's rule: conjunctive combination with conflict renormalised away."""
    return conjunctive(m1, m2).normalized()


def disjunctive(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Union convolution; belief values of the result multiply pointwise."""
    frame = _require_same_frame(m1, m2)
    out: dict[int, float] = {}
    for b, vb in m1.masses.items():
        for c, vc in m2.masses.items():
            a = b | c
            out[a] = out.get(a, 0.0) + vb * vc
    return MassFunction(frame, out, pseudo=m1.pseudo or m2.pseudo)


def affine(weights: list[float], ms: list[MassFunction]) -> MassFunction:
    """Mass-wise weighted sum; weights must sum to one.

    Weights outside [0,1] give a pseudo result; all weights in [0,1]
    give a convex (proper) mixture.
    """
    if len(weights) != len(ms) or not ms:
        raise ValueError("need one weight per mass function")
    if abs(sum(weights) - 1.0) > EPS:
        raise ValueError(f"weights must sum to 1, got {sum(weights)!r}")
    frame = ms[0].frame
    for m in ms[1:]:
        _require_same_frame(ms[0], m)
    out: dict[int, float] = {}
    for w, m in zip(weights, ms):
        for a, v in m.masses.items():
            out[a] = out.get(a, 0.0) + w * v
    pseudo = any(m.pseudo for m in ms) or any(w < -EPS or w > 1 + EPS for w in weights)
    if not pseudo and any(v < -EPS for v in out.values()):
        pseudo = True
    return MassFunction(frame, out, pseudo=pseudo)
