"""Period coordinates: the Masur-Smillie-Veech chart data of a surface.

``period_map`` evaluates the edge-vector cochain of the cover on the chosen
basis of anti-invariant relative homology; the resulting coordinate vector is
the local chart image of the surface.  ``chain_period_cochain`` exposes the
chain-level cochain itself (values on every directed cover edge).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cover import DoubleCover
from .errors import BasisMismatch
from .exact import QC, conj, is_zero
from .homology import HomologyData


@dataclass(frozen=True)
class PeriodVector:
    """Complex coordinates on a homology basis, bound to it by ``basis_tag``."""

    coords: tuple
    basis_tag: str
    space: str = "relative"   # "relative" or "absolute"
    mode: str = "exact"

    def __post_init__(self):
        if self.space not in ("relative", "absolute"):
            raise BasisMismatch(f"unknown space {self.space!r}")

    def _check_mate(self, other):
        if not isinstance(other, PeriodVector):
            raise BasisMismatch("expected a PeriodVector")
        if other.basis_tag != self.basis_tag or other.space != self.space:
            raise BasisMismatch("period vectors bound to different bases")
        if len(other.coords) != len(self.coords):
            raise BasisMismatch("period vectors of different length")

    def __add__(self, other):
        self._check_mate(other)
        return PeriodVector(tuple(a + b for a, b in zip(self.coords, other.coords)),
                            self.basis_tag, self.space, self.mode)

    def __sub__(self, other):
        self._check_mate(other)
        return PeriodVector(tuple(a - b for a, b in zip(self.coords, other.coords)),
                            self.basis_tag, self.space, self.mode)

    def scale(self, factor):
        return PeriodVector(tuple(factor * a for a in self.coords),
                            self.basis_tag, self.space, self.mode)

    def __neg__(self):
        return self.scale(-1)

    def conjugate(self):
        return PeriodVector(tuple(conj(a) for a in self.coords),
                            self.basis_tag, self.space, self.mode)

    def is_zero(self):
        return all(is_zero(a) for a in self.coords)

    def zero_like(self):
        z = QC(0, 0) if self.mode == "exact" else 0j
        return PeriodVector(tuple(z for _ in self.coords),
                            self.basis_tag, self.space, self.mode)

    def to_float(self):
        return PeriodVector(tuple(complex(a) for a in self.coords),
                            self.basis_tag, self.space, "float")


def _as_qc(v):
    if isinstance(v, QC):
        return v
    if isinstance(v, (int, Fraction)):
        return QC(v, 0)
    return v  # float mode: plain complex


def period_map(c: DoubleCover, h: HomologyData) -> PeriodVector:
    """Periods of the cover's abelian differential on the relative minus basis."""
    _check_compatible(c, h)
    coords = []
    for cyc in h.rel_minus_basis:
        total = None
        for i, coef in enumerate(cyc):
            if is_zero(coef):
                continue
            v = _as_qc(c.cover_surface.vec[h.reps[i]])
            term = v * coef
            total = term if total is None else total + term
        if total is None:
            total = QC(0, 0) if c.base.mode == "exact" else 0j
        coords.append(total)
    return PeriodVector(tuple(coords), h.basis_tag, "relative", c.base.mode)


def _check_compatible(c: DoubleCover, h: HomologyData):
    """The homology data must describe this cover's combinatorics."""
    if h.csurf.triangles != c.cover_surface.triangles or \
            h.csurf.glue != c.cover_surface.glue:
        raise BasisMismatch("homology data built from different combinatorics")


def chain_period_cochain(c: DoubleCover):
    """The edge-vector cochain on all directed cover edges."""
    return {f: c.cover_surface.vec[f] for f in c.cover_surface.edges()}
