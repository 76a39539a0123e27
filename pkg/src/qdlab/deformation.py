"""Deformations of half-translation surfaces in period coordinates.

Three mechanisms:

* :func:`geodesic_flow` -- the Teichmuller geodesic, acting on every edge
  vector by Re z + i e^{-2t} Im z.  The L1 norm scales by exactly e^{-2t}.
* :func:`affine_deform` -- piecewise affine deformation along a cohomology
  vector: lift the functional to a closed anti-invariant edge cochain
  (vanishing on a deterministic complement of the cycle space), add it to the
  edge-vector cochain, and reassemble.  Periods change by exactly the input
  vector.
* :func:`teich_disk_point` -- the holomorphic disk family swept out by the
  Mobius scalings m(conj(lambda)) q0/||q0||; returns the represented surface
  and its distance from the disk's base point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cover import DoubleCover, build_cover
from .errors import (
    BasisMismatch,
    DegenerateTriangle,
    NormOutOfRange,
    OutOfDisk,
    SurfaceError,
    TriangleFlip,
)
from .exact import QC, is_zero
from .homology import HomologyData
from .periods import PeriodVector, period_map
from .surface import FlatSurface, area, cross, derive_signs


@dataclass(frozen=True)
class DeformationFamily:
    """Linear-period family u[q_lambda] = u + lambda v1 + conj(lambda) v2."""

    surface: FlatSurface
    cover: DoubleCover
    homology: HomologyData
    v1: PeriodVector
    v2: PeriodVector
    kind: str = "linear-period"   # linear-period | teich-disk | geodesic
    u: PeriodVector = field(default=None)

    def __post_init__(self):
        u = period_map(self.cover, self.homology) if self.u is None else self.u
        object.__setattr__(self, "u", u)
        for v in (self.v1, self.v2):
            if v.basis_tag != self.homology.basis_tag:
                raise BasisMismatch("family direction bound to a different basis")

    def period_at(self, lam):
        """u + lambda v1 + conj(lambda) v2 (exact when everything is exact)."""
        lam_c = lam
        if isinstance(lam, complex) and self.u.mode == "exact":
            raise BasisMismatch("float lambda on an exact family; convert first")
        v1 = self.v1.scale(lam_c)
        v2 = self.v2.scale(_conj_scalar(lam_c))
        return self.u + v1 + v2


def _conj_scalar(lam):
    if isinstance(lam, QC):
        return lam.conjugate()
    return complex(lam).conjugate()


# ---------------------------------------------------------------------------
# Teichmuller geodesic flow
# ---------------------------------------------------------------------------

def geodesic_flow(s: FlatSurface, t: float) -> FlatSurface:
    """Apply diag(1, e^{-2t}) to every edge vector (in float mode)."""
    if t == 0:
        return s
    k = math.exp(-2.0 * t)
    new_vec = {}
    for e, v in s.vec.items():
        c = complex(v)
        new_vec[e] = complex(c.real, k * c.imag)
    out = s.to_float()
    return out.with_edge_vectors(new_vec, mode="float")


# ---------------------------------------------------------------------------
# piecewise affine deformation
# ---------------------------------------------------------------------------

def lift_to_cochain(h: HomologyData, v: PeriodVector):
    """Closed anti-invariant cochain realizing a relative-basis functional.

    Returns values on directed cover edges; vanishes on the deterministic
    complement of the cycle space chosen by the solver.
    """
    if v.basis_tag != h.basis_tag:
        raise BasisMismatch("vector bound to a different basis")
    if v.space != "relative":
        raise BasisMismatch("affine deformations use relative-basis vectors")
    per_rep = h.anti_invariant_cochain(h.rel_minus_basis, list(v.coords))
    return {f: h.cochain_on_edge(per_rep, f) for f in h.csurf.edges()}


def affine_deform(c: DoubleCover, h: HomologyData, v: PeriodVector) -> DoubleCover:
    """Deform the cover's flat structure along the cohomology vector v.

    The new cover satisfies period_map(new) = period_map(old) + v exactly.
    Raises TriangleFlip when some deformed triangle degenerates or reverses.
    """
    cochain = lift_to_cochain(h, v)
    csurf = c.cover_surface
    new_cover_vec = {f: csurf.vec[f] + cochain[f] for f in csurf.edges()}
    for tri in csurf.triangles:
        a, b = new_cover_vec[tri[0]], new_cover_vec[tri[1]]
        if is_zero(a) or is_zero(b) or is_zero(new_cover_vec[tri[2]]):
            raise TriangleFlip("deformation collapses an edge")
        if cross(a, b) <= 0:
            raise TriangleFlip("deformation reverses a triangle")
    base = c.base
    new_base_vec = {e: new_cover_vec[c.lift_edge(e, 0)] for e in base.edges()}
    try:
        sign = derive_signs(base.glue, new_base_vec, base.mode)
        new_base = FlatSurface(base.triangles, new_base_vec, base.glue, sign,
                               base.marked, base.mode)
    except DegenerateTriangle as exc:
        raise TriangleFlip(str(exc)) from exc
    new_cover = DoubleCover(new_base)
    return new_cover


# ---------------------------------------------------------------------------
# Teichmuller disk and fiber distance
# ---------------------------------------------------------------------------

def disk_multiplier(d0: float, lam: complex) -> complex:
    """m(conj(lambda)) = (conj(lambda) + tanh d0) / (1 + tanh d0 conj(lambda))."""
    if abs(lam) >= 1:
        raise OutOfDisk(f"|lambda| = {abs(lam)} >= 1")
    T = math.tanh(d0)
    lb = complex(lam).conjugate()
    return (lb + T) / (1 + T * lb)


def teich_disk_point(s: FlatSurface, d0: float, lam: complex):
    """Point of the Teichmuller disk through the base point at distance d0.

    Returns ``(surface, distance)``.  The represented differential is
    m(conj(lambda)) q0 / ||q0||; every edge vector is multiplied by the
    principal square root of that scalar divided by sqrt(||q0||).  At
    lambda = -tanh d0 the differential vanishes (the disk passes through its
    own base point); the distance is 0 and no surface is returned.
    """
    if d0 <= 0:
        raise SurfaceError("d0 must be positive")
    m = disk_multiplier(d0, lam)
    dist = math.atanh(abs(m)) if abs(m) < 1 else float("inf")
    if m == 0:
        return None, 0.0
    nrm = float(area(s))
    factor = complex(m) ** 0.5 / nrm ** 0.5
    sf = s.to_float()
    new_vec = {e: factor * complex(v) for e, v in sf.vec.items()}
    return sf.with_edge_vectors(new_vec, mode="float"), dist


def fiber_distance(s: FlatSurface) -> float:
    """tanh^{-1} ||q||: Teichmuller distance of the point the surface
    represents in the unit-ball chart at the base point."""
    a = float(area(s))
    if a >= 1:
        raise NormOutOfRange(f"area {a} >= 1; rescale the surface first")
    return math.atanh(a)


def make_linear_family(s: FlatSurface, v1_coords, v2_coords,
                       kind="linear-period"):
    """Convenience builder: cover + homology + directions from raw coords."""
    cov = build_cover(s)
    hom = HomologyData(cov)
    v1 = PeriodVector(tuple(v1_coords), hom.basis_tag, "relative", s.mode)
    v2 = PeriodVector(tuple(v2_coords), hom.basis_tag, "relative", s.mode)
    return DeformationFamily(s, cov, hom, v1, v2, kind=kind)


def teich_disk_family(s: FlatSurface, d0: float) -> DeformationFamily:
    """Linearization of the Teichmuller disk at lambda=0: v1 = 0,
    v2 = u / sinh(2 d0)."""
    cov = build_cover(s)
    hom = HomologyData(cov)
    u = period_map(cov, hom).to_float()
    sh = math.sinh(2.0 * d0)
    v2 = u.scale(1.0 / sh)
    v1 = u.scale(0.0)
    return DeformationFamily(s, cov, hom, v1, v2, kind="teich-disk", u=u)
