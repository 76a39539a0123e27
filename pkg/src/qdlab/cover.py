"""Orientation double cover of a half-translation surface.

The cover is built fiber-wise: every base triangle gets two sheets, and the
sheet transition across a glued edge pair is the identity when the gluing
sign is +1 and the sheet swap when it is -1.  On the cover all gluings are
translations (+1) and the edge-vector cochain is a single-valued abelian
differential.  The covering involution exchanges sheets and negates every
edge vector.

Branch points appear by themselves: around a base vertex of odd order the
sheet monodromy is -1, so the two lifted vertex stars merge into a single
cone point of doubled angle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SurfaceError
from .surface import FlatSurface


@dataclass(frozen=True)
class SigmaClassification:
    """Partition of the special points of a surface (base vertex ids)."""

    sigma_o: frozenset        # odd-order singular points (poles included)
    sigma_e: frozenset        # even-order zeros
    sigma_m_free: frozenset   # marked points that are regular
    sigma_sm: frozenset       # marked singular points
    sigma_ub: frozenset       # unbranched special points: sigma_e | sigma_m_free

    def sigma_all(self):
        return self.sigma_o | self.sigma_e | self.sigma_m_free

    def as_json(self):
        return {
            "sigma_o": sorted(self.sigma_o),
            "sigma_e": sorted(self.sigma_e),
            "sigma_m_free": sorted(self.sigma_m_free),
            "sigma_sm": sorted(self.sigma_sm),
            "sigma_ub": sorted(self.sigma_ub),
        }


def classify_points(s: FlatSurface) -> SigmaClassification:
    orders = s.orders()
    sigma_o = frozenset(v for v, o in orders.items() if o >= -1 and o % 2 != 0)
    sigma_e = frozenset(v for v, o in orders.items() if o >= 2 and o % 2 == 0)
    sigma_m_free = frozenset(v for v in s.marked if orders[v] == 0)
    singular = frozenset(v for v, o in orders.items() if o != 0)
    sigma_sm = frozenset(s.marked) & singular
    cls = SigmaClassification(
        sigma_o=sigma_o,
        sigma_e=sigma_e,
        sigma_m_free=sigma_m_free,
        sigma_sm=sigma_sm,
        sigma_ub=sigma_e | sigma_m_free,
    )
    if len(sigma_o) % 2 != 0:
        raise SurfaceError("odd number of non-orientable singularities")
    return cls


class DoubleCover:
    """The orientation double cover with its involution and projection.

    ``cover_surface`` is itself a :class:`FlatSurface` (possibly with two
    components when the base differential is a square).  Cover directed-edge
    ids are ``2*i + sheet`` where ``i`` is the index of the base edge in
    sorted order; this makes the involution the cheap bit flip ``id ^ 1``.
    """

    def __init__(self, base: FlatSurface):
        self.base = base
        base_edges = base.edges()
        self._edge_index = {e: i for i, e in enumerate(base_edges)}
        self._edge_list = base_edges

        cover_tris = []
        tri_info = []  # (base_tri, sheet) per cover triangle
        for ti, tri in enumerate(base.triangles):
            for sheet in (0, 1):
                cover_tris.append(tuple(self.lift_edge(e, sheet) for e in tri))
                tri_info.append((ti, sheet))
        self._tri_info = tuple(tri_info)
        self._tri_lift = {info: idx for idx, info in enumerate(tri_info)}

        vec = {}
        for e in base_edges:
            for sheet in (0, 1):
                v = base.vec[e] if sheet == 0 else -base.vec[e]
                vec[self.lift_edge(e, sheet)] = v

        gluings = []
        seen = set()
        for e in base_edges:
            f = base.glue[e]
            if (f, e) in seen:
                continue
            seen.add((e, f))
            flip = base.sign[e] < 0
            for sheet in (0, 1):
                other = sheet ^ 1 if flip else sheet
                gluings.append((self.lift_edge(e, sheet), self.lift_edge(f, other), 1))

        # lift marked points (every preimage of a marked base vertex) before
        # validating, since validation wants poles and counts marked
        glue_map, sign_map = {}, {}
        for e, f, sg in gluings:
            glue_map[e], glue_map[f] = f, e
            sign_map[e] = sign_map[f] = sg
        draft = FlatSurface(cover_tris, vec, glue_map, sign_map, (), base.mode,
                            _validate=False)
        marked_up = set()
        for cv in draft.vertices():
            e, _ = self.project_edge(cv)
            if base.vertex_at_tail(e) in base.marked:
                marked_up.add(cv)
        self.cover_surface = FlatSurface(cover_tris, vec, glue_map, sign_map,
                                         marked_up, base.mode)

        self.classification = classify_points(base)
        self._vertex_fiber = {}
        for cv in self.cover_surface.vertices():
            e, _ = self.project_edge(cv)
            self._vertex_fiber.setdefault(base.vertex_at_tail(e), []).append(cv)
        self._check()

    # -- index maps ---------------------------------------------------------
    def lift_edge(self, base_edge, sheet):
        return 2 * self._edge_index[base_edge] + sheet

    def project_edge(self, cover_edge):
        return self._edge_list[cover_edge // 2], cover_edge % 2

    def involution_edge(self, cover_edge):
        return cover_edge ^ 1

    def lift_triangle(self, base_tri, sheet):
        return self._tri_lift[(base_tri, sheet)]

    def project_triangle(self, cover_tri):
        return self._tri_info[cover_tri]

    def involution_triangle(self, cover_tri):
        ti, sheet = self._tri_info[cover_tri]
        return self._tri_lift[(ti, sheet ^ 1)]

    def involution_vertex(self, cover_vertex):
        c = self.cover_surface
        return c.vertex_at_tail(self.involution_edge(cover_vertex))

    def project_vertex(self, cover_vertex):
        e, _ = self.project_edge(cover_vertex)
        return self.base.vertex_at_tail(e)

    def vertex_fiber(self, base_vertex):
        return tuple(sorted(self._vertex_fiber.get(base_vertex, ())))

    def quotient_surface(self) -> FlatSurface:
        """The base surface (sheet-0 edge vectors, original cocycle)."""
        return self.base

    def lifted_sigma(self):
        """Preimages of each Sigma set as cover vertex sets."""
        cls = self.classification
        out = {}
        for name in ("sigma_o", "sigma_e", "sigma_m_free", "sigma_sm", "sigma_ub"):
            pts = getattr(cls, name)
            out[name] = frozenset(v for p in pts for v in self.vertex_fiber(p))
        return out

    # -- consistency --------------------------------------------------------
    def _check(self):
        c = self.cover_surface
        for f in c.edges():
            g = self.involution_edge(f)
            if c.vec[g] != -c.vec[f] and self.base.mode == "exact":
                raise SurfaceError("involution does not negate edge vectors")
        for p in self.classification.sigma_ub:
            if len(self.vertex_fiber(p)) != 2:
                raise SurfaceError(f"unbranched point {p} has wrong fiber")
        for p in self.classification.sigma_o:
            if len(self.vertex_fiber(p)) != 1:
                raise SurfaceError(f"branch point {p} has wrong fiber")
        chi_base = self.base.euler_characteristic()
        chi_cover = c.euler_characteristic()
        if chi_cover != 2 * chi_base - len(self.classification.sigma_o):
            raise SurfaceError("cover Euler characteristic mismatch")

    # -- reporting ------------------------------------------------------------
    def summary(self):
        c = self.cover_surface
        comps = c.components()
        return {
            "connected": len(comps) == 1,
            "components": len(comps),
            "euler_characteristic": c.euler_characteristic(),
            "genus_per_component": sorted(c.component_genus(k) for k in comps),
            "branch_points": len(self.classification.sigma_o),
        }

    def as_json(self):
        from .io_json import surface_to_dict

        inv_edges = {str(f): self.involution_edge(f)
                     for f in self.cover_surface.edges()}
        proj_edges = {str(f): list(self.project_edge(f))
                      for f in self.cover_surface.edges()}
        return {
            "base": surface_to_dict(self.base),
            "cover": surface_to_dict(self.cover_surface),
            "involution_edges": inv_edges,
            "projection_edges": proj_edges,
            "classification": self.classification.as_json(),
            "lifted_sigma": {k: sorted(v) for k, v in self.lifted_sigma().items()},
            "summary": self.summary(),
        }


def build_cover(s: FlatSurface) -> DoubleCover:
    return DoubleCover(s)


def cover_from_dict(raw) -> DoubleCover:
    """Rebuild a cover from its JSON form (reconstructs from the base)."""
    from .io_json import surface_from_dict

    return DoubleCover(surface_from_dict(raw["base"]))
