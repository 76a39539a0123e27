"""Triangulated half-translation surfaces.

A surface is a set of positively oriented Euclidean triangles, each given by
three directed edges with complex holonomy vectors (the integral of a local
branch of the square root of the quadratic differential along the edge),
together with an involutive gluing of directed edges.  Each glued pair (e, e')
carries a sign sigma in {+1, -1}:

    vec(e') = -sigma * vec(e)

sigma = -1 means the square-root branch flips across that edge (the transition
is z -> -z + c instead of a translation).  The sign assignment is exactly the
Z/2 cocycle whose triviality decides whether the differential is a global
square.

Vertices are not part of the input: they are the orbits of the corner walk
``e -> glue(prev(e))`` and are named by the smallest directed-edge id whose
tail sits at the vertex.  Cone angles are integer multiples of pi; the
integer order ``o_p = angle/pi - 2`` is computed exactly in rational mode by
tracking real-axis crossings of a cumulative product of corner rotations
(every corner of a nondegenerate triangle turns by strictly less than pi, so
crossings count multiples of pi exactly).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ClosureViolation,
    DegenerateTriangle,
    GluingMismatch,
    InconsistentSymbol,
    NonIntegerOrder,
    SurfaceError,
    UnmarkedPole,
)
from .exact import QC, conj, is_zero

FLOAT_ANGLE_TOL = 1e-9  # |angle defect| / pi tolerated in float mode


def cross(u, v):
    """Imaginary part of conj(u)*v; twice the signed area of (0,u,v)... /1."""
    if isinstance(u, QC):
        return u.re * v.im - u.im * v.re
    return (u.conjugate() * v).imag


def dot(u, v):
    if isinstance(u, QC):
        return u.re * v.re + u.im * v.im
    return (u.conjugate() * v).real


class FlatSurface:
    """Validated triangulated half-translation surface.

    Instances are immutable after construction; every operation returns a new
    surface.  Use :func:`build_surface` (raw dict) or :func:`make_surface`
    (programmatic) instead of calling the constructor directly.
    """

    __slots__ = (
        "triangles",
        "vec",
        "glue",
        "sign",
        "marked",
        "mode",
        "_tri_of",
        "_next",
        "_prev",
        "_vertex_of",
        "_vertices",
        "_orders",
        "_components",
    )

    def __init__(self, triangles, vec, glue, sign, marked, mode, _validate=True):
        self.triangles = tuple(tuple(t) for t in triangles)
        self.vec = dict(vec)
        self.glue = dict(glue)
        self.sign = dict(sign)
        self.mode = mode
        self._build_incidence()
        self._build_vertices()
        self.marked = frozenset(marked)
        if _validate:
            self._validate()

    # -- combinatorial incidence -----------------------------------------
    def _build_incidence(self):
        tri_of, nxt, prv = {}, {}, {}
        for ti, (a, b, c) in enumerate(self.triangles):
            for e in (a, b, c):
                if e in tri_of:
                    raise GluingMismatch(f"directed edge {e} appears in two triangles")
            tri_of[a] = tri_of[b] = tri_of[c] = ti
            nxt[a], nxt[b], nxt[c] = b, c, a
            prv[a], prv[b], prv[c] = c, a, b
        self._tri_of, self._next, self._prev = tri_of, nxt, prv

    def _build_vertices(self):
        """Vertex orbits of the corner walk e -> glue(prev(e))."""
        vertex_of = {}
        vertices = {}
        for e0 in sorted(self._tri_of):
            if e0 in vertex_of:
                continue
            orbit = []
            e = e0
            while e not in vertex_of:
                vertex_of[e] = e0
                orbit.append(e)
                p = self._prev[e]
                if p not in self.glue:
                    raise GluingMismatch(f"edge {p} has no gluing partner")
                e = self.glue[p]
            if vertex_of[e] != e0:
                raise GluingMismatch("corner walk escaped its own orbit")
            vertices[e0] = tuple(orbit)
        self._vertex_of = vertex_of
        self._vertices = vertices
        self._orders = None
        self._components = None

    # -- validation --------------------------------------------------------
    def _validate(self):
        edges = set(self._tri_of)
        if set(self.vec) != edges:
            raise GluingMismatch("edge-vector table does not match triangle edges")
        if set(self.glue) != edges:
            raise GluingMismatch("gluing table does not match triangle edges")
        for e, f in self.glue.items():
            if f == e:
                raise GluingMismatch(f"edge {e} glued to itself")
            if self.glue.get(f) != e:
                raise GluingMismatch(f"gluing not involutive at ({e}, {f})")
            s = self.sign.get(e)
            if s not in (1, -1) or self.sign.get(f) != s:
                raise GluingMismatch(f"bad sign on gluing ({e}, {f})")
        for ti, (a, b, c) in enumerate(self.triangles):
            va, vb, vcv = self.vec[a], self.vec[b], self.vec[c]
            for e, v in ((a, va), (b, vb), (c, vcv)):
                if is_zero(v):
                    raise DegenerateTriangle(f"zero edge vector on edge {e}")
            s = va + vb + vcv
            if self.mode == "exact":
                if not is_zero(s):
                    raise ClosureViolation(f"triangle {ti} does not close: sum {s!r}")
            else:
                scale = max(abs(complex(va)), abs(complex(vb)), abs(complex(vcv)))
                if abs(complex(s)) > 1e-9 * scale:
                    raise ClosureViolation(f"triangle {ti} does not close")
            ar2 = cross(va, vb)
            if self.mode == "exact":
                if ar2 <= 0:
                    raise DegenerateTriangle(f"triangle {ti} not positively oriented")
            else:
                if ar2 <= 0:
                    raise DegenerateTriangle(f"triangle {ti} not positively oriented")
        for e, f in self.glue.items():
            lhs = self.vec[f]
            rhs = -self.sign[e] * self.vec[e]
            diff = lhs - rhs
            if self.mode == "exact":
                if not is_zero(diff):
                    raise GluingMismatch(f"vec({f}) != -sigma*vec({e})")
            else:
                if abs(complex(diff)) > 1e-9 * max(1.0, abs(complex(lhs))):
                    raise GluingMismatch(f"vec({f}) != -sigma*vec({e})")
        for v in self.marked:
            if v not in self._vertices:
                raise SurfaceError(f"marked vertex {v} is not a vertex id")
        for v, o in self.orders().items():
            if o < -1:
                raise NonIntegerOrder(f"vertex {v} has order {o} < -1")
            if o == -1 and v not in self.marked:
                raise UnmarkedPole(f"pole at unmarked vertex {v}")
        for comp in self.components():
            g = self.component_genus(comp)
            m = sum(1 for v in self.marked if v in comp["vertices"])
            if 2 * g - 2 + m <= 0:
                raise SurfaceError(
                    f"component violates 2g-2+m>0 (g={g}, m={m})"
                )

    # -- basic queries ------------------------------------------------------
    def edges(self):
        return sorted(self._tri_of)

    def triangle_of(self, e):
        return self._tri_of[e]

    def next_edge(self, e):
        return self._next[e]

    def prev_edge(self, e):
        return self._prev[e]

    def vertex_at_tail(self, e):
        return self._vertex_of[e]

    def vertex_at_head(self, e):
        return self._vertex_of[self._next[e]]

    def vertices(self):
        return sorted(self._vertices)

    def vertex_corners(self, v):
        """Directed edges whose tail sits at v, in rotational order."""
        return self._vertices[v]

    def num_geometric_edges(self):
        return len(self._tri_of) // 2

    def euler_characteristic(self):
        return len(self._vertices) - self.num_geometric_edges() + len(self.triangles)

    # -- components ---------------------------------------------------------
    def components(self):
        """Connected components as dicts with triangle, vertex sets."""
        if self._components is not None:
            return self._components
        seen = set()
        comps = []
        for t0 in range(len(self.triangles)):
            if t0 in seen:
                continue
            stack, tris = [t0], set()
            while stack:
                t = stack.pop()
                if t in tris:
                    continue
                tris.add(t)
                for e in self.triangles[t]:
                    nb = self._tri_of[self.glue[e]]
                    if nb not in tris:
                        stack.append(nb)
            seen |= tris
            verts = {self._vertex_of[e] for t in tris for e in self.triangles[t]}
            nedges = sum(3 for _ in tris) // 2
            comps.append({"triangles": frozenset(tris), "vertices": frozenset(verts),
                          "n_edges": nedges})
        self._components = comps
        return comps

    def is_connected(self):
        return len(self.components()) == 1

    def component_genus(self, comp):
        chi = len(comp["vertices"]) - comp["n_edges"] + len(comp["triangles"])
        if chi % 2 != 0:
            raise SurfaceError("odd Euler characteristic")
        return (2 - chi) // 2

    def genus(self):
        if not self.is_connected():
            raise SurfaceError("genus of a disconnected surface is per-component")
        return self.component_genus(self.components()[0])

    # -- metric quantities ----------------------------------------------------
    def triangle_area(self, ti):
        a, b, _ = self.triangles[ti]
        ar2 = cross(self.vec[a], self.vec[b])
        return ar2 / 2

    def orders(self):
        """Map vertex id -> integer order o_p (cone angle (o_p+2)*pi)."""
        if self._orders is not None:
            return self._orders
        out = {}
        for v, corner_edges in self._vertices.items():
            out[v] = self._vertex_order(corner_edges)
        self._orders = out
        return out

    def _vertex_order(self, corner_edges):
        if self.mode == "exact":
            return self._vertex_order_exact(corner_edges)
        return self._vertex_order_float(corner_edges)

    def _vertex_order_exact(self, corner_edges):
        # cumulative product of corner rotations w*conj(u); count real-axis
        # events (each corner turns by less than pi, so events = multiples of
        # pi swept).
        q = QC(1, 0)
        events = 0
        for e in corner_edges:
            u = self.vec[e]
            w = -self.vec[self._prev[e]]
            z = w * u.conjugate()
            if z.im <= 0:
                raise DegenerateTriangle("corner with nonpositive turn")
            prev_im = q.im
            q = q * z
            if (prev_im > 0 and q.im <= 0) or (prev_im < 0 and q.im >= 0):
                events += 1
        if q.im != 0:
            raise NonIntegerOrder("cone angle is not an integer multiple of pi")
        if (q.re > 0) != (events % 2 == 0):
            raise NonIntegerOrder("inconsistent holonomy around vertex")
        return events - 2

    def _vertex_order_float(self, corner_edges):
        import math

        total = 0.0
        for e in corner_edges:
            u = complex(self.vec[e])
            w = complex(-self.vec[self._prev[e]])
            ang = math.atan2(cross(u, w), dot(u, w))
            if ang <= 0:
                raise DegenerateTriangle("corner with nonpositive turn")
            total += ang
        k = round(total / math.pi)
        if abs(total - k * math.pi) > FLOAT_ANGLE_TOL * math.pi * max(1, len(corner_edges)):
            raise NonIntegerOrder(
                f"cone angle {total!r} not an integer multiple of pi"
            )
        return k - 2

    # -- rebuilders -----------------------------------------------------------
    def with_edge_vectors(self, new_vec, mode=None, marked=None):
        """New surface with the same combinatorics and fresh edge vectors.

        Gluing signs are re-derived from the new vectors (vec(e') must equal
        +-vec(e) exactly); this keeps deformations honest.
        """
        mode = mode or self.mode
        sign = derive_signs(self.glue, new_vec, mode)
        return FlatSurface(self.triangles, new_vec, self.glue, sign,
                           self.marked if marked is None else marked, mode)

    def scaled(self, factor):
        """Scale every edge vector by a scalar (real or complex)."""
        new_vec = {e: factor * v for e, v in self.vec.items()}
        mode = self.mode
        if mode == "exact" and not isinstance(factor, (int, Fraction, QC)):
            mode = "float"
            new_vec = {e: complex(factor) * complex(v) for e, v in self.vec.items()}
        return FlatSurface(self.triangles, new_vec, self.glue, self.sign,
                           self.marked, mode)

    def to_float(self):
        if self.mode == "float":
            return self
        new_vec = {e: complex(v) for e, v in self.vec.items()}
        return FlatSurface(self.triangles, new_vec, self.glue, self.sign,
                           self.marked, "float")


def derive_signs(glue, vec, mode):
    """Recover the +-1 gluing cocycle from vec(e') = -sigma*vec(e)."""
    sign = {}
    for e, f in glue.items():
        ve, vf = vec[e], vec[f]
        if mode == "exact":
            if vf == -ve:
                sign[e] = 1
            elif vf == ve:
                sign[e] = -1
            else:
                raise GluingMismatch("vectors break the gluing relation")
        else:
            ce, cf = complex(ve), complex(vf)
            if abs(cf + ce) <= 1e-9 * max(1.0, abs(ce)):
                sign[e] = 1
            elif abs(cf - ce) <= 1e-9 * max(1.0, abs(ce)):
                sign[e] = -1
            else:
                raise GluingMismatch("vectors break the gluing relation")
    return sign


# ---------------------------------------------------------------------------
# module operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StratumSymbol:
    """Stratum symbol: free marked points, poles, zero orders, squareness."""

    m_free: int
    n_poles: int
    n_zeros: tuple  # sorted tuple of (order, count), orders >= 1
    epsilon: int

    def zero_map(self):
        return dict(self.n_zeros)

    def order_sum(self):
        return -self.n_poles + sum(l * n for l, n in self.n_zeros)

    def num_singular(self):
        return self.n_poles + sum(n for _, n in self.n_zeros)

    def as_json(self):
        return {
            "m_free": self.m_free,
            "n_poles": self.n_poles,
            "n_zeros": [[l, n] for l, n in self.n_zeros],
            "epsilon": self.epsilon,
        }

    def __str__(self):
        zeros = ",".join(f"{l}^{n}" if n > 1 else f"{l}" for l, n in self.n_zeros)
        return (f"(m={self.m_free}, poles={self.n_poles}, "
                f"zeros=[{zeros}], eps={self.epsilon:+d})")


def make_symbol(m_free, n_poles, zeros, epsilon):
    items = tuple(sorted((int(l), int(n)) for l, n in dict(zeros).items() if n))
    for l, n in items:
        if l < 1 or n < 1:
            raise InconsistentSymbol(f"bad zero entry ({l},{n})")
    return StratumSymbol(int(m_free), int(n_poles), items, int(epsilon))


def build_surface(raw):
    """Validate a raw surface description (parsed JSON dict) -> FlatSurface."""
    from .io_json import surface_from_dict

    return surface_from_dict(raw)


def make_surface(triangles, vectors, gluings, marked=(), mode="exact"):
    """Programmatic constructor.

    ``gluings`` is an iterable of (e, e', sign); both directions are stored.
    """
    glue, sign = {}, {}
    for e, f, s in gluings:
        glue[e], glue[f] = f, e
        sign[e] = sign[f] = s
    return FlatSurface(triangles, vectors, glue, sign, marked, mode)


def area(s: FlatSurface):
    """Total flat area = L1 norm of the represented differential."""
    total = None
    for ti in range(len(s.triangles)):
        a = s.triangle_area(ti)
        total = a if total is None else total + a
    return total


def sign_cocycle_is_coboundary(s: FlatSurface):
    """True iff the +-1 gluing cocycle is trivial (the differential is a
    global square).  BFS 2-coloring of the triangle adjacency graph."""
    color = {}
    for t0 in range(len(s.triangles)):
        if t0 in color:
            continue
        color[t0] = 1
        stack = [t0]
        while stack:
            t = stack.pop()
            for e in s.triangles[t]:
                f = s.glue[e]
                t2 = s.triangle_of(f)
                want = color[t] * s.sign[e]
                if t2 not in color:
                    color[t2] = want
                    stack.append(t2)
                elif color[t2] != want:
                    return False
    return True


def symbol(s: FlatSurface) -> StratumSymbol:
    """Stratum symbol of a connected surface."""
    if not s.is_connected():
        raise SurfaceError("symbol is defined for connected surfaces")
    orders = s.orders()
    m_free = sum(1 for v in s.marked if orders[v] == 0)
    n_poles = sum(1 for o in orders.values() if o == -1)
    zeros = {}
    for o in orders.values():
        if o >= 1:
            zeros[o] = zeros.get(o, 0) + 1
    eps = 1 if sign_cocycle_is_coboundary(s) else -1
    return make_symbol(m_free, n_poles, zeros, eps)


def stratum_dim(p: StratumSymbol, g: int) -> int:
    """Complex dimension of the stratum with symbol p in genus g."""
    if p.order_sum() != 4 * g - 4:
        raise InconsistentSymbol(
            f"order sum {p.order_sum()} != 4g-4 = {4 * g - 4}"
        )
    if p.epsilon == 1:
        if p.n_poles:
            raise InconsistentSymbol("square differential with poles")
        if any(l % 2 for l, _ in p.n_zeros):
            raise InconsistentSymbol("square differential with odd-order zero")
    if p.epsilon not in (1, -1):
        raise InconsistentSymbol("epsilon must be +-1")
    twice = 4 * g + (p.epsilon - 3) + 2 * p.m_free + 2 * (p.n_poles + sum(n for _, n in p.n_zeros))
    if twice % 2 != 0:
        raise InconsistentSymbol("non-integer dimension")
    return twice // 2
