"""Exact homological algebra on the covering Delta-complex.

Everything here is combinatorial and runs over exact rationals regardless of
the surface's scalar mode: boundary matrices, absolute and relative H_1 of
the cover, the involution action and its (-1)-eigenspaces, the intersection
matrix J on the anti-invariant absolute homology, and the wedge pairing

    wedge(x, y) = -x^T J^{-1} y

on period vectors, normalized so that sqrt(-1) * wedge(u, conj(u)) = 4*area
for the period vector u of the abelian differential upstairs.

The independent oracle for the wedge is the antisymmetrized simplicial cup
product.  Cochains are transferred to the barycentric subdivision of the
cover (where vertex / edge-midpoint / face-center types give a canonical
ordering on every simplex) and the Alexander-Whitney product is evaluated on
the fundamental 2-cycle.  With local potentials per triangle the whole
evaluation collapses to

    cup(a, b) = sum over triangles, sum over its directed edges f of
                a(f) * (phi_b(center) - phi_b(midpoint of f)),

which is what :func:`cup_product_pairing` computes.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .cover import DoubleCover
from .errors import (
    BasisMismatch,
    InconsistentFunctional,
    SingularJ,
)
from .exact import (
    QC,
    QC_I,
    conj,
    is_zero,
    mat_inverse,
    nullspace,
    rank,
    solve,
)

F0 = Fraction(0)
F1 = Fraction(1)


class _Reducer:
    """Incremental exact row reduction for greedy basis extension."""

    def __init__(self, dim):
        self.dim = dim
        self.rows = {}  # pivot col -> normalized row

    def reduce(self, vec):
        v = list(vec)
        for p in sorted(self.rows):
            if not is_zero(v[p]):
                f = v[p]
                row = self.rows[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def try_add(self, vec):
        v = self.reduce(vec)
        pivot = next((i for i, x in enumerate(v) if not is_zero(x)), None)
        if pivot is None:
            return False
        inv = v[pivot]
        self.rows[pivot] = [x / inv for x in v]
        return True


class HomologyData:
    """Chain-level data of a double cover; immutable after construction."""

    def __init__(self, cover: DoubleCover):
        self.cover = cover
        c = cover.cover_surface
        self.csurf = c

        # geometric cover edges: representative = smaller id of a glued pair
        reps = []
        rep_index = {}
        for e in c.edges():
            f = c.glue[e]
            r = min(e, f)
            if r not in rep_index:
                rep_index[r] = len(reps)
                reps.append(r)
        self.reps = reps
        self.rep_index = rep_index

        self.vertices = c.vertices()
        self._vert_index = {v: i for i, v in enumerate(self.vertices)}
        nr, nv, nt = len(reps), len(self.vertices), len(c.triangles)

        # boundary matrices over Q
        self.d2 = [[F0] * nt for _ in range(nr)]
        for t in range(nt):
            for f in c.triangles[t]:
                i, sg = self._chain(f)
                self.d2[i][t] += sg
        self.d1 = [[F0] * nr for _ in range(nv)]
        for i, r in enumerate(reps):
            tail = c.vertex_at_tail(r)
            head = c.vertex_at_head(r)
            self.d1[self._vert_index[head]][i] += 1
            self.d1[self._vert_index[tail]][i] -= 1

        lifted = cover.lifted_sigma()
        self.sigma_ub_vertices = sorted(lifted["sigma_ub"])
        keep = [i for i, v in enumerate(self.vertices)
                if v not in lifted["sigma_ub"]]
        self.d1_rel = [self.d1[i] for i in keep]

        # involution as a signed permutation on edge reps
        self._iota_edge = []
        for r in reps:
            i, sg = self._chain(cover.involution_edge(r))
            self._iota_edge.append((i, sg))

        self._boundaries = [[self.d2[i][t] for i in range(nr)] for t in range(nt)]

        self.abs_basis = self._homology_basis(self.d1)
        self.rel_basis = self._homology_basis(self.d1_rel)

        self.iota_abs = self._iota_star(self.abs_basis, self._express_abs)
        self.iota_rel = self._iota_star(self.rel_basis, self._express_rel)

        self.abs_minus_basis = self._minus_basis(self.abs_basis, self.iota_abs)
        self.rel_minus_basis = self._minus_basis(self.rel_basis, self.iota_rel)

        self.comparison = self._comparison_map()

        self._dual_cocycles = [
            self.cocycle_functional(
                [F1 if j == i else F0 for j in range(len(self.abs_minus_basis))],
                space="absolute")
            for i in range(len(self.abs_minus_basis))
        ]
        m = len(self.abs_minus_basis)
        G = [[self.cup_product_pairing(self._dual_cocycles[i],
                                       self._dual_cocycles[j])
              for j in range(m)] for i in range(m)]
        for i in range(m):
            for j in range(m):
                if G[i][j] != -G[j][i]:
                    raise SingularJ("cup pairing of dual cocycles not antisymmetric")
        Ginv = mat_inverse(G) if m else []
        if m and Ginv is None:
            raise SingularJ("degenerate intersection pairing on H1^-")
        self.J = [[-Ginv[i][j] for j in range(m)] for i in range(m)] if m else []
        self.Jinv = [[-G[i][j] for j in range(m)] for i in range(m)] if m else []

        self.basis_tag = self._make_tag()

    # -- chains ---------------------------------------------------------------
    def _chain(self, directed_edge):
        """Directed cover edge -> (rep index, sign)."""
        f = self.csurf.glue[directed_edge]
        r = min(directed_edge, f)
        return self.rep_index[r], (1 if directed_edge == r else -1)

    def chain_coeff(self, vec, directed_edge):
        i, sg = self._chain(directed_edge)
        return sg * vec[i]

    def iota_chain(self, vec):
        """Push a 1-chain (rep coordinates) through the involution."""
        out = [F0] * len(self.reps)
        for i, x in enumerate(vec):
            if is_zero(x):
                continue
            j, sg = self._iota_edge[i]
            out[j] += sg * x
        return out

    # -- homology bases ---------------------------------------------------------
    def _homology_basis(self, d1):
        red = _Reducer(len(self.reps))
        for b in self._boundaries:
            red.try_add(b)
        basis = []
        for z in nullspace(d1, ncols=len(self.reps)):
            if red.try_add(z):
                basis.append(z)
        return basis

    def _express(self, basis, cyc):
        """Homology coordinates of a cycle w.r.t. (boundaries | basis)."""
        cols = self._boundaries + basis
        nr = len(self.reps)
        A = [[cols[k][r] for k in range(len(cols))] for r in range(nr)]
        x = solve(A, list(cyc))
        if x is None:
            raise InconsistentFunctional("vector is not a cycle of this complex")
        return x[len(self._boundaries):]

    def _express_abs(self, cyc):
        return self._express(self.abs_basis, cyc)

    def _express_rel(self, cyc):
        return self._express(self.rel_basis, cyc)

    def _iota_star(self, basis, express):
        cols = [express(self.iota_chain(b)) for b in basis]
        n = len(basis)
        m = [[cols[j][i] for j in range(n)] for i in range(n)]
        # involutivity check: iota*^2 = id
        for i in range(n):
            for j in range(n):
                s = sum(m[i][k] * m[k][j] for k in range(n))
                if s != (F1 if i == j else F0):
                    raise InconsistentFunctional("involution matrix is not an involution")
        return m

    def _minus_basis(self, basis, iota):
        n = len(basis)
        aplusid = [[iota[i][j] + (F1 if i == j else F0) for j in range(n)]
                   for i in range(n)]
        out = []
        for k in nullspace(aplusid):
            cyc = [F0] * len(self.reps)
            for j, coef in enumerate(k):
                if coef:
                    cyc = [a + coef * b for a, b in zip(cyc, basis[j])]
            anti = [(a - b) / 2 for a, b in zip(cyc, self.iota_chain(cyc))]
            for a, b in zip(anti, self.iota_chain(anti)):
                if a != -b:
                    raise InconsistentFunctional("failed to symmetrize eigenvector")
            out.append(anti)
        return out

    def _comparison_map(self):
        """Columns: relative-minus coordinates of each absolute-minus basis cycle."""
        cols = []
        relcols = self._boundaries + self.rel_minus_basis
        nr = len(self.reps)
        A = [[relcols[k][r] for k in range(len(relcols))] for r in range(nr)]
        for c in self.abs_minus_basis:
            x = solve(A, list(c))
            if x is None:
                raise InconsistentFunctional("comparison map undefined")
            cols.append(x[len(self._boundaries):])
        return cols  # cols[i][j]: coeff of rel_minus_j in abs_minus_i

    def _make_tag(self):
        base = self.cover.base
        payload = {
            "triangles": [list(t) for t in base.triangles],
            "gluings": sorted((min(e, f), max(e, f), base.sign[e])
                              for e, f in base.glue.items()),
            "marked": sorted(base.marked),
            "sigma_ub": self.sigma_ub_vertices,
            "mode": base.mode,
        }
        blob = json.dumps(payload, sort_keys=True).encode()
        return "hom1-" + hashlib.sha1(blob).hexdigest()[:16]

    # -- ranks ------------------------------------------------------------------
    def rank_abs(self):
        return len(self.abs_basis)

    def rank_rel(self):
        return len(self.rel_basis)

    def rank_abs_minus(self):
        return len(self.abs_minus_basis)

    def rank_rel_minus(self):
        return len(self.rel_minus_basis)

    # -- cochain machinery --------------------------------------------------------
    def _pair_structure(self):
        """Involution orbit pairs of edge reps for anti-invariant cochains.

        Returns (pairs, coeff) where pairs is a list of rep indices (one per
        orbit) and coeff maps every rep index to (pair position, factor) with
        alpha(rep_i) = factor * w_pair.
        """
        if hasattr(self, "_pairs_cache"):
            return self._pairs_cache
        pairs = []
        coeff = {}
        for i in range(len(self.reps)):
            if i in coeff:
                continue
            j, sg = self._iota_edge[i]
            if j == i:
                raise InconsistentFunctional("involution fixes a geometric edge")
            pos = len(pairs)
            pairs.append(i)
            coeff[i] = (pos, F1)
            # alpha(iota# rep_i) = -alpha(rep_i): iota#(rep_i) = sg * rep_j
            coeff[j] = (pos, -sg * F1)
        self._pairs_cache = (pairs, coeff)
        return self._pairs_cache

    def _cochain_row(self, chain_vec):
        """Rewrite a functional row over edge reps into pair variables."""
        pairs, coeff = self._pair_structure()
        row = [F0] * len(pairs)
        for i, x in enumerate(chain_vec):
            if is_zero(x):
                continue
            pos, fac = coeff[i]
            row[pos] += fac * x
        return row

    def anti_invariant_cochain(self, cycles, values):
        """Closed anti-invariant 1-cochain with prescribed cycle periods.

        ``cycles`` are 1-cycles in rep coordinates, ``values`` their required
        periods (Fraction or QC).  The cochain vanishes on a deterministic
        complement (greedy lowest-index pair variables), mirroring the
        spanning-forest normalization.  Returns values per edge rep (a dict).
        """
        pairs, coeff = self._pair_structure()
        npair = len(pairs)
        rows, rhs = [], []
        seen_tris = set()
        for t in range(len(self.csurf.triangles)):
            if t in seen_tris:
                continue
            seen_tris.add(t)
            seen_tris.add(self.cover.involution_triangle(t))
            rows.append(self._cochain_row(self._boundaries[t]))
            rhs.append(None)  # zero of the value field, fixed below
        ncons = len(rows)
        for z, val in zip(cycles, values):
            rows.append(self._cochain_row(z))
            rhs.append(val)
        zero = values[0] * 0 if len(values) else F0
        rhs = [zero if v is None else v for v in rhs]
        # complete to full column rank with unit rows (deterministic forest)
        red = _Reducer(npair)
        for r in rows:
            red.try_add(r)
        for k in range(npair):
            unit = [F0] * npair
            unit[k] = F1
            if red.try_add(unit):
                rows.append(unit)
                rhs.append(zero)
        w = solve(rows, rhs)
        if w is None:
            raise InconsistentFunctional("no closed cochain matches the functional")
        out = {}
        for i in range(len(self.reps)):
            pos, fac = coeff[i]
            out[i] = fac * w[pos]
        return out

    def cocycle_functional(self, values, space="absolute"):
        """Closed anti-invariant cochain realizing a functional on a minus basis."""
        basis = self.abs_minus_basis if space == "absolute" else self.rel_minus_basis
        if len(values) != len(basis):
            raise BasisMismatch("functional length does not match basis rank")
        return self.anti_invariant_cochain(basis, list(values))

    def cochain_on_edge(self, cochain, directed_edge):
        i, sg = self._chain(directed_edge)
        return sg * cochain[i]

    def evaluate_cochain(self, cochain, chain_vec):
        tot = None
        for i, x in enumerate(chain_vec):
            if is_zero(x):
                continue
            term = cochain[i] * x
            tot = term if tot is None else tot + term
        return F0 if tot is None else tot

    # -- cup product oracle ----------------------------------------------------
    def cup_product_pairing(self, alpha, beta, antisymmetrize=True):
        """Evaluate the simplicial cup product of two closed cochains on the
        fundamental cycle of the (subdivided) cover."""
        c = self.csurf
        total = None
        for tri in c.triangles:
            f1, f2, f3 = tri
            a1 = self.cochain_on_edge(alpha, f1)
            a2 = self.cochain_on_edge(alpha, f2)
            a3 = self.cochain_on_edge(alpha, f3)
            b1 = self.cochain_on_edge(beta, f1)
            b2 = self.cochain_on_edge(beta, f2)
            b3 = self.cochain_on_edge(beta, f3)
            # potentials of beta at the corners tail(f1), tail(f2), tail(f3)
            p0 = b1 * 0
            p1 = b1
            p2 = b1 + b2
            cb = (p0 + p1 + p2) / 3
            m1 = (p0 + p1) / 2
            m2 = (p1 + p2) / 2
            m3 = (p2 + p0) / 2
            t = a1 * (cb - m1) + a2 * (cb - m2) + a3 * (cb - m3)
            total = t if total is None else total + t
        if total is None:
            return F0
        if not antisymmetrize:
            return total
        rev = self.cup_product_pairing(beta, alpha, antisymmetrize=False)
        return (total - rev) / 2


def homology_data(cover: DoubleCover) -> HomologyData:
    return HomologyData(cover)


# ---------------------------------------------------------------------------
# wedge and Hermitian pairings on period vectors
# ---------------------------------------------------------------------------

def _absolute_coords(h: HomologyData, x):
    from .periods import PeriodVector

    if not isinstance(x, PeriodVector):
        raise BasisMismatch("wedge expects PeriodVector inputs")
    if x.basis_tag != h.basis_tag:
        raise BasisMismatch("period vector bound to a different basis")
    if x.space == "absolute":
        return list(x.coords)
    # restrict a relative functional along the comparison map
    out = []
    for i in range(len(h.abs_minus_basis)):
        coefs = h.comparison[i]
        s = None
        for j, cf in enumerate(coefs):
            if is_zero(cf):
                continue
            term = x.coords[j] * cf
            s = term if s is None else s + term
        out.append(F0 if s is None else s)
    return out


def wedge(h: HomologyData, x, y):
    """Topological wedge pairing: -x^T J^{-1} y on the absolute minus basis."""
    xa = _absolute_coords(h, x)
    ya = _absolute_coords(h, y)
    m = len(h.abs_minus_basis)
    if m == 0:
        return F0
    total = None
    for i in range(m):
        if is_zero(xa[i]):
            continue
        for j in range(m):
            if is_zero(h.Jinv[i][j]) or is_zero(ya[j]):
                continue
            term = xa[i] * h.Jinv[i][j] * ya[j]
            total = term if total is None else total + term
    if total is None:
        return F0
    return -total


def wedge_cup_oracle(h: HomologyData, x, y):
    """Independent route: cup product of cocycle representatives."""
    xa = _absolute_coords(h, x)
    ya = _absolute_coords(h, y)
    ax = h.anti_invariant_cochain(h.abs_minus_basis, xa)
    by = h.anti_invariant_cochain(h.abs_minus_basis, ya)
    return h.cup_product_pairing(ax, by)


def hermitian_pairing(h: HomologyData, x, y):
    """(sqrt(-1)/4) * wedge(x, conj(y)); positive definite on holomorphic
    period vectors."""
    w = wedge(h, x, y.conjugate())
    imag_unit = QC_I if _is_exact_value(w) else 1j
    return imag_unit * w / 4


def _is_exact_value(v):
    return isinstance(v, (QC, Fraction, int))


def cocycle_representative(h: HomologyData, functional, space="absolute"):
    """Closed anti-invariant 1-cochain realizing ``functional`` (sequence of
    values on the chosen minus basis).  Returned as a dict over directed
    cover edges."""
    per_rep = h.cocycle_functional(list(functional), space=space)
    out = {}
    for f in h.csurf.edges():
        out[f] = h.cochain_on_edge(per_rep, f)
    return out
