"""
Knot diagrams from PD codes, arc and region colorings, shadow cycles and
the shadow cocycle invariant.

PD convention: ``X[a,b,c,d]`` lists the four edges at a crossing
counterclockwise, starting with the incoming under-edge.  Edge labels are
arbitrary hashables; orientation is recovered by walking the knot.

Coloring convention.  Across an oriented arc colored y, the region on the
right equals the region on the left acted on by y.  Hence at a negative
crossing under-out = under-in * over, and at a positive crossing
under-in = under-out * over.  The crossing term of the shadow cycle is
eps * r (x) (x, y) where y is the over color, x the color of the under-arc
on the left of the over-arc, and r the region to the left of both.  Crossing
signs follow the usual right-hand rule (the KnotAtlas convention).
"""
from __future__ import annotations

import json
import re
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence

from .chains import FormalChain, Cochain
from .errors import InternalError, InvalidInput, InvalidParameter, ParseError
from .grouprings import GroupRingValue
from .quandles import FiniteQuandle, is_connected

_X_RE = re.compile(r"X\s*\[\s*([^\]]*)\]")


@dataclass(frozen=True)
class Crossing:
    labels: tuple
    sign: int
    over_in_slot: int  # 1 or 3

    @property
    def under_in(self):
        return self.labels[0]

    @property
    def under_out(self):
        return self.labels[2]

    @property
    def over_in(self):
        return self.labels[self.over_in_slot]

    @property
    def over_out(self):
        return self.labels[4 - self.over_in_slot]


@dataclass(eq=False)
class KnotDiagram:
    pd: tuple
    crossings: list
    edges: list                      # edge labels in traversal order
    head: dict                       # edge -> (crossing, slot) where it arrives
    tail: dict                       # edge -> (crossing, slot) where it leaves
    arc_of_edge: dict
    n_arcs: int
    regions: list                    # list of corner lists
    corner_region: dict
    edge_left: dict
    edge_right: dict
    name: str = "diagram"
    # per crossing: (i, j, k) arcs with x_k = x_i * x_j, the x-arc, the source region
    relations: list = field(default_factory=list)
    x_arc: list = field(default_factory=list)
    source_region: list = field(default_factory=list)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_regions(self) -> int:
        return len(self.regions)

    def euler_characteristic(self) -> int:
        n = self.n_crossings
        if n == 0:
            return 2
        return n - 2 * n + self.n_regions

    @property
    def signs(self) -> list[int]:
        return [c.sign for c in self.crossings]

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def over_arc(self, c: int) -> int:
        return self.relations[c][1]

    def to_pd_text(self) -> str:
        return " ".join("X[" + ",".join(str(v) for v in c) + "]" for c in self.pd)

    def __repr__(self) -> str:
        return (f"KnotDiagram({self.name}: {self.n_crossings} crossings, {self.n_arcs} arcs, "
                f"{self.n_regions} regions)")


# ---------------------------------------------------------------------------
# parsing


def parse_pd(text, name: str = "diagram") -> KnotDiagram:
    """
    Parse ``X[a,b,c,d] ...`` text, a JSON array of 4-lists, or a list of
    4-tuples.  An empty code or the word ``unknot`` gives the crossingless
    unknot.
    """
    if isinstance(text, (list, tuple)):
        tuples = [tuple(t) for t in text]
    else:
        s = text.strip()
        lines = [ln for ln in s.splitlines() if not ln.lstrip().startswith("#")]
        s = "\n".join(lines).strip()
        if s.lower() in ("", "unknot", "[]"):
            tuples = []
        elif s.startswith("["):
            try:
                tuples = [tuple(t) for t in json.loads(s)]
            except (ValueError, TypeError) as exc:
                raise ParseError(f"bad JSON PD code: {exc}") from None
        else:
            found = _X_RE.findall(s)
            rest = _X_RE.sub("", s).replace(",", " ").strip()
            if rest or not found:
                raise ParseError(f"unrecognised PD text near {rest[:30]!r}")
            tuples = []
            for body in found:
                parts = [v for v in re.split(r"[\s,]+", body.strip()) if v]
                try:
                    tuples.append(tuple(int(v) for v in parts))
                except ValueError:
                    raise ParseError(f"non-integer label in X[{body}]") from None
    for k, t in enumerate(tuples):
        if len(t) != 4:
            raise ParseError(f"crossing {k} has {len(t)} entries, expected 4")
    return build_diagram(tuples, name)


def build_diagram(pd: Sequence[tuple], name: str = "diagram") -> KnotDiagram:
    pd = tuple(tuple(c) for c in pd)
    if not pd:
        return _unknot(name)
    occ: dict = defaultdict(list)
    for c, t in enumerate(pd):
        for p, lab in enumerate(t):
            occ[lab].append((c, p))
    for lab, places in occ.items():
        if len(places) != 2:
            c = places[0][0]
            raise ParseError(f"edge {lab} appears {len(places)} times (crossing {c})")

    def other(lab, here):
        a, b = occ[lab]
        return b if a == here else a

    # walk the knot starting on the incoming under-edge of crossing 0
    head, tail = {}, {}
    order = []
    e = pd[0][0]
    at = (0, 0)
    visited_slots = set()
    while True:
        if e in head:
            break
        head[e] = at
        order.append(e)
        c, p = at
        if p == 2:
            raise ParseError(f"crossing {c}: under-strand arrives on the outgoing slot")
        visited_slots.add(at)
        out = (c, (p + 2) % 4)
        visited_slots.add(out)
        e = pd[c][out[1]]
        tail[e] = out
        at = other(e, out)
    if e != pd[0][0] or len(order) != len(occ):
        raise ParseError("PD code has more than one component (links are not supported)")
    crossings = []
    for c, t in enumerate(pd):
        h1 = head.get(t[1]) == (c, 1)
        h3 = head.get(t[3]) == (c, 3)
        if h1 == h3:
            raise ParseError(f"crossing {c}: over-strand orientation is inconsistent")
        if head[t[0]] != (c, 0):
            raise ParseError(f"crossing {c}: first entry is not the incoming under-edge")
        over_in = 3 if h3 else 1
        crossings.append(Crossing(t, +1 if over_in == 3 else -1, over_in))

    # arcs: a new arc starts after each under-crossing
    start = order.index(pd[0][2])
    arc_of_edge = {}
    arc = -1
    for k in range(len(order)):
        e = order[(start + k) % len(order)]
        if tail[e][1] == 2:
            arc += 1
        arc_of_edge[e] = arc
    n_arcs = arc + 1

    # faces
    corner_region = {}
    regions = []
    for c in range(len(pd)):
        for p in range(4):
            if (c, p) in corner_region:
                continue
            face = []
            cur = (c, p)
            while cur not in corner_region:
                corner_region[cur] = len(regions)
                face.append(cur)
                cc, pp = cur
                slot = (cc, (pp + 1) % 4)
                cur = other(pd[cc][slot[1]], slot)
            if cur != (c, p):
                raise ParseError(f"face tracing did not close at crossing {c}")
            regions.append(face)
    n = len(pd)
    if n - 2 * n + len(regions) != 2:
        raise ParseError(f"PD code is not planar: V - E + F = {n - 2 * n + len(regions)}")
    edge_left, edge_right = {}, {}
    for e in order:
        c, p = head[e]
        edge_right[e] = corner_region[(c, p)]
        edge_left[e] = corner_region[(c, (p - 1) % 4)]
    D = KnotDiagram(pd, crossings, order, head, tail, arc_of_edge, n_arcs, regions,
                    corner_region, edge_left, edge_right, name)
    for c, cr in enumerate(crossings):
        a_in = arc_of_edge[cr.under_in]
        a_out = arc_of_edge[cr.under_out]
        a_over = arc_of_edge[cr.over_in]
        if arc_of_edge[cr.over_out] != a_over:
            raise InternalError("over-strand split into two arcs")
        if cr.sign > 0:
            D.relations.append((a_out, a_over, a_in))
            D.x_arc.append(a_out)
            D.source_region.append(corner_region[(c, 2)])
        else:
            D.relations.append((a_in, a_over, a_out))
            D.x_arc.append(a_in)
            D.source_region.append(corner_region[(c, 3)])
    return D


def _unknot(name: str) -> KnotDiagram:
    # one edge, one arc, two regions: 0 on the right, 1 on the left
    return KnotDiagram((), [], [1], {}, {}, {1: 0}, 1, [[], []], {}, {1: 1}, {1: 0}, name)


def reflect(D: KnotDiagram) -> KnotDiagram:
    """Planar mirror image: every crossing changes sign."""
    return build_diagram([(a, d, c, b) for a, b, c, d in D.pd], D.name + "*")


def renumber(D: KnotDiagram, name: Optional[str] = None) -> KnotDiagram:
    """Relabel edges 1..2n along the orientation, starting at the first under-edge."""
    if not D.pd:
        return D
    new = {e: k + 1 for k, e in enumerate(D.edges)}
    return build_diagram([tuple(new[v] for v in t) for t in D.pd], name or D.name)


# ---------------------------------------------------------------------------
# built-in diagrams and moves


def torus_2p(p: int, positive: bool = True) -> KnotDiagram:
    """
    Standard diagram of the (2, p) torus knot (p odd).  By default all
    crossings are positive, matching the built-in trefoil.
    """
    if p < 3 or p % 2 == 0:
        raise InvalidParameter("(2, p) torus knot needs odd p >= 3")
    m = 2 * p
    under = {}
    over = {}
    for visit in range(1, m + 1):
        c = (visit - 1) % p
        (under if visit % 2 else over)[c] = visit

    def lab(k):
        return (k - 1) % m + 1

    pd = []
    for c in range(p):
        u, v = under[c], over[c]
        if positive:
            pd.append((lab(u - 1), lab(v), lab(u), lab(v - 1)))
        else:
            pd.append((lab(u - 1), lab(v - 1), lab(u), lab(v)))
    return build_diagram(pd, f"T(2,{p})")


def r1_move(D: KnotDiagram, edge, variant: int = 0) -> KnotDiagram:
    """Add a curl on ``edge``; variants 0..3 cover both signs and both sides."""
    if not D.pd:
        raise InvalidParameter("R1 on the crossingless unknot is not supported")
    if edge not in D.head:
        raise InvalidParameter(f"no edge {edge!r}")
    e1, e2, f = ("r1", edge, "a"), ("r1", edge, "b"), ("r1", edge, "f")
    kink = [(e1, f, f, e2), (e1, e2, f, f), (f, f, e2, e1), (f, e1, e2, f)][variant % 4]
    pd = [list(t) for t in D.pd]
    tc, tp = D.tail[edge]
    hc, hp = D.head[edge]
    pd[tc][tp] = e1
    pd[hc][hp] = e2
    return renumber(build_diagram([tuple(t) for t in pd] + [kink], D.name), D.name + "+R1")


def r2_move(D: KnotDiagram, over_edge, under_edge, region: int) -> KnotDiagram:
    """
    Push a finger of ``over_edge`` across ``under_edge`` inside ``region``
    (a face bordered by both), creating two crossings.
    """
    if over_edge == under_edge:
        raise InvalidParameter("R2 needs two different edges")
    for e in (over_edge, under_edge):
        if e not in D.head:
            raise InvalidParameter(f"no edge {e!r}")
        if region not in (D.edge_left[e], D.edge_right[e]):
            raise InvalidParameter(f"edge {e!r} does not border region {region}")
    e, u = over_edge, under_edge
    ea, em, eb = ("r2o", e, 0), ("r2o", e, 1), ("r2o", e, 2)
    ua, um, ub = ("r2u", u, 0), ("r2u", u, 1), ("r2u", u, 2)
    left_of_u = D.edge_left[u] == region
    right_of_e = D.edge_right[e] == region
    if left_of_u:
        if right_of_e:
            W, E = (ua, em, um, ea), (um, em, ub, eb)
        else:
            W, E = (ua, em, um, eb), (um, em, ub, ea)
    else:
        if right_of_e:
            W, E = (ua, eb, um, em), (um, ea, ub, em)
        else:
            W, E = (ua, ea, um, em), (um, eb, ub, em)
    pd = [list(t) for t in D.pd]
    for lab, first, last in ((e, ea, eb), (u, ua, ub)):
        tc, tp = D.tail[lab]
        hc, hp = D.head[lab]
        pd[tc][tp] = first
        pd[hc][hp] = last
    return renumber(build_diagram([tuple(t) for t in pd] + [W, E], D.name), D.name + "+R2")


_BUILTIN_FILES = {
    "unknot": "unknot.pd",
    "trefoil": "trefoil.pd",
    "trefoil-r2": "trefoil_r2.pd",
    "trefoil-left": "trefoil_left.pd",
    "figure8": "figure8.pd",
    "figure8-r2": "figure8_r2.pd",
}


def builtin_diagram(name: str) -> KnotDiagram:
    """Built-in diagrams: the names above or ``torus:p``."""
    key = name.lower().replace("_", "-")
    if key.startswith("torus:"):
        try:
            return torus_2p(int(key.split(":", 1)[1]))
        except ValueError:
            raise ParseError(f"bad torus spec {name!r}") from None
    if key in ("fig8", "figure-eight"):
        key = "figure8"
    if key not in _BUILTIN_FILES:
        raise ParseError(f"unknown built-in diagram {name!r}")
    text = resources.files("quandlekit.data").joinpath(_BUILTIN_FILES[key]).read_text()
    return parse_pd(text, key)


# ---------------------------------------------------------------------------
# colorings


def _check_arc_coloring(D: KnotDiagram, Q: FiniteQuandle, colors) -> bool:
    op = Q.op
    return all(op[colors[i]][colors[j]] == colors[k] for i, j, k in D.relations)


def _extend(D: KnotDiagram, Q: FiniteQuandle, colors: list, out: list):
    """Propagate forced values, then branch on the lowest unassigned arc."""
    op, inv = Q.op, Q.inv_op
    colors = list(colors)
    changed = True
    while changed:
        changed = False
        for i, j, k in D.relations:
            ci, cj, ck = colors[i], colors[j], colors[k]
            if cj is None:
                continue
            if ci is not None:
                v = op[ci][cj]
                if ck is None:
                    colors[k] = v
                    changed = True
                elif ck != v:
                    return
            elif ck is not None:
                colors[i] = inv[ck][cj]
                changed = True
    try:
        nxt = colors.index(None)
    except ValueError:
        if _check_arc_coloring(D, Q, colors):
            out.append(tuple(colors))
        return
    for v in range(Q.order):
        colors[nxt] = v
        _extend(D, Q, colors, out)
    colors[nxt] = None


def _colorings_with_prefix(args):
    D, Q, first = args
    out: list = []
    colors = [None] * D.n_arcs
    colors[0] = first
    _extend(D, Q, colors, out)
    return out


def enumerate_arc_colorings(D: KnotDiagram, Q: FiniteQuandle, workers: int = 1) -> list:
    """
    All arc colorings as tuples indexed by arc, in lexicographic order.
    With ``workers > 1`` the branches on the color of arc 0 are spread
    over processes; the result is identical.
    """
    jobs = [(D, Q, v) for v in range(Q.order)]
    if workers > 1 and Q.order > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_colorings_with_prefix, jobs))
    else:
        parts = [_colorings_with_prefix(j) for j in jobs]
    return sorted(set(c for part in parts for c in part))


def complete_region_coloring(D: KnotDiagram, Q: FiniteQuandle, arcs: Sequence[int],
                             seed_region: int = 0, seed_color: int = 0) -> tuple:
    """Region colors from one seed, using right = left * (arc color)."""
    if not 0 <= seed_region < D.n_regions or not 0 <= seed_color < Q.order:
        raise InvalidParameter("region seed out of range")
    colors: list = [None] * D.n_regions
    colors[seed_region] = seed_color
    adj = defaultdict(list)
    for e in D.edges:
        y = arcs[D.arc_of_edge[e]]
        L, R = D.edge_left[e], D.edge_right[e]
        adj[L].append((R, y, 1))
        adj[R].append((L, y, -1))
    stack = [seed_region]
    while stack:
        a = stack.pop()
        for b, y, eps in adj[a]:
            v = Q.act(colors[a], y, eps)
            if colors[b] is None:
                colors[b] = v
                stack.append(b)
            elif colors[b] != v:
                raise InternalError(f"region coloring inconsistent at region {b}")
    if any(c is None for c in colors):
        raise InternalError("region adjacency graph is disconnected")
    return tuple(colors)


@dataclass(frozen=True)
class ShadowColoring:
    arcs: tuple
    regions: tuple

    def to_json(self) -> dict:
        return {"arcs": list(self.arcs), "regions": list(self.regions)}


def is_shadow_coloring(D: KnotDiagram, Q: FiniteQuandle, S: ShadowColoring) -> bool:
    if not _check_arc_coloring(D, Q, S.arcs):
        return False
    for e in D.edges:
        y = S.arcs[D.arc_of_edge[e]]
        if S.regions[D.edge_right[e]] != Q.op[S.regions[D.edge_left[e]]][y]:
            return False
    return True


def act_on_shadow(Q: FiniteQuandle, S: ShadowColoring, a: int) -> ShadowColoring:
    op = Q.op
    return ShadowColoring(tuple(op[v][a] for v in S.arcs), tuple(op[v][a] for v in S.regions))


def shadow_cycle(D: KnotDiagram, S: ShadowColoring) -> FormalChain:
    """sum over crossings of eps_c r_c (x) (x_c, y_c) in C^Q_2(X; Z[X])."""
    terms: dict = defaultdict(int)
    for c, cr in enumerate(D.crossings):
        x = S.arcs[D.x_arc[c]]
        y = S.arcs[D.relations[c][1]]
        if x == y:
            continue
        terms[(S.regions[D.source_region[c]], x, y)] += cr.sign
    return FormalChain("quandle", 2, terms)


def evaluate_cocycle_on_cycle(f: Cochain, C: FormalChain) -> int:
    """<f, C> for a region-argument cocycle f(r, x, y)."""
    tot = 0
    for (r, x, y), c in C.terms.items():
        tot += c * f.values.get((r, x, y), 0)
    return tot % f.modulus if f.modulus else tot


def shadow_colorings(D: KnotDiagram, Q: FiniteQuandle, all_regions: bool = False,
                     workers: int = 1) -> list[ShadowColoring]:
    """One shadow coloring per arc coloring (region 0 colored 0), or all of them."""
    out = []
    for A in enumerate_arc_colorings(D, Q, workers):
        seeds = range(Q.order) if all_regions else (0,)
        for s in seeds:
            out.append(ShadowColoring(A, complete_region_coloring(D, Q, A, 0, s)))
    return out


@dataclass
class InvariantResult:
    value: GroupRingValue
    colorings: int
    per_coloring: list
    normalized_by: int

    def to_json(self) -> dict:
        return {"invariant": self.value.to_json(), "pretty": self.value.pretty(),
                "colorings": self.colorings, "normalized_by": self.normalized_by,
                "per_coloring": self.per_coloring}


def shadow_cocycle_invariant(D: KnotDiagram, Q: FiniteQuandle, f: Cochain,
                             workers: int = 1, detail: bool = False):
    """
    (1/|X|) sum over shadow colorings of t^<f, C(S)> in Z[Z/m].  For a
    connected quandle one region coloring per arc coloring suffices.
    """
    if f.modulus < 1:
        raise InvalidParameter("the invariant needs a finite coefficient group")
    arcs = enumerate_arc_colorings(D, Q, workers)
    conn = is_connected(Q)
    exps = []
    per = []
    for A in arcs:
        seeds = (0,) if conn else range(Q.order)
        vals = []
        for s in seeds:
            S = ShadowColoring(A, complete_region_coloring(D, Q, A, 0, s))
            vals.append(evaluate_cocycle_on_cycle(f, shadow_cycle(D, S)))
        exps.extend(vals)
        per.append({"arcs": list(A), "values": vals})
    total = GroupRingValue.from_exponents(f.modulus, exps)
    norm = 1 if conn else Q.order
    value = total.exact_div(norm) if norm > 1 else total
    if detail:
        return InvariantResult(value, len(arcs), per, norm)
    return value
