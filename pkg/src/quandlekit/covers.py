"""
Knot group presentations, cyclic (branched) cover presentations, group
3-cycles attached to shadow colorings, and Dijkgraaf-Witten values of
lens spaces.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .chains import (Cochain, FormalChain, HomogeneousCochain, group_boundary, hom_to_inhom,
                     normalize)
from .cocycles import b1b2_homogeneous, phi, transfer_d2p
from .errors import AssumptionViolated, InternalError, InvalidParameter
from .groups import FiniteGroup
from .grouprings import GroupRingValue
from .knots import (KnotDiagram, ShadowColoring, act_on_shadow, complete_region_coloring,
                    enumerate_arc_colorings, shadow_cycle)
from .linalg import AbelianPresentation, smith_invariants
from .quandles import ConjQuandleContext, FiniteQuandle

Word = tuple[tuple[int, int], ...]  # ((generator, +1 | -1), ...)


# ---------------------------------------------------------------------------
# presentations


@dataclass
class GroupPresentation:
    generators: list[str]
    relators: list[Word]
    grid: dict = field(default_factory=dict)  # (arc, sheet) -> generator index for covers

    def __post_init__(self):
        n = len(self.generators)
        for w in self.relators:
            for g, e in w:
                if not 0 <= g < n or e not in (1, -1):
                    raise InvalidParameter(f"relator letter {(g, e)} is not a declared generator")

    def word_text(self, w: Word) -> str:
        if not w:
            return "1"
        return " ".join(self.generators[g] + ("" if e == 1 else "^-1") for g, e in w)

    def exponent_matrix(self) -> list[dict]:
        rows = []
        for w in self.relators:
            r: dict = defaultdict(int)
            for g, e in w:
                r[g] += e
            rows.append({g: v for g, v in r.items() if v})
        return rows

    def abelianization(self) -> "AbelianGroup":
        inv = smith_invariants(self.exponent_matrix(), len(self.generators))
        torsion = tuple(abs(v) for v in inv if abs(v) != 1)
        return AbelianGroup(len(self.generators) - len(inv), torsion)

    def evaluate(self, w: Word, G: FiniteGroup, values: Sequence[int]) -> int:
        out = G.identity
        for g, e in w:
            out = G.mul(out, values[g] if e == 1 else G.inv(values[g]))
        return out

    def to_json(self) -> dict:
        return {"generators": list(self.generators),
                "relators": [self.word_text(w) for w in self.relators]}


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/t1 + ... with t1 | t2 | ..."""

    free_rank: int
    torsion: tuple[int, ...]

    @property
    def presentation(self) -> AbelianPresentation:
        return AbelianPresentation(self.torsion + (0,) * self.free_rank)

    def order(self) -> int:
        return self.presentation.order()

    def pretty(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion),
                "pretty": self.pretty()}


def _conj_relator(i: int, j: int, k: int) -> Word:
    # x_k^-1 x_j^-1 x_i x_j
    return ((k, -1), (j, -1), (i, 1), (j, 1))


def wirtinger(D: KnotDiagram) -> GroupPresentation:
    """One generator per arc and one relation x_k = x_j^-1 x_i x_j per crossing."""
    gens = [f"x{a + 1}" for a in range(D.n_arcs)]
    return GroupPresentation(gens, [_conj_relator(i, j, k) for i, j, k in D.relations])


def cyclic_cover_presentation(D: KnotDiagram, l: int, branched: bool = False) -> GroupPresentation:
    """
    Generators x_{i,s} (arc i, sheet s mod l) with
    x_{k,s} = x_{j,s-1}^-1 x_{i,s-1} x_{j,s} for each crossing, and
    x_{1,s} = 1 for s <= l-2 (also s = l-1 when ``branched``).
    Arc 0 plays the role of x_1.
    """
    if l < 2:
        raise InvalidParameter(f"cover fold must be at least 2, got {l}")
    n = D.n_arcs
    grid = {(i, s): s * n + i for s in range(l) for i in range(n)}
    gens = [f"x{i + 1}_{s}" for s in range(l) for i in range(n)]
    rels: list[Word] = []
    for s in range(l):
        t = (s - 1) % l
        for i, j, k in D.relations:
            rels.append(((grid[k, s], -1), (grid[j, t], -1), (grid[i, t], 1), (grid[j, s], 1)))
    last = l if branched else l - 1
    for s in range(last):
        rels.append(((grid[0, s], 1),))
    return GroupPresentation(gens, rels, grid)


@dataclass
class CoverRepresentation:
    group: FiniteGroup
    l: int
    values: dict  # (arc, sheet) -> group element
    branched: bool

    def to_json(self) -> dict:
        G = self.group
        return {"fold": self.l, "branched": self.branched,
                "values": [[a, s, G.label(g)] for (a, s), g in sorted(self.values.items())]}


def restrict_representation(D: KnotDiagram, ctx: ConjQuandleContext, arcs: Sequence[int],
                            l: int) -> CoverRepresentation:
    """
    rho(x_{i,s}) = a^(s-1) rho(x_i) a^-s with a = rho(x_1), for an arc
    coloring by Conj(h).  Needs a^l = 1.
    """
    if l < 2:
        raise InvalidParameter(f"cover fold must be at least 2, got {l}")
    G = ctx.group
    rho = [ctx.elements[c] for c in arcs]
    a = rho[0] if rho else G.identity
    if G.power(a, l) != G.identity:
        raise AssumptionViolated("rho(x_1)^l is not trivial, no representation of the cover")
    vals = {(i, s): G.prod(G.power(a, s - 1), rho[i], G.power(a, -s))
            for s in range(l) for i in range(len(rho))}
    P = cyclic_cover_presentation(D, l, branched=True)
    flat = [0] * len(P.generators)
    for key, g in vals.items():
        flat[P.grid[key]] = g
    for w in P.relators:
        if P.evaluate(w, G, flat) != G.identity:
            raise InternalError(f"lifted relation {P.word_text(w)} fails")
    return CoverRepresentation(G, l, vals, True)


# ---------------------------------------------------------------------------
# the cycle attached to a shadow coloring


def branched_cover_cycle(D: KnotDiagram, Q: FiniteQuandle, ctx: ConjQuandleContext,
                         S: ShadowColoring, a: int, q: int = 0,
                         l: Optional[int] = None) -> FormalChain:
    """
    sum_{k<l} iota phi(C(S * a^k)) as a homogeneous group 3-chain, where
    iota sends (x0, ..., x3) to (s(x0), ..., s(x3)).
    """
    if not ctx.corrected:
        raise AssumptionViolated("the section does not intertwine the lifted operation")
    if a not in S.arcs:
        raise InvalidParameter(f"{a} is not the color of an arc")
    l = ctx.l if l is None else l
    G = ctx.group
    if G.power(ctx.h, l) != G.identity:
        raise InvalidParameter(f"h^{l} is not trivial")
    sec = ctx.section
    out: dict = defaultdict(int)
    Sk = S
    for _ in range(l):
        for t, c in phi(shadow_cycle(D, Sk), Q, q).terms.items():
            out[tuple(sec[x] for x in t)] += c
        Sk = act_on_shadow(Q, Sk, a)
    return FormalChain("group-hom", 3, out)


def cycle_defect(C: FormalChain, G: FiniteGroup) -> FormalChain:
    """Boundary of a homogeneous chain, modulo left translation and degeneracies."""
    return normalize(hom_to_inhom(group_boundary(C, G), G), G)


def is_group_cycle(C: FormalChain, G: FiniteGroup) -> bool:
    return not cycle_defect(C, G).terms


def evaluate_group_cocycle(f: HomogeneousCochain, C: FormalChain) -> int:
    """sum of coefficient * f(tuple) over a homogeneous chain."""
    if C.tag != "group-hom":
        raise InvalidParameter("expected a homogeneous group chain")
    return f.pair(C)


def branched_cover_invariant(D: KnotDiagram, Q: FiniteQuandle, ctx: ConjQuandleContext,
                             f: HomogeneousCochain, q: int = 0, seed_color: int = 0,
                             workers: int = 1, l: Optional[int] = None) -> GroupRingValue:
    """
    sum over arc colorings (region 0 seeded with ``seed_color``) of
    t^<f, cycle>, with a the color of arc 0.
    """
    if not f.modulus:
        raise InvalidParameter("need a finite coefficient group")
    exps = []
    for A in enumerate_arc_colorings(D, Q, workers):
        S = ShadowColoring(A, complete_region_coloring(D, Q, A, 0, seed_color))
        C = branched_cover_cycle(D, Q, ctx, S, A[0], q, l) if A else FormalChain("group-hom", 3)
        exps.append(evaluate_group_cocycle(f, C))
    return GroupRingValue.from_exponents(f.modulus, exps)


def restrict_to_rotations(f: HomogeneousCochain, p: int) -> HomogeneousCochain:
    """Restriction of a D_2p cochain to the subgroup Z/p = <x>."""
    if f.size != 2 * p:
        raise InvalidParameter("cochain is not defined on D_2p")
    return HomogeneousCochain(p, f.degree, lambda *xs: f.table[xs], f.modulus)


# ---------------------------------------------------------------------------
# lens spaces


@dataclass
class DWResult:
    p: int
    q: int
    value: GroupRingValue
    closed_form: Optional[GroupRingValue]

    @property
    def agree(self) -> Optional[bool]:
        return None if self.closed_form is None else self.value == self.closed_form

    def to_json(self) -> dict:
        return {"lens": [self.p, self.q], "triangulation": self.value.to_json(),
                "closed_form": None if self.closed_form is None else self.closed_form.to_json(),
                "agree": self.agree}


def _inhom_function(f, p: int) -> Callable:
    if isinstance(f, HomogeneousCochain):
        if f.size != p:
            raise InvalidParameter("cochain is not defined on Z/p")
        tab = f.table
        return lambda x, y, z: tab[(0, x, (x + y) % p, (x + y + z) % p)]
    if isinstance(f, Cochain):
        vals = f.values
        return lambda x, y, z: vals.get((x, y, z), 0)
    return f


def dw_closed_form(p: int, q: int, factor: int = 1) -> GroupRingValue:
    """sum_a t^(-factor q a^2)."""
    return GroupRingValue.from_exponents(p, (-factor * q * a * a for a in range(p)))


def dw_lens(p: int, q: int, f: Union[HomogeneousCochain, Cochain, Callable, None] = None,
            b: int = 0) -> DWResult:
    """
    Dijkgraaf-Witten value of L(p, q) for a 3-cocycle of Z/p, summed over
    the p representations a.  Each contributes
    sum_i f[a | i a + b | -q a].  With ``f`` omitted, f = b1 u b2 and the
    closed form sum_a t^(-q a^2) is returned alongside.
    """
    if p < 3:
        raise InvalidParameter(f"need p >= 3, got {p}")
    closed = None
    if f is None:
        f = b1b2_homogeneous(p)
        closed = dw_closed_form(p, q)
    modulus = getattr(f, "modulus", p) or p
    fn = _inhom_function(f, p)
    exps = []
    for a in range(p):
        exps.append(sum(fn(a, (i * a + b) % p, (-q * a) % p) for i in range(p)))
    return DWResult(p, q % p, GroupRingValue.from_exponents(modulus, exps), closed)


@dataclass
class Comparison:
    p: int
    shadow: GroupRingValue
    dw: GroupRingValue
    constant: Optional[int]

    @property
    def match(self) -> bool:
        return self.constant == self.p

    def to_json(self) -> dict:
        return {"p": self.p, "shadow": self.shadow.to_json(), "dw": self.dw.to_json(),
                "constant": self.constant, "match": self.match}


def torus_lens_comparison(p: int, workers: int = 1) -> Comparison:
    """Shadow invariant of the (2, p)-torus knot with theta_p against DW of L(p, 1)."""
    from .cocycles import theta
    from .knots import shadow_cocycle_invariant, torus_2p
    from .quandles import dihedral_quandle
    if p < 3 or p % 2 == 0:
        raise InvalidParameter(f"comparison needs odd p >= 3, got {p}")
    shadow = shadow_cocycle_invariant(torus_2p(p), dihedral_quandle(p), theta(p), workers)
    dw = dw_lens(p, 1)
    return Comparison(p, shadow, dw.value, shadow.ratio_to(dw.value))


def transfer_cocycle(p: int) -> tuple[FiniteGroup, HomogeneousCochain]:
    """transfer(b1 u b2) on D_2p."""
    return transfer_d2p(b1b2_homogeneous(p), p)


__all__ = [
    "GroupPresentation", "AbelianGroup", "wirtinger", "cyclic_cover_presentation",
    "CoverRepresentation", "restrict_representation", "branched_cover_cycle", "cycle_defect",
    "is_group_cycle", "evaluate_group_cocycle", "branched_cover_invariant",
    "restrict_to_rotations", "DWResult", "dw_closed_form", "dw_lens", "Comparison",
    "torus_lens_comparison", "transfer_cocycle",
]
