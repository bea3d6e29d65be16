"""
Finite quandles, the conjugation construction and its section machinery.

A quandle on ``0..m-1`` is stored as two tables: ``op[x][y] = x*y`` and
``inv_op[x][y] = x *^-1 y``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import AssumptionViolated, InvalidInput, InvalidParameter
from .groups import FiniteGroup, Subgroup, centralizer, conjugacy_class
from .linalg import solve_linear_over_abelian


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    op: tuple[tuple[int, ...], ...]
    inv_op: tuple[tuple[int, ...], ...]
    tag: str = "custom"

    @property
    def order(self) -> int:
        return len(self.op)

    def __len__(self) -> int:
        return len(self.op)

    def __iter__(self):
        return iter(range(len(self.op)))

    def __repr__(self) -> str:
        return f"FiniteQuandle({self.tag}, order={self.order})"

    def star(self, x: int, y: int) -> int:
        return self.op[x][y]

    def star_inv(self, x: int, y: int) -> int:
        return self.inv_op[x][y]

    def act(self, x: int, y: int, eps: int = 1) -> int:
        return self.op[x][y] if eps > 0 else self.inv_op[x][y]

    def to_json(self) -> dict:
        return {"order": self.order, "op": [list(r) for r in self.op], "tag": self.tag}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc) -> "FiniteQuandle":
        if isinstance(doc, str):
            doc = json.loads(doc)
        q = quandle_from_table(doc["op"], tag=doc.get("tag", "custom"))
        if "order" in doc and doc["order"] != q.order:
            raise InvalidInput("declared order does not match the table")
        return q


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def _invert_columns(op: Sequence[Sequence[int]]) -> Optional[list[list[int]]]:
    m = len(op)
    inv = [[-1] * m for _ in range(m)]
    for y in range(m):
        for x in range(m):
            z = op[x][y]
            if not 0 <= z < m or inv[z][y] != -1:
                return None
            inv[z][y] = x
    return inv


def quandle_from_table(op: Sequence[Sequence[int]], tag: str = "custom",
                       check: bool = True) -> FiniteQuandle:
    m = len(op)
    if m == 0 or any(len(r) != m for r in op):
        raise InvalidInput("quandle table must be a non-empty square")
    inv = _invert_columns(op)
    if inv is None:
        raise InvalidInput("some right translation *y is not a bijection (Q2)")
    Q = FiniteQuandle(tuple(tuple(int(v) for v in r) for r in op),
                      tuple(tuple(r) for r in inv), tag)
    if check:
        rep = check_quandle_axioms(Q)
        if not rep:
            raise InvalidInput(f"quandle axiom {rep.axiom} fails at {rep.witness}")
    return Q


def check_quandle_axioms(Q) -> AxiomReport:
    """
    Exhaustively check Q1 (idempotence), Q2 (right translations are
    bijections inverted by inv_op) and Q3 (right self-distributivity).

    ``Q`` may also be a raw square table; then Q2 is checked on the table
    alone.
    """
    if isinstance(Q, FiniteQuandle):
        op, inv = Q.op, Q.inv_op
    else:
        op, inv = Q, None
    m = len(op)
    for x in range(m):
        if op[x][x] != x:
            return AxiomReport(False, "Q1", (x,))
    for y in range(m):
        col = [op[x][y] for x in range(m)]
        if sorted(col) != list(range(m)):
            x1 = next(x for x in range(m) if col.count(col[x]) > 1 or not 0 <= col[x] < m)
            return AxiomReport(False, "Q2", (x1, y))
        if inv is not None:
            for x in range(m):
                if inv[op[x][y]][y] != x:
                    return AxiomReport(False, "Q2", (x, y))
    for x in range(m):
        for y in range(m):
            xy = op[x][y]
            for z in range(m):
                if op[xy][z] != op[op[x][z]][op[y][z]]:
                    return AxiomReport(False, "Q3", (x, y, z))
    return AxiomReport(True)


def dihedral_quandle(p: int) -> FiniteQuandle:
    """R_p: Z/p with x*y = 2y - x."""
    if p < 3:
        raise InvalidParameter(f"dihedral quandle needs p >= 3, got {p}")
    op = tuple(tuple((2 * y - x) % p for y in range(p)) for x in range(p))
    return FiniteQuandle(op, op, f"dihedral:{p}")


def trivial_quandle(m: int) -> FiniteQuandle:
    if m < 1:
        raise InvalidParameter("trivial quandle needs m >= 1")
    op = tuple(tuple(x for _ in range(m)) for x in range(m))
    return FiniteQuandle(op, op, f"trivial:{m}")


def inner_action(Q: FiniteQuandle, word: Sequence[tuple[int, int]]) -> list[int]:
    """
    Permutation x -> x*w of a word w = [(y1, e1), (y2, e2), ...] in the
    associated group, applied left to right.
    """
    perm = list(range(Q.order))
    for y, e in word:
        if not 0 <= y < Q.order or e not in (1, -1):
            raise InvalidParameter(f"bad word letter {(y, e)}")
        tab = Q.op if e > 0 else Q.inv_op
        perm = [tab[v][y] for v in perm]
    return perm


def orbit(Q: FiniteQuandle, x: int) -> set[int]:
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for a in frontier:
            for y in Q:
                for b in (Q.op[a][y], Q.inv_op[a][y]):
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
        frontier = nxt
    return seen


def is_connected(Q: FiniteQuandle) -> bool:
    return len(orbit(Q, 0)) == Q.order


def is_faithful(Q: FiniteQuandle) -> bool:
    """Distinct elements act by distinct right translations."""
    cols = {tuple(Q.op[x][y] for x in Q) for y in Q}
    return len(cols) == Q.order


def inner_group(Q: FiniteQuandle) -> list[tuple[int, ...]]:
    """All permutations of Q generated by the right translations *y."""
    ident = tuple(range(Q.order))
    gens = [tuple(Q.op[x][y] for x in Q) for y in Q]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[v] for v in g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(seen)


def automorphisms(Q: FiniteQuandle) -> list[tuple[int, ...]]:
    """All quandle automorphisms, by backtracking (small quandles only)."""
    m = Q.order
    out = []
    img = [-1] * m
    used = [False] * m

    def consistent(k):
        for a in range(k + 1):
            for b in range(k + 1):
                c = Q.op[a][b]
                if c <= k and Q.op[img[a]][img[b]] != img[c]:
                    return False
        return True

    def rec(k):
        if k == m:
            out.append(tuple(img))
            return
        for v in range(m):
            if not used[v]:
                img[k] = v
                used[v] = True
                if consistent(k):
                    rec(k + 1)
                used[v] = False
        img[k] = -1

    rec(0)
    return out


def is_homogeneous(Q: FiniteQuandle) -> bool:
    return len({a[0] for a in automorphisms(Q)}) == Q.order


# ---------------------------------------------------------------------------
# Conjugation quandles and sections


@dataclass(frozen=True, eq=False)
class ConjQuandleContext:
    """
    Data attached to Conj(h) inside G.

    ``elements[x]`` is the group element represented by quandle element x;
    ``section[x]`` is a group element g with g^-1 h g == elements[x];
    ``cocycle[x][y]`` is the element c(x, y) of Z(h) with
    s(x) ~* s(y) == c(x, y) s(x*y).
    """

    group: FiniteGroup
    h: int
    l: int
    elements: tuple[int, ...]
    centralizer: Subgroup = field(repr=False)
    section: tuple[int, ...]
    cocycle: tuple[tuple[int, ...], ...] = field(repr=False)
    corrected: bool
    index: dict = field(default_factory=dict, repr=False)

    def element_of(self, g: int) -> int:
        """Quandle element of Conj(h) equal to the group element g."""
        return self.index[g]

    def coset_class(self, g: int) -> int:
        """Quandle element corresponding to the coset Z(h) g, i.e. g^-1 h g."""
        return self.index[self.group.conj(self.h, g)]

    def rho(self, x: int) -> int:
        return self.elements[x]


def lifted_operation(G: FiniteGroup, h: int, g1: int, g2: int) -> int:
    """g1 ~* g2 = h^-1 g1 (g2^-1 h g2)."""
    return G.prod(G.inv(h), g1, G.inv(g2), h, g2)


def lifted_operation_inv(G: FiniteGroup, h: int, g1: int, g2: int) -> int:
    """g1 ~*^-1 g2 = h g1 g2^-1 h^-1 g2."""
    return G.prod(h, g1, G.inv(g2), G.inv(h), g2)


def _conj_table(G: FiniteGroup, elems: Sequence[int]):
    index = {g: k for k, g in enumerate(elems)}
    op = [[index[G.conj(a, b)] for b in elems] for a in elems]
    inv = [[index[G.conj(a, G.inv(b))] for b in elems] for a in elems]
    return index, op, inv


def section_cocycle(G: FiniteGroup, h: int, elements: Sequence[int], index: dict,
                    op, section: Sequence[int]) -> list[list[int]]:
    """c(x, y) = (s(x) ~* s(y)) s(x*y)^-1, an element of Z(h)."""
    m = len(elements)
    for x in range(m):
        if G.conj(h, section[x]) != elements[x]:
            raise InvalidInput(f"section value {section[x]} is not in the coset of {x}")
    return [[G.mul(lifted_operation(G, h, section[x], section[y]), G.inv(section[op[x][y]]))
             for y in range(m)] for x in range(m)]


def _default_section(G: FiniteGroup, h: int, elements, index) -> list[int]:
    sec = [-1] * len(elements)
    for g in G:  # ascending, so the lowest index of each coset wins
        x = index[G.conj(h, g)]
        if sec[x] < 0:
            sec[x] = g
    return sec


def compute_section(G: FiniteGroup, h: int, initial: Optional[Sequence[int]] = None):
    """
    Find a section s with s(x*y) = s(x) ~* s(y) when one exists.

    Starts from ``initial`` (default: lowest index in each coset), computes
    the Z(h)-valued 2-cocycle c and tries to write c(x, y) = b(x) b(x*y)^-1.
    On success the corrected section b(x)^-1 s(x) is returned.

    Returns
    -------
    (section, cocycle, corrected)
    """
    Z = centralizer(G, h)
    if not Z.is_abelian:
        raise AssumptionViolated(
            f"centralizer of {G.label(h)} in {G.name} is non-abelian")
    elements = conjugacy_class(G, h)
    index, op, _ = _conj_table(G, elements)
    sec = list(initial) if initial is not None else _default_section(G, h, elements, index)
    c = section_cocycle(G, h, elements, index, op, sec)
    m = len(elements)
    ident = G.identity
    if all(v == ident for row in c for v in row):
        return tuple(sec), tuple(tuple(r) for r in c), True
    pres = Z.presentation
    # b(x) - b(x*y) = c(x, y) in additive coordinates of Z(h)
    rows, rhs = [], []
    for x in range(m):
        for y in range(m):
            r = [0] * m
            r[x] += 1
            r[op[x][y]] -= 1
            rows.append(r)
            rhs.append(Z.to_vector(c[x][y]))
    sol = solve_linear_over_abelian(rows, rhs, pres) if pres.rank else [()] * m
    if sol is None:
        return tuple(sec), tuple(tuple(r) for r in c), False
    b = [Z.from_vector(v) for v in sol]
    new = [G.mul(G.inv(b[x]), sec[x]) for x in range(m)]
    c2 = section_cocycle(G, h, elements, index, op, new)
    if any(v != ident for row in c2 for v in row):
        return tuple(sec), tuple(tuple(r) for r in c), False
    return tuple(new), tuple(tuple(r) for r in c2), True


def conj_quandle(G: FiniteGroup, h: int, section: Optional[Sequence[int]] = None):
    """
    Conj(h) with x*y = y^-1 x y, indexed by the sorted conjugacy class.

    Returns
    -------
    (FiniteQuandle, ConjQuandleContext)
    """
    elements = conjugacy_class(G, h)
    index, op, inv = _conj_table(G, elements)
    Q = FiniteQuandle(tuple(map(tuple, op)), tuple(map(tuple, inv)),
                      f"conj:{G.name}:{G.label(h)}")
    Z = centralizer(G, h)
    if Z.is_abelian:
        sec, c, corrected = compute_section(G, h, initial=section)
    else:
        sec = list(section) if section is not None else _default_section(G, h, elements, index)
        c = section_cocycle(G, h, elements, index, op, sec)
        corrected = False
    ctx = ConjQuandleContext(G, h, G.element_order(h), tuple(elements), Z, tuple(sec),
                             tuple(tuple(r) for r in c), corrected, index)
    return Q, ctx


def dihedral_identification(ctx: ConjQuandleContext, p: int) -> list[int]:
    """
    For Conj(h) in D_2p: position i holds the quandle index of x^-i h x^i,
    which identifies R_p with Conj(h).
    """
    G, h = ctx.group, ctx.h
    x = G.generators["x"]
    return [ctx.element_of(G.conj(h, G.power(x, i))) for i in range(p)]
