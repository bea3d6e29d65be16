"""
Finite groups as explicit multiplication tables.

Elements are the integers ``0..order-1``.  All groups used in this
package are tiny (the dihedral groups D_2p, cyclic groups, small
symmetric groups and their products), so a dense table is the simplest
representation and makes every product O(1).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InvalidInput, InvalidParameter, ResourceLimit
from .linalg import AbelianPresentation, smith_normal_form

MAX_GROUP_ORDER = 2000


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    labels: tuple[str, ...]
    generators: dict = field(default_factory=dict)
    name: str = "G"

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __iter__(self):
        return iter(range(len(self.table)))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def prod(self, *elems: int) -> int:
        out = self.identity
        for e in elems:
            out = self.table[out][e]
        return out

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, g = 1, a
        while g != self.identity:
            g = self.table[g][a]
            k += 1
        return k

    def conj(self, a: int, g: int) -> int:
        """g^-1 a g."""
        return self.table[self.table[self.inverses[g]][a]][g]

    def label(self, a: int) -> str:
        return self.labels[a]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            if label in self.generators:
                return self.generators[label]
            raise InvalidParameter(f"no element labelled {label!r} in {self.name}") from None

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self for b in range(a))


def group_from_table(table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                     generators: Optional[dict] = None, name: str = "G",
                     check: bool = True) -> FiniteGroup:
    n = len(table)
    if n == 0:
        raise InvalidParameter("empty group table")
    if n > MAX_GROUP_ORDER:
        raise ResourceLimit(f"group order {n} exceeds cap {MAX_GROUP_ORDER}")
    t = tuple(tuple(int(v) for v in row) for row in table)
    ident = next((e for e in range(n) if all(t[e][a] == a and t[a][e] == a for a in range(n))),
                 None)
    if ident is None:
        raise InvalidInput("table has no two-sided identity")
    inverses = []
    for a in range(n):
        inv = next((b for b in range(n) if t[a][b] == ident and t[b][a] == ident), None)
        if inv is None:
            raise InvalidInput(f"element {a} has no inverse")
        inverses.append(inv)
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    G = FiniteGroup(t, ident, tuple(inverses), labels, dict(generators or {}), name)
    if check:
        bad = check_group_axioms(G)
        if bad is not None:
            raise InvalidInput(f"table is not associative at {bad}")
    return G


def check_group_axioms(G: FiniteGroup) -> Optional[tuple[int, int, int]]:
    """Return the first non-associative triple, or None if the table is a group."""
    t = G.table
    n = len(t)
    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = t[ta[b]]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return (a, b, c)
    e = G.identity
    for a in range(n):
        if t[a][e] != a or t[e][a] != a:
            return (a, e, e)
        if t[a][G.inverses[a]] != e or t[G.inverses[a]][a] != e:
            return (a, G.inverses[a], e)
    return None


def build_cyclic(p: int) -> FiniteGroup:
    """Z/p with element k labelled by k."""
    if p < 2:
        raise InvalidParameter(f"cyclic group needs p >= 2, got {p}")
    table = [[(i + j) % p for j in range(p)] for i in range(p)]
    return group_from_table(table, labels=[str(i) for i in range(p)],
                            generators={"x": 1 % p}, name=f"Z/{p}", check=False)


def dihedral_element(p: int, eps: int, i: int) -> int:
    """Index of h^eps x^i in build_dihedral(p)."""
    return eps * p + i % p


def build_dihedral(p: int) -> FiniteGroup:
    """
    D_2p = <h, x | h^2 = x^p = hxhx = 1>.

    The element h^e x^i is stored at index ``e*p + i``.
    """
    if p < 3:
        raise InvalidParameter(f"dihedral group needs p >= 3, got {p}")
    n = 2 * p
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        ea, ia = divmod(a, p)
        for b in range(n):
            eb, ib = divmod(b, p)
            # x^i h = h x^-i
            i = (ib + (-ia if eb else ia)) % p
            table[a][b] = ((ea + eb) % 2) * p + i
    labels = []
    for e in range(2):
        for i in range(p):
            xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if e:
                labels.append("h" + (" " + xs if xs else ""))
            else:
                labels.append(xs or "1")
    return group_from_table(table, labels=labels, generators={"h": p, "x": 1},
                            name=f"D_{n}", check=False)


def build_symmetric(n: int) -> FiniteGroup:
    """S_n on permutations of range(n); the product ab means 'a, then b'."""
    if n < 1:
        raise InvalidParameter("symmetric group needs n >= 1")
    perms = list(itertools.permutations(range(n)))
    if len(perms) > MAX_GROUP_ORDER:
        raise ResourceLimit(f"S_{n} exceeds the group order cap")
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(b[a[i]] for i in range(n))] for b in perms] for a in perms]
    labels = ["".join(map(str, p)) for p in perms]
    return group_from_table(table, labels=labels, name=f"S_{n}", check=False)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with (g, h) stored at ``g * |H| + h``."""
    m = H.order
    n = G.order * m
    if n > MAX_GROUP_ORDER:
        raise ResourceLimit("direct product exceeds the group order cap")
    table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(n)]
             for a in range(n)]
    labels = [f"({G.labels[a // m]},{H.labels[a % m]})" for a in range(n)]
    return group_from_table(table, labels=labels, name=f"{G.name}x{H.name}", check=False)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted element list, plus abelian coordinates."""

    group: FiniteGroup = field(repr=False)
    elements: tuple[int, ...]
    is_abelian: bool
    presentation: Optional[AbelianPresentation] = None
    coords: Optional[dict] = field(default=None, repr=False)

    def __contains__(self, g: int) -> bool:
        return g in self._members

    @property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def to_vector(self, g: int) -> tuple[int, ...]:
        if self.coords is None:
            raise InvalidInput("subgroup is not abelian")
        return self.coords[g]

    def from_vector(self, v) -> int:
        if self.coords is None:
            raise InvalidInput("subgroup is not abelian")
        v = self.presentation.reduce(v)
        for g, c in self.coords.items():
            if c == v:
                return g
        raise InvalidInput(f"{v} is not a coordinate vector of this subgroup")


def _generating_set(G: FiniteGroup, elements: Sequence[int]) -> list[int]:
    gens: list[int] = []
    span = {G.identity}
    for g in elements:
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = G.mul(a, s)
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
    return gens


def abelian_presentation(G: FiniteGroup, elements: Sequence[int]):
    """
    Decompose an abelian subgroup into cyclic factors.

    The relation matrix has one column per element and rows
    ``e_s + e_b - e_{sb}`` for s in a generating set; its Smith form gives
    the invariant factors, and row g of the right transform gives the
    coordinates of g.
    """
    elems = sorted(elements)
    pos = {g: k for k, g in enumerate(elems)}
    gens = _generating_set(G, elems)
    rows = []
    for s in gens:
        for b in elems:
            r = [0] * len(elems)
            r[pos[s]] += 1
            r[pos[b]] += 1
            r[pos[G.mul(s, b)]] -= 1
            rows.append(r)
    r = [0] * len(elems)
    r[pos[G.identity]] = 1
    rows.append(r)
    _, D, V = smith_normal_form(rows)
    diag = D.diagonal() + [0] * (len(elems) - min(D.shape))
    keep = [k for k, d in enumerate(diag) if d != 1]
    moduli = tuple(diag[k] for k in keep)
    pres = AbelianPresentation(moduli)
    coords = {g: pres.reduce([V.data[pos[g]][k] for k in keep]) for g in elems}
    return pres, coords


def centralizer(G: FiniteGroup, h: int) -> Subgroup:
    """Z(h) = {g : gh = hg}, with an abelian presentation when abelian."""
    if not 0 <= h < G.order:
        raise InvalidParameter(f"{h} is not an element of {G.name}")
    t = G.table
    elems = tuple(g for g in G if t[g][h] == t[h][g])
    ab = all(t[a][b] == t[b][a] for a in elems for b in elems)
    if ab:
        pres, coords = abelian_presentation(G, elems)
        return Subgroup(G, elems, True, pres, coords)
    return Subgroup(G, elems, False)


def conjugacy_class(G: FiniteGroup, h: int) -> list[int]:
    """Sorted list of the conjugates g^-1 h g."""
    if not 0 <= h < G.order:
        raise InvalidParameter(f"{h} is not an element of {G.name}")
    return sorted({G.conj(h, g) for g in G})
