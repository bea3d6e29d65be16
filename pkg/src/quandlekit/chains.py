"""
Formal chains, boundary operators, cochains and homology.

Label conventions by complex tag::

    group-inhom   (g1, ..., gn)              bar notation [g1|...|gn]
                  (g, g1, ..., gn)           same, with a Z[G] coefficient g
    group-hom     (g0, ..., gn)
    rack/quandle  (y, x1, ..., xn)           y is None for trivial coefficients
    delta         (x0, ..., xn)
"""
from __future__ import annotations

import itertools
import json
import os
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import InvalidInput, InvalidParameter, ResourceLimit
from .groups import FiniteGroup
from .linalg import cyclic, rank_mod_p, smith_invariants, solve_linear_over_abelian
from .quandles import FiniteQuandle

TAGS = ("group-inhom", "group-hom", "rack", "quandle", "delta")

DEFAULT_SIZE_CAP = 2_000_000
SIZE_CAP_ENV = "QUANDLEKIT_SIZE_CAP"


def size_cap() -> int:
    v = os.environ.get(SIZE_CAP_ENV)
    return int(v) if v else DEFAULT_SIZE_CAP


class FormalChain:
    """Integer combination of labelled tuples in one complex and degree."""

    __slots__ = ("tag", "degree", "terms", "zg")

    def __init__(self, tag: str, degree: int, terms: Mapping | Iterable = (), zg: bool = False):
        if tag not in TAGS:
            raise InvalidParameter(f"unknown complex tag {tag!r}")
        self.tag = tag
        self.degree = degree
        self.zg = zg
        acc: dict = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else ((lab, c) for c, lab in terms)
        for lab, c in items:
            acc[tuple(lab)] += c
        self.terms = {lab: c for lab, c in acc.items() if c}

    @classmethod
    def single(cls, tag: str, label: Sequence, coeff: int = 1, zg: bool = False) -> "FormalChain":
        return cls(tag, _degree_of(tag, len(label), zg), {tuple(label): coeff}, zg)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def _like(self, terms) -> "FormalChain":
        return FormalChain(self.tag, self.degree, terms, self.zg)

    def _check(self, other: "FormalChain"):
        if (self.tag, self.degree, self.zg) != (other.tag, other.degree, other.zg):
            raise InvalidParameter("chains live in different complexes or degrees")

    def __add__(self, other: "FormalChain") -> "FormalChain":
        self._check(other)
        t = dict(self.terms)
        for lab, c in other.terms.items():
            t[lab] = t.get(lab, 0) + c
        return self._like(t)

    def __neg__(self) -> "FormalChain":
        return self._like({lab: -c for lab, c in self.terms.items()})

    def __sub__(self, other: "FormalChain") -> "FormalChain":
        return self + (-other)

    def __mul__(self, k: int) -> "FormalChain":
        return self._like({lab: k * c for lab, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalChain):
            return NotImplemented
        return (self.tag, self.degree, self.zg, self.terms) == (other.tag, other.degree,
                                                                  other.zg, other.terms)

    def __hash__(self):
        return hash((self.tag, self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        body = " ".join(f"{c:+d}{lab}" for lab, c in self.items()[:8])
        more = " ..." if len(self.terms) > 8 else ""
        return f"FormalChain({self.tag}, n={self.degree}: {body or '0'}{more})"

    def to_json(self) -> dict:
        return {"tag": self.tag, "degree": self.degree, "zg": self.zg,
                "terms": [[c, list(lab)] for lab, c in self.items()]}

    @classmethod
    def from_json(cls, doc) -> "FormalChain":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(doc["tag"], doc["degree"], [(c, tuple(lab)) for c, lab in doc["terms"]],
                   doc.get("zg", False))


def _degree_of(tag: str, length: int, zg: bool = False) -> int:
    if tag == "group-inhom":
        return length - 1 if zg else length
    if tag in ("rack", "quandle", "group-hom", "delta"):
        return length - 1
    raise InvalidParameter(tag)


def _sort_key(label):
    return tuple(-1 if v is None else v for v in label)


# ---------------------------------------------------------------------------
# Group complexes


def group_boundary(chain: FormalChain, G: FiniteGroup) -> FormalChain:
    """
    Bar boundary of an inhomogeneous chain.

    With trivial coefficients the leading term g1[g2|...|gn] is [g2|...|gn];
    in ZG mode (labels (g, g1, ..., gn)) the coefficient becomes g*g1.
    Homogeneous chains get the simplicial boundary.
    """
    if chain.tag == "group-hom":
        return _simplicial_boundary(chain)
    if chain.tag != "group-inhom":
        raise InvalidParameter("group_boundary needs a group chain")
    n = chain.degree
    out: dict = defaultdict(int)
    if n == 0:
        return FormalChain("group-inhom", -1, {}, chain.zg)
    for lab, c in chain.terms.items():
        if chain.zg:
            g, gs = lab[0], lab[1:]
            out[(G.mul(g, gs[0]),) + gs[1:]] += c
        else:
            g, gs = None, lab
            out[gs[1:]] += c
        for i in range(1, n):
            merged = gs[:i - 1] + (G.mul(gs[i - 1], gs[i]),) + gs[i + 1:]
            out[((g,) if chain.zg else ()) + merged] += (-1) ** i * c
        out[((g,) if chain.zg else ()) + gs[:-1]] += (-1) ** n * c
    return FormalChain("group-inhom", n - 1, out, chain.zg)


def _simplicial_boundary(chain: FormalChain) -> FormalChain:
    out: dict = defaultdict(int)
    for lab, c in chain.terms.items():
        for i in range(len(lab)):
            out[lab[:i] + lab[i + 1:]] += (-1) ** i * c
    return FormalChain(chain.tag, chain.degree - 1, out)


def delta_boundary(chain: FormalChain) -> FormalChain:
    """Simplicial boundary sum (-1)^i (x0, ..., ^xi, ..., xn)."""
    if chain.tag != "delta":
        raise InvalidParameter("delta_boundary needs a delta chain")
    return _simplicial_boundary(chain)


def hom_to_inhom(chain: FormalChain, G: FiniteGroup) -> FormalChain:
    """(g0, ..., gn) -> [g0^-1 g1 | g1^-1 g2 | ... | g_{n-1}^-1 gn]."""
    if chain.tag != "group-hom":
        raise InvalidParameter("hom_to_inhom needs a group-hom chain")
    out: dict = defaultdict(int)
    for lab, c in chain.terms.items():
        out[tuple(G.mul(G.inv(lab[i]), lab[i + 1]) for i in range(len(lab) - 1))] += c
    return FormalChain("group-inhom", chain.degree, out)


def inhom_to_hom(chain: FormalChain, G: FiniteGroup) -> FormalChain:
    """[g1|...|gn] -> (1, g1, g1 g2, ..., g1...gn)."""
    if chain.tag != "group-inhom" or chain.zg:
        raise InvalidParameter("inhom_to_hom needs a trivial-coefficient inhomogeneous chain")
    out: dict = defaultdict(int)
    for lab, c in chain.terms.items():
        acc = [G.identity]
        for g in lab:
            acc.append(G.mul(acc[-1], g))
        out[tuple(acc)] += c
    return FormalChain("group-hom", chain.degree, out)


def hom_tuple_to_inhom(G: FiniteGroup, xs: Sequence[int]) -> tuple[int, ...]:
    return tuple(G.mul(G.inv(xs[i]), xs[i + 1]) for i in range(len(xs) - 1))


def inhom_tuple_to_hom(G: FiniteGroup, gs: Sequence[int]) -> tuple[int, ...]:
    acc = [G.identity]
    for g in gs:
        acc.append(G.mul(acc[-1], g))
    return tuple(acc)


def _has_repeat(seq) -> bool:
    return any(seq[i] == seq[i + 1] for i in range(len(seq) - 1))


def normalize(chain: FormalChain, G: Optional[FiniteGroup] = None) -> FormalChain:
    """Drop degenerate terms; rack chains are returned unchanged."""
    if chain.tag == "group-inhom":
        ident = G.identity if G is not None else 0
        skip = 1 if chain.zg else 0
        keep = {lab: c for lab, c in chain.terms.items() if ident not in lab[skip:]}
    elif chain.tag == "quandle":
        keep = {lab: c for lab, c in chain.terms.items() if not _has_repeat(lab[1:])}
    elif chain.tag in ("group-hom", "delta"):
        keep = {lab: c for lab, c in chain.terms.items() if not _has_repeat(lab)}
    else:
        keep = chain.terms
    return chain._like(keep)


# ---------------------------------------------------------------------------
# Rack and quandle complexes


def rack_boundary(chain: FormalChain, Q: FiniteQuandle) -> FormalChain:
    """
    Boundary in C^R(X; Z[X]) (or with trivial coefficients when y is None):
    sum_i (-1)^i [ (r; ..^xi..) - (r*xi; x1*xi, ..., x_{i-1}*xi, x_{i+1}, ...) ].
    Quandle-tagged chains are normalized afterwards.
    """
    if chain.tag not in ("rack", "quandle"):
        raise InvalidParameter("rack_boundary needs a rack or quandle chain")
    op = Q.op
    out: dict = defaultdict(int)
    for lab, c in chain.terms.items():
        r, xs = lab[0], lab[1:]
        for i in range(len(xs)):
            s = -c if i % 2 == 0 else c  # (-1)^(i+1) with 0-based i
            xi = xs[i]
            out[(r,) + xs[:i] + xs[i + 1:]] += s
            r2 = None if r is None else op[r][xi]
            moved = tuple(op[x][xi] for x in xs[:i]) + xs[i + 1:]
            out[(r2,) + moved] -= s
    res = FormalChain(chain.tag, chain.degree - 1, out)
    return normalize(res) if chain.tag == "quandle" else res


def inner_canonical(Q: FiniteQuandle, perms: Optional[list] = None) -> Callable:
    """
    Canonical representative of a tuple under the diagonal action of the
    inner group, used to compare chains in C^Delta tensored over Z[G_X].
    """
    from .quandles import inner_group
    perms = perms if perms is not None else inner_group(Q)
    cache: dict = {}

    def canon(t: tuple) -> tuple:
        v = cache.get(t)
        if v is None:
            v = min(tuple(g[x] for x in t) for g in perms)
            cache[t] = v
        return v

    return canon


def delta_mod_inner(chain: FormalChain, Q: FiniteQuandle, canon: Optional[Callable] = None):
    """Image of a delta chain in C^Delta(X) tensor_{Z[G_X]} Z."""
    canon = canon or inner_canonical(Q)
    out: dict = defaultdict(int)
    for lab, c in chain.terms.items():
        out[canon(lab)] += c
    return FormalChain("delta", chain.degree, out)


# ---------------------------------------------------------------------------
# Complex descriptors (trivial coefficients) and cochains


class GroupComplex:
    """Normalized inhomogeneous complex of G with trivial coefficients."""

    tag = "group-inhom"

    def __init__(self, G: FiniteGroup, normalized: bool = True):
        self.G = G
        self.normalized = normalized

    def basis(self, n: int) -> list[tuple]:
        elems = [g for g in self.G if not (self.normalized and g == self.G.identity)]
        _check_cap(len(elems) ** n)
        return list(itertools.product(elems, repeat=n))

    def boundary(self, label: tuple) -> dict:
        ch = group_boundary(FormalChain("group-inhom", len(label), {label: 1}), self.G)
        if self.normalized:
            ch = normalize(ch, self.G)
        return ch.terms


class QuandleComplex:
    """C^Q(X; Z) (or C^R when normalized=False) with trivial coefficients."""

    tag = "quandle"

    def __init__(self, Q: FiniteQuandle, normalized: bool = True):
        self.Q = Q
        self.normalized = normalized

    def basis(self, n: int) -> list[tuple]:
        m = self.Q.order
        _check_cap(m ** n)
        out = itertools.product(range(m), repeat=n)
        if self.normalized:
            return [t for t in out if not _has_repeat(t)]
        return list(out)

    def boundary(self, label: tuple) -> dict:
        tag = "quandle" if self.normalized else "rack"
        ch = rack_boundary(FormalChain(tag, len(label), {(None,) + tuple(label): 1}), self.Q)
        return {lab[1:]: c for lab, c in ch.terms.items()}


def _check_cap(n: int):
    if n > size_cap():
        raise ResourceLimit(f"{n} basis elements exceed the size cap {size_cap()}")


def boundary_rows(cx, n: int) -> tuple[list[dict], list[tuple], list[tuple]]:
    """
    Sparse matrix of the n-th boundary: one row per basis(n) element, each a
    dict {column index in basis(n-1): coefficient}.
    """
    src = cx.basis(n)
    dst = cx.basis(n - 1) if n > 0 else []
    _check_cap(len(src) * max(1, len(dst)))
    idx = {t: k for k, t in enumerate(dst)}
    rows = []
    for t in src:
        rows.append({idx[lab]: c for lab, c in cx.boundary(t).items() if c} if n > 0 else {})
    return rows, src, dst


class Cochain:
    """
    Dense n-cochain on a complex descriptor with values in Z/modulus
    (modulus 0 means Z).
    """

    def __init__(self, complex_, degree: int, values: Mapping | Callable, modulus: int = 0):
        self.complex = complex_
        self.degree = degree
        self.modulus = modulus
        basis = complex_.basis(degree)
        if callable(values):
            vals = {t: values(*t) for t in basis}
        else:
            vals = {t: values.get(t, 0) for t in basis}
        self.values = {t: self._red(v) for t, v in vals.items()}

    def _red(self, v: int) -> int:
        return v % self.modulus if self.modulus else int(v)

    def __call__(self, *t):
        return self.values.get(tuple(t), 0)

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.complex, self.degree,
                       {t: v + other.values.get(t, 0) for t, v in self.values.items()},
                       self.modulus)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def scale(self, k: int) -> "Cochain":
        return Cochain(self.complex, self.degree,
                       {t: k * v for t, v in self.values.items()}, self.modulus)

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and self.modulus == other.modulus
                and self.values == other.values)

    __hash__ = None

    def coboundary(self) -> "Cochain":
        """(delta f)(t) = f(boundary t)."""
        vals = {}
        for t in self.complex.basis(self.degree + 1):
            vals[t] = sum(c * self.values.get(lab, 0)
                          for lab, c in self.complex.boundary(t).items())
        return Cochain(self.complex, self.degree + 1, vals, self.modulus)

    def pair(self, chain: FormalChain) -> int:
        tot = 0
        for lab, c in chain.terms.items():
            key = lab[1:] if chain.tag in ("rack", "quandle") else lab
            tot += c * self.values.get(key, 0)
        return self._red(tot)

    def to_json(self) -> dict:
        return {"degree": self.degree, "modulus": self.modulus, "tag": self.complex.tag,
                "values": [[list(t), v] for t, v in sorted(self.values.items())]}


def is_cocycle(f: Cochain) -> bool:
    return f.coboundary().is_zero()


def is_coboundary(f: Cochain) -> Optional[Cochain]:
    """
    Solve delta g = f for g over the coefficient group of f; returns the
    witness or None.  The caller is expected to pass a cocycle.
    """
    if f.degree == 0:
        return None if not f.is_zero() else f
    cx = f.complex
    rows, src, dst = boundary_rows(cx, f.degree)
    if not dst:
        return Cochain(cx, f.degree - 1, {}, f.modulus) if f.is_zero() else None
    A = [[r.get(j, 0) for j in range(len(dst))] for r in rows]
    b = [f.values[t] for t in src]
    target = cyclic(f.modulus) if f.modulus != 1 else cyclic(1)
    if target.rank == 0:
        return Cochain(cx, f.degree - 1, {}, f.modulus)
    sol = solve_linear_over_abelian(A, b, target)
    if sol is None:
        return None
    g = Cochain(cx, f.degree - 1, dict(zip(dst, sol)), f.modulus)
    assert all(v == 0 for v in (g.coboundary() - f).values.values())
    return g


# ---------------------------------------------------------------------------
# Homogeneous cochains


class HomogeneousCochain:
    """
    A function on S^(k+1) for a finite set S (a group or a quandle), stored
    densely.  Provides the three checks a function must pass before it can
    be pulled back along phi.
    """

    def __init__(self, size: int, degree: int, func: Callable | Mapping, modulus: int = 0):
        self.size = size
        self.degree = degree
        self.modulus = modulus
        _check_cap(size ** (degree + 1))
        red = (lambda v: v % modulus) if modulus else int
        if callable(func):
            self.table = {t: red(func(*t))
                          for t in itertools.product(range(size), repeat=degree + 1)}
        else:
            self.table = {t: red(func.get(t, 0))
                          for t in itertools.product(range(size), repeat=degree + 1)}

    def __call__(self, *t) -> int:
        return self.table[tuple(t)]

    def _red(self, v):
        return v % self.modulus if self.modulus else v

    def __eq__(self, other) -> bool:
        return isinstance(other, HomogeneousCochain) and self.table == other.table \
            and self.modulus == other.modulus

    def scale(self, k: int) -> "HomogeneousCochain":
        return HomogeneousCochain(self.size, self.degree,
                                  {t: k * v for t, v in self.table.items()}, self.modulus)

    def __add__(self, other) -> "HomogeneousCochain":
        return HomogeneousCochain(self.size, self.degree,
                                  {t: v + other.table[t] for t, v in self.table.items()},
                                  self.modulus)

    def satisfies_cocycle(self) -> bool:
        """Condition (1): sum_i (-1)^i f(.., ^xi, ..) = 0 on S^(k+2)."""
        k = self.degree
        _check_cap(self.size ** (k + 2))
        for t in itertools.product(range(self.size), repeat=k + 2):
            s = sum((-1) ** i * self.table[t[:i] + t[i + 1:]] for i in range(k + 2))
            if self._red(s):
                return False
        return True

    def satisfies_invariance(self, perms: Iterable[Sequence[int]]) -> bool:
        """Condition (2): f(x0 g, ..., xk g) = f(x0, ..., xk) for every given permutation."""
        perms = list(perms)
        for t, v in self.table.items():
            for g in perms:
                if self.table[tuple(g[x] for x in t)] != v:
                    return False
        return True

    def satisfies_normalized(self) -> bool:
        """Condition (3): vanishes when two consecutive arguments agree."""
        return all(v == 0 for t, v in self.table.items() if _has_repeat(t))

    def pair(self, chain: FormalChain) -> int:
        tot = sum(c * self.table[lab] for lab, c in chain.terms.items())
        return self._red(tot)


def is_left_invariant(f: HomogeneousCochain, G: FiniteGroup) -> bool:
    return f.satisfies_invariance([tuple(G.mul(g, x) for x in G) for g in G])


def is_right_invariant(f: HomogeneousCochain, G: FiniteGroup) -> bool:
    return f.satisfies_invariance([tuple(G.mul(x, g) for x in G) for g in G])


def homogeneous_from_inhom(G: FiniteGroup, degree: int, func: Callable, modulus: int = 0):
    """f(x0, ..., xk) = func(x0^-1 x1, ..., x_{k-1}^-1 xk)."""
    return HomogeneousCochain(G.order, degree,
                              lambda *xs: func(*hom_tuple_to_inhom(G, xs)), modulus)


def inhom_from_homogeneous(G: FiniteGroup, f: HomogeneousCochain) -> Cochain:
    """Restrict a left-invariant homogeneous cochain to (1, g1, g1 g2, ...)."""
    cx = GroupComplex(G)
    return Cochain(cx, f.degree, lambda *gs: f.table[inhom_tuple_to_hom(G, gs)], f.modulus)


# ---------------------------------------------------------------------------
# Homology


@dataclass(frozen=True)
class HomologyResult:
    degree: int
    coefficients: str
    rank: int
    torsion: tuple[int, ...] = ()
    dim: Optional[int] = None
    chain_ranks: tuple[int, int, int] = field(default=(0, 0, 0), repr=False)

    def to_json(self) -> dict:
        doc = {"degree": self.degree, "coeff": self.coefficients}
        if self.dim is not None:
            doc["dim"] = self.dim
        else:
            doc["rank"] = self.rank
            doc["torsion"] = list(self.torsion)
        return doc


def _parse_coeff(coeff) -> int:
    if isinstance(coeff, int):
        return coeff
    s = str(coeff).strip().upper()
    if s in ("Z", "ZZ"):
        return 0
    if s.startswith("F") and s[1:].isdigit():
        return int(s[1:])
    raise InvalidParameter(f"unknown coefficient spec {coeff!r}")


def quandle_homology(Q: FiniteQuandle, n: int, coefficients="Z",
                     normalized: bool = True) -> HomologyResult:
    """
    H_n of the quandle complex (rack complex if not normalized) with
    trivial coefficients Z or F_p.
    """
    if n < 0:
        raise InvalidParameter("degree must be non-negative")
    p = _parse_coeff(coefficients)
    if Q.order ** (n + 1) > size_cap():
        raise ResourceLimit(f"|Q|^{n + 1} = {Q.order ** (n + 1)} exceeds the size cap")
    cx = QuandleComplex(Q, normalized)
    dn, src, _ = boundary_rows(cx, n)
    dn1, _, _ = boundary_rows(cx, n + 1)
    dim_c = len(src)
    if p:
        if any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)) or p < 2:
            raise InvalidParameter("field coefficients need a prime")
        r_n = rank_mod_p(dn, p) if n > 0 else 0
        r_n1 = rank_mod_p(dn1, p)
        d = dim_c - r_n - r_n1
        return HomologyResult(n, f"F{p}", d, (), d, (dim_c, r_n, r_n1))
    inv_n = smith_invariants(dn) if n > 0 else []
    inv_n1 = smith_invariants(dn1)
    rank = dim_c - len(inv_n) - len(inv_n1)
    tors = tuple(abs(d) for d in inv_n1 if abs(d) > 1)
    return HomologyResult(n, "Z", rank, tors, None, (dim_c, len(inv_n), len(inv_n1)))


def boundary_triplets(cx, n: int) -> str:
    """Sparse 'row col value' text of the n-th boundary matrix."""
    rows, _, _ = boundary_rows(cx, n)
    lines = [f"{i} {j} {v}" for i, r in enumerate(rows) for j, v in sorted(r.items())]
    return "\n".join(lines) + ("\n" if lines else "")
