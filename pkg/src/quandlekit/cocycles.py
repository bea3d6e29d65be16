"""
Explicit cocycles of Z/p and R_p, and the maps that move cocycles between
group cohomology and quandle cohomology.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Optional, Sequence

from .chains import (Cochain, FormalChain, GroupComplex, HomogeneousCochain, QuandleComplex,
                     homogeneous_from_inhom)
from .errors import AssumptionViolated, InvalidInput, InvalidParameter, ResourceLimit
from .groups import FiniteGroup, build_cyclic, build_dihedral, dihedral_element
from .quandles import ConjQuandleContext, FiniteQuandle, dihedral_quandle

PSI_MAX_DEGREE = 6


class CyclicCocycle(Cochain):
    """Normalized inhomogeneous cochain of Z/p with a ``kind`` tag."""

    def __init__(self, p: int, degree: int, func, kind: str, modulus: Optional[int] = None):
        self.p = p
        self.kind = kind
        self.group = build_cyclic(p)
        super().__init__(GroupComplex(self.group), degree, func, p if modulus is None else modulus)

    def homogeneous(self) -> HomogeneousCochain:
        """The same cocycle in homogeneous notation on (Z/p)^(k+1)."""
        vals = self.values
        return homogeneous_from_inhom(self.group, self.degree,
                                      lambda *gs: vals.get(gs, 0), self.modulus)


def _check_p(p: int):
    if p < 3:
        raise InvalidParameter(f"need p >= 3, got {p}")


def b2_value(p: int, x: int, y: int) -> int:
    return 1 if x % p + y % p >= p else 0


def d_value(p: int, x: int, y: int) -> int:
    return b2_value(p, x, y) - b2_value(p, -x, -y)


def b1(p: int, modulus: Optional[int] = None) -> CyclicCocycle:
    _check_p(p)
    return CyclicCocycle(p, 1, lambda x: x, "b1", modulus)


def b2(p: int, modulus: Optional[int] = None) -> CyclicCocycle:
    _check_p(p)
    return CyclicCocycle(p, 2, lambda x, y: b2_value(p, x, y), "b2", modulus)


def d(p: int, modulus: Optional[int] = None) -> CyclicCocycle:
    _check_p(p)
    return CyclicCocycle(p, 2, lambda x, y: d_value(p, x, y), "d", modulus)


def cup_product(f: CyclicCocycle, g: CyclicCocycle) -> CyclicCocycle:
    """(f u g)[x1|...|x_{k+l}] = f[x1|...|xk] * g[x_{k+1}|...|x_{k+l}]."""
    if f.p != g.p or f.modulus != g.modulus:
        raise InvalidParameter("cup product of cocycles over different groups")
    k = f.degree
    fv, gv = f.values, g.values
    return CyclicCocycle(f.p, k + g.degree,
                         lambda *xs: fv.get(xs[:k], 0) * gv.get(xs[k:], 0),
                         f"({f.kind})({g.kind})", f.modulus)


def b1b2_homogeneous(p: int) -> HomogeneousCochain:
    """b1 u b2 in homogeneous form: (x1 - x0) * b2(x2 - x1, x3 - x2)."""
    return cup_product(b1(p), b2(p)).homogeneous()


def average_negation(f: HomogeneousCochain, p: int) -> HomogeneousCochain:
    """f(x0, ..., xk) + f(-x0, ..., -xk), read as a function on R_p."""
    if f.size != p:
        raise InvalidParameter("cochain is not defined on Z/p")
    return HomogeneousCochain(p, f.degree,
                              lambda *xs: f.table[xs] + f.table[tuple(-x % p for x in xs)],
                              f.modulus)


def theta(p: int, factor: int = 2) -> Cochain:
    """
    The quandle 3-cocycle (x, y, z) -> factor * z * (d(y-x, z-y) + d(y-x, y-z))
    of R_p with Z/p coefficients.  ``factor=1`` is only offered for odd p.
    """
    _check_p(p)
    if factor not in (1, 2):
        raise InvalidParameter("theta factor must be 1 or 2")
    if factor == 1 and p % 2 == 0:
        raise InvalidParameter("the halved cocycle needs odd p")
    R = dihedral_quandle(p)
    return Cochain(QuandleComplex(R), 3,
                   lambda x, y, z: theta_value(p, x, y, z, factor), p)


def theta_value(p: int, x: int, y: int, z: int, factor: int = 2) -> int:
    return factor * z * (d_value(p, y - x, z - y) + d_value(p, y - x, y - z)) % p


def lemma_sum(p: int, y: int) -> int:
    """sum_{i<p} i * d(i y, y) mod p."""
    _check_p(p)
    if not 0 <= y < p:
        raise InvalidParameter("y out of range")
    return sum(i * d_value(p, i * y, y) for i in range(p)) % p


def lemma_closed_form(p: int, y: int) -> int:
    if y == 0:
        return 0
    return (-y) % p if p % 2 else (p // 2 - y) % p


# ---------------------------------------------------------------------------
# transfer, invariantization, section construction


def transfer_d2p(f: HomogeneousCochain, p: int) -> tuple[FiniteGroup, HomogeneousCochain]:
    """
    Transfer a cocycle of Z/p to D_2p:
    f'(g0, ..., gn) = f(r g0, ..., r gn) + f(-r g0, ..., -r gn)
    with r(x^i) = i and r(h x^i) = -i.
    """
    if p % 2 == 0:
        raise InvalidParameter("transfer to D_2p is set up for odd p")
    if f.size != p:
        raise InvalidParameter("cochain is not defined on Z/p")
    G = build_dihedral(p)
    r = [(i if e == 0 else -i) % p for e in range(2) for i in range(p)]
    tab = f.table

    def val(*gs):
        t = tuple(r[g] for g in gs)
        return tab[t] + tab[tuple(-v % p for v in t)]

    return G, HomogeneousCochain(G.order, f.degree, val, f.modulus)


def right_invariantize(f: HomogeneousCochain, G: FiniteGroup) -> HomogeneousCochain:
    """g(x0, ..., xk) = f(x0^-1, ..., xk^-1)."""
    inv = G.inverses
    return HomogeneousCochain(G.order, f.degree,
                              lambda *xs: f.table[tuple(inv[x] for x in xs)], f.modulus)


def tilde_section_cocycle(ctx: ConjQuandleContext, f: HomogeneousCochain) -> HomogeneousCochain:
    """
    sum_{i<l} f(h^i s(x0), ..., h^i s(xk)) as a function on Conj(h)^(k+1);
    ``f`` should be right invariant.
    """
    if not ctx.corrected:
        raise AssumptionViolated("section does not satisfy s(x*y) = s(x) ~* s(y)")
    G = ctx.group
    hp = [G.power(ctx.h, i) for i in range(ctx.l)]
    sec = ctx.section
    tab = f.table
    return HomogeneousCochain(len(ctx.elements), f.degree,
                              lambda *xs: sum(tab[tuple(G.mul(a, sec[x]) for x in xs)]
                                              for a in hp),
                              f.modulus)


# ---------------------------------------------------------------------------
# phi: C^R_n(X; Z[X]) -> C^Delta_{n+1}(X)


def phi_terms(Q: FiniteQuandle, q: int, r: int, xs: Sequence[int]):
    """Yield (sign, tuple) for the 2^n terms of phi(r (x) (x1, ..., xn))."""
    op = Q.op
    n = len(xs)
    for iota in itertools.product((0, 1), repeat=n):
        rr = r
        for i in range(n):
            if iota[i]:
                rr = op[rr][xs[i]]
        ys = []
        for i in range(n):
            v = xs[i]
            for j in range(i + 1, n):
                if iota[j]:
                    v = op[v][xs[j]]
            ys.append(v)
        yield (-1) ** sum(iota), (q, rr) + tuple(ys)


def phi(chain: FormalChain, Q: FiniteQuandle, q: int) -> FormalChain:
    """Apply phi termwise; the result is an honest delta chain (not reduced mod G_X)."""
    if chain.tag not in ("rack", "quandle"):
        raise InvalidParameter("phi needs a rack or quandle chain")
    out: dict = defaultdict(int)
    for lab, c in chain.terms.items():
        r, xs = lab[0], lab[1:]
        if r is None:
            raise InvalidParameter("phi needs Z[X] coefficients (a region element)")
        for s, t in phi_terms(Q, q, r, xs):
            out[t] += s * c
    return FormalChain("delta", chain.degree + 1, out)


def phi_pullback(f: HomogeneousCochain, Q: FiniteQuandle, q: int = 0,
                 check: bool = True) -> Cochain:
    """
    (phi^* f)(r, x1, ..., x_{k-1}) = <f, phi(r (x) (x1, ..., x_{k-1}))>,
    returned as a quandle k-cochain in region-argument form.
    """
    if f.size != Q.order:
        raise InvalidParameter("cochain and quandle have different sizes")
    if check:
        cols = [tuple(Q.op[x][y] for x in Q) for y in Q]
        if not f.satisfies_invariance(cols):
            raise InvalidInput("function is not invariant under the quandle action")
    k = f.degree
    tab = f.table
    red = (lambda v: v % f.modulus) if f.modulus else int

    def val(r, *xs):
        return red(sum(s * tab[t] for s, t in phi_terms(Q, q, r, xs)))

    return Cochain(QuandleComplex(Q), k, val, f.modulus)


def phi_pullback_table(f: HomogeneousCochain, Q: FiniteQuandle, q: int = 0) -> dict:
    """Full table of phi^* f on all of X^k, degenerate tuples included."""
    red = (lambda v: v % f.modulus) if f.modulus else int
    return {t: red(sum(s * f.table[u] for s, u in phi_terms(Q, q, t[0], t[1:])))
            for t in itertools.product(range(Q.order), repeat=f.degree)}


# ---------------------------------------------------------------------------
# psi: C^R_n(X) -> C_n(G_X), pushed into G


def psi_terms(Q: FiniteQuandle, xs: Sequence[int]):
    """
    Yield (sign, (y_1, ..., y_n)) for psi((x1, ..., xn)).

    For a permutation sigma and position i, y_i is x_{sigma(i)} acted on by
    x_{sigma(j)} for every earlier position j with sigma(j) > sigma(i),
    applied in increasing order of sigma(j).
    """
    n = len(xs)
    if n > PSI_MAX_DEGREE:
        raise ResourceLimit(f"psi in degree {n} exceeds the cap {PSI_MAX_DEGREE}")
    op = Q.op
    for sigma in itertools.permutations(range(n)):
        ys = []
        for i in range(n):
            v = xs[sigma[i]]
            for a in sorted(sigma[j] for j in range(i) if sigma[j] > sigma[i]):
                v = op[v][xs[a]]
            ys.append(v)
        yield _perm_sign(sigma), tuple(ys)


def _perm_sign(sigma) -> int:
    s = 1
    seen = [False] * len(sigma)
    for i in range(len(sigma)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = sigma[j]
                length += 1
            if length % 2 == 0:
                s = -s
    return s


def psi(chain: FormalChain, Q: FiniteQuandle, embed: Optional[Sequence[int]] = None):
    """
    Apply psi to a rack/quandle chain with trivial coefficients.  With
    ``embed`` (quandle element -> group element) the labels are group
    elements; otherwise they stay quandle elements.
    """
    if chain.tag not in ("rack", "quandle"):
        raise InvalidParameter("psi needs a rack or quandle chain")
    out: dict = defaultdict(int)
    for lab, c in chain.terms.items():
        for s, ys in psi_terms(Q, lab[1:]):
            out[tuple(embed[y] for y in ys) if embed is not None else ys] += s * c
    return FormalChain("group-inhom", chain.degree, out)


def psi_pullback(f: Cochain, Q: FiniteQuandle, embed: Sequence[int]) -> Cochain:
    """(psi^* f)(x1, ..., xk) = <f, psi((x1, ..., xk))> as a quandle cochain."""
    tab = f.values
    red = (lambda v: v % f.modulus) if f.modulus else int

    def val(*xs):
        return red(sum(s * tab.get(tuple(embed[y] for y in ys), 0)
                       for s, ys in psi_terms(Q, xs)))

    return Cochain(QuandleComplex(Q), f.degree, val, f.modulus)


def dihedral_embedding(p: int) -> tuple[FiniteGroup, list[int]]:
    """R_p inside D_2p as Conj(h): i -> x^-i h x^i = h x^2i."""
    G = build_dihedral(p)
    return G, [dihedral_element(p, 1, 2 * i) for i in range(p)]


def relabel(f: HomogeneousCochain, perm: Sequence[int]) -> HomogeneousCochain:
    """g(x0, ..., xk) = f(perm[x0], ..., perm[xk])."""
    return HomogeneousCochain(len(perm), f.degree,
                              lambda *xs: f.table[tuple(perm[x] for x in xs)], f.modulus)


def hom_to_inhom_cochain(G: FiniteGroup, f: HomogeneousCochain) -> Cochain:
    """Inhomogeneous cochain [g1|...|gk] -> f(1, g1, g1 g2, ...)."""
    from .chains import inhom_from_homogeneous
    return inhom_from_homogeneous(G, f)
