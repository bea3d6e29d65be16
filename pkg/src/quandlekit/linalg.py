"""
Exact integer and modular linear algebra.

Everything here works on Python ints, so entries never overflow.  The
dense Smith normal form keeps track of the unimodular transforms and is
meant for the small systems that come up in coboundary solving; the
sparse ``smith_invariants`` only returns the diagonal and is what the
homology code uses.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import InvalidParameter


class IntMatrix:
    """Dense integer matrix stored as a list of row lists."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]] = (), cols: Optional[int] = None):
        self.data = [[int(v) for v in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        for row in self.data:
            if len(row) != cols:
                raise InvalidParameter("ragged matrix rows")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.data, cols=self.cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
                         cols=self.rows)

    T = property(transpose)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidParameter(f"shape mismatch {self.shape} @ {other.shape}")
        out = IntMatrix.zeros(self.rows, other.cols)
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        for i, row in enumerate(self.data):
            nz = [(k, v) for k, v in enumerate(row) if v]
            orow = out.data[i]
            for j in range(other.cols):
                col = ocols[j]
                orow[j] = sum(v * col[k] for k, v in nz)
        return out

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise InvalidParameter("vector length does not match matrix columns")
        return [sum(a * b for a, b in zip(row, vec)) for row in self.data]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __repr__(self) -> str:
        return f"IntMatrix({self.data!r})"

    def diagonal(self) -> list[int]:
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]

    def to_triplets(self) -> str:
        """Sparse ``row col value`` text, one nonzero entry per line."""
        lines = [f"# {self.rows} {self.cols}"]
        for i, row in enumerate(self.data):
            for j, v in enumerate(row):
                if v:
                    lines.append(f"{i} {j} {v}")
        return "\n".join(lines) + "\n"


def _as_matrix(M) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix(M)


def smith_normal_form(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form with transforms.

    Returns
    -------
    U, D, V : IntMatrix
        ``U @ M @ V == D`` with U, V unimodular and D diagonal with
        nonnegative entries d1 | d2 | ... .
    """
    A = _as_matrix(M).copy()
    m, n = A.shape
    a = A.data
    U = IntMatrix.identity(m).data
    V = IntMatrix.identity(n).data

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        ra, rs = a[dst], a[src]
        for k in range(n):
            if rs[k]:
                ra[k] += q * rs[k]
        ua, us = U[dst], U[src]
        for k in range(m):
            if us[k]:
                ua[k] += q * us[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t into the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            U[t] = [-v for v in U[t]]
    return IntMatrix(U, cols=m), IntMatrix(a, cols=n), IntMatrix(V, cols=n)


def smith_invariants(M, ncols: Optional[int] = None) -> list[int]:
    """
    Nonzero invariant factors of an integer matrix (in divisibility order).

    ``M`` may be an IntMatrix, a list of row lists, or a list of sparse
    row dicts ``{col: value}`` (then ``ncols`` is not needed).  Unit pivots
    are eliminated sparsely first; whatever remains goes through the dense
    algorithm.
    """
    if isinstance(M, IntMatrix):
        rows = [{j: v for j, v in enumerate(r) if v} for r in M.data]
    elif M and isinstance(M[0], dict):
        rows = [dict(r) for r in M]
    else:
        rows = [{j: int(v) for j, v in enumerate(r) if v} for r in M]
    rows = [r for r in rows if r]
    units = 0
    # column index -> set of row ids containing it
    col_rows: dict[int, set[int]] = {}
    alive = dict(enumerate(rows))
    for rid, r in alive.items():
        for j in r:
            col_rows.setdefault(j, set()).add(rid)
    progress = True
    while progress:
        progress = False
        # prefer pivots in short columns to limit fill-in
        for j in sorted(col_rows, key=lambda c: len(col_rows[c])):
            pivot_row = None
            for rid in col_rows[j]:
                if abs(alive[rid][j]) == 1:
                    if pivot_row is None or len(alive[rid]) < len(alive[pivot_row]):
                        pivot_row = rid
            if pivot_row is None:
                continue
            prow = alive.pop(pivot_row)
            for c in prow:
                col_rows[c].discard(pivot_row)
            s = prow[j]
            for rid in list(col_rows[j]):
                r = alive[rid]
                q = r[j] * s  # s = +-1 so r[j]/s == r[j]*s
                for c, v in prow.items():
                    nv = r.get(c, 0) - q * v
                    if nv:
                        if c not in r:
                            col_rows[c].add(rid)
                        r[c] = nv
                    elif c in r:
                        del r[c]
                        col_rows[c].discard(rid)
                if not r:
                    del alive[rid]
            # column ops clear the rest of the pivot row without touching others
            for c in prow:
                if not col_rows[c]:
                    del col_rows[c]
            col_rows.pop(j, None)
            units += 1
            progress = True
            break
    rest = list(alive.values())
    out = [1] * units
    if rest:
        cols = sorted({c for r in rest for c in r})
        cidx = {c: k for k, c in enumerate(cols)}
        dense = [[0] * len(cols) for _ in rest]
        for i, r in enumerate(rest):
            for c, v in r.items():
                dense[i][cidx[c]] = v
        _, D, _ = smith_normal_form(IntMatrix(dense, cols=len(cols)))
        out += [d for d in D.diagonal() if d]
    return out


def rank_mod_p(M, p: int) -> int:
    """Rank over F_p of an integer matrix (dense rows or sparse row dicts)."""
    if p < 2:
        raise InvalidParameter("modulus must be >= 2")
    if isinstance(M, IntMatrix):
        rows = [{j: v % p for j, v in enumerate(r) if v % p} for r in M.data]
    elif M and isinstance(M[0], dict):
        rows = [{j: v % p for j, v in r.items() if v % p} for r in M]
    else:
        rows = [{j: v % p for j, v in enumerate(r) if v % p} for r in M]
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for r in rows:
        r = dict(r)
        while r:
            j = min(r)
            if j not in pivots:
                inv = pow(r[j], -1, p) if gcd(r[j], p) == 1 else None
                if inv is None:
                    raise InvalidParameter("rank_mod_p needs a prime modulus")
                pivots[j] = {c: v * inv % p for c, v in r.items()}
                rank += 1
                break
            q = r[j]
            for c, v in pivots[j].items():
                nv = (r.get(c, 0) - q * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return rank


@dataclass(frozen=True)
class AbelianPresentation:
    """Product of cyclic groups Z/m1 x ... x Z/mr; a modulus 0 means Z."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if any(m < 0 or m == 1 for m in self.moduli):
            raise InvalidParameter(f"bad cyclic moduli {self.moduli}")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != len(self.moduli):
            raise InvalidParameter("residue vector has wrong length")
        return tuple(x % m if m else x for x, m in zip(v, self.moduli))

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def add(self, u, v) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(u, v)])

    def neg(self, u) -> tuple[int, ...]:
        return self.reduce([-a for a in u])

    def scale(self, k: int, u) -> tuple[int, ...]:
        return self.reduce([k * a for a in u])

    def is_valid(self, v) -> bool:
        return len(v) == len(self.moduli) and all(
            (0 <= x < m) if m else True for x, m in zip(v, self.moduli))

    def order(self) -> int:
        if 0 in self.moduli:
            return 0
        out = 1
        for m in self.moduli:
            out *= m
        return out


def cyclic(m: int) -> AbelianPresentation:
    return AbelianPresentation((m,)) if m != 1 else AbelianPresentation(())


def _solve_mod(A: IntMatrix, b: list[int], m: int, snf) -> Optional[list[int]]:
    U, D, V = snf
    ub = U.apply(b)
    x = [0] * A.cols
    y = [0] * A.cols
    diag = D.diagonal()
    for i, rhs in enumerate(ub):
        d = diag[i] if i < len(diag) else 0
        if m == 0:
            if d == 0:
                if rhs:
                    return None
                continue
            if rhs % d:
                return None
            y[i] = rhs // d
        else:
            rhs %= m
            g = gcd(d, m)
            if rhs % g:
                return None
            if d % m == 0:
                continue
            mm = m // g
            y[i] = (rhs // g) * pow((d // g) % mm, -1, mm) % mm if mm > 1 else 0
    for i in range(A.cols):
        x[i] = sum(V.data[i][k] * y[k] for k in range(A.cols))
        if m:
            x[i] %= m
    return x


def solve_linear_over_abelian(A, b: Sequence, target: AbelianPresentation):
    """
    Solve ``A x = b`` where the unknowns and right-hand side live in a
    product of cyclic groups.

    Parameters
    ----------
    A : integer matrix, shape (rows, unknowns)
    b : sequence of length ``rows``; entries are residue vectors of
        ``target`` (a bare int is accepted when the target is cyclic).
    target : AbelianPresentation

    Returns
    -------
    list of residue vectors (bare ints for a cyclic target), or None when
    the system has no solution.
    """
    A = _as_matrix(A)
    if len(b) != A.rows:
        raise InvalidParameter(f"rhs has {len(b)} entries, matrix has {A.rows} rows")
    scalar = target.rank == 1 and all(isinstance(v, int) for v in b)
    vecs = [(v,) if isinstance(v, int) else tuple(v) for v in b]
    for v in vecs:
        if len(v) != target.rank:
            raise InvalidParameter("rhs entry does not match the target presentation")
    if target.rank == 0:
        return [()] * A.cols
    snf = smith_normal_form(A)
    per_factor = []
    for f, m in enumerate(target.moduli):
        x = _solve_mod(A, [v[f] for v in vecs], m, snf)
        if x is None:
            return None
        per_factor.append(x)
    sol = [tuple(per_factor[f][i] for f in range(target.rank)) for i in range(A.cols)]
    if scalar:
        return [s[0] for s in sol]
    return sol
