"""Sparse matrices and exact row reduction over Q(zeta_M)(tau).

The generator matrices of every module here are sparse (a handful of
entries per row), so matrices are stored as per-row dicts with no zero
entries.  Row reduction works generically over any field-like element
type exposing is_zero / inv and the arithmetic operators, which covers
both Scalar and Cyc (the latter used after tau-specialization).
"""

from __future__ import annotations


class SMat:
    """Sparse matrix over Scalar; no explicit zero entries are stored."""

    __slots__ = ("session", "nrows", "ncols", "rows")

    def __init__(self, session, nrows, ncols, rows=None):
        self.session = session
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @staticmethod
    def identity(session, n):
        m = SMat(session, n, n)
        for i in range(n):
            m.rows[i][i] = session.one
        return m

    @staticmethod
    def zeros(session, nrows, ncols):
        return SMat(session, nrows, ncols)

    def set(self, i, j, val):
        if val.is_zero():
            self.rows[i].pop(j, None)
        else:
            self.rows[i][j] = val

    def get(self, i, j):
        return self.rows[i].get(j, self.session.zero)

    def add_to(self, i, j, val):
        cur = self.rows[i].get(j)
        new = val if cur is None else cur + val
        self.set(i, j, new)

    def copy(self):
        return SMat(self.session, self.nrows, self.ncols,
                    [dict(r) for r in self.rows])

    def is_zero(self):
        return all(not r for r in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, SMat)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __add__(self, other):
        out = self.copy()
        for i, r in enumerate(other.rows):
            for j, v in r.items():
                out.add_to(i, j, v)
        return out

    def __sub__(self, other):
        out = self.copy()
        for i, r in enumerate(other.rows):
            for j, v in r.items():
                out.add_to(i, j, -v)
        return out

    def __neg__(self):
        return SMat(self.session, self.nrows, self.ncols,
                    [{j: -v for j, v in r.items()} for r in self.rows])

    def scale(self, sc):
        if sc.is_zero():
            return SMat.zeros(self.session, self.nrows, self.ncols)
        return SMat(self.session, self.nrows, self.ncols,
                    [{j: sc * v for j, v in r.items()} for r in self.rows])

    def __matmul__(self, other):
        assert self.ncols == other.nrows
        out = SMat(self.session, self.nrows, other.ncols)
        orows = other.rows
        for i, r in enumerate(self.rows):
            acc = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    cur = acc.get(j)
                    acc[j] = a * b if cur is None else cur + a * b
            out.rows[i] = {j: v for j, v in acc.items() if not v.is_zero()}
        return out

    def matpow(self, e):
        assert self.nrows == self.ncols
        out = SMat.identity(self.session, self.nrows)
        base = self
        while e > 0:
            if e & 1:
                out = out @ base
            base = base @ base if e > 1 else base
            e >>= 1
        return out

    def transpose(self):
        out = SMat(self.session, self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out.rows[j][i] = v
        return out

    def kron(self, other):
        """Kronecker product acting on v (x) w by (A v) (x) (B w)."""
        nb, mb = other.nrows, other.ncols
        out = SMat(self.session, self.nrows * nb, self.ncols * mb)
        for i, r in enumerate(self.rows):
            for j, a in r.items():
                for k, rr in enumerate(other.rows):
                    row = out.rows[i * nb + k]
                    for l, b in rr.items():
                        row[j * mb + l] = a * b
        return out

    def apply(self, vec):
        """Matrix-vector product; vec is a dense list of Scalars."""
        z = self.session.zero
        out = [z] * self.nrows
        for i, r in enumerate(self.rows):
            acc = None
            for j, a in r.items():
                vj = vec[j]
                if not vj.is_zero():
                    term = a * vj
                    acc = term if acc is None else acc + term
            if acc is not None:
                out[i] = acc
        return out

    def to_dense(self):
        z = self.session.zero
        return [
            [self.rows[i].get(j, z) for j in range(self.ncols)]
            for i in range(self.nrows)
        ]

    def specialize(self, t0):
        """Dense Cyc-valued matrix at tau = t0."""
        zc = self.session.cyc_zero
        out = []
        for r in self.rows:
            row = [zc] * self.ncols
            for j, v in r.items():
                row[j] = v.specialize(t0)
            out.append(row)
        return out

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def __repr__(self):
        return "SMat(%dx%d, nnz=%d)" % (self.nrows, self.ncols, self.nnz())


def commutator(a, b):
    return a @ b - b @ a


# ---------------------------------------------------------------------
# generic exact row reduction (works over Scalar and over Cyc)
# ---------------------------------------------------------------------

def rref(rows, zero, npivot=None):
    """Reduced row echelon form with unit pivots.

    Takes a list of dense rows (lists of field elements), returns
    (echelon_rows, pivot_cols).  Input rows are not modified.  If npivot
    is given, columns >= npivot are never used as pivots; rows whose
    leading entry falls there are dropped (callers that need them use
    rref_augmented).
    """
    basis, pivots, _ = rref_augmented(rows, zero, npivot)
    return basis, pivots


def rref_augmented(rows, zero, npivot=None):
    """Like rref but also returns the rows supported on columns >= npivot."""
    rows = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    basis, pivots, tail = [], [], []
    for v in rows:
        v = reduce_row(v, basis, pivots)
        p = _leading(v)
        if p is None:
            continue
        if npivot is not None and p >= npivot:
            tail.append(v)
            continue
        inv = v[p].inv()
        v = [zero if x.is_zero() else inv * x for x in v]
        # eliminate this column from existing basis rows
        for b in basis:
            c = b[p]
            if not c.is_zero():
                for j in range(p, len(v)):
                    if not v[j].is_zero():
                        b[j] = b[j] - c * v[j]
        idx = 0
        while idx < len(pivots) and pivots[idx] < p:
            idx += 1
        basis.insert(idx, v)
        pivots.insert(idx, p)
    return basis, pivots, tail


def _leading(v):
    for j, x in enumerate(v):
        if not x.is_zero():
            return j
    return None


def reduce_row(v, basis, pivots):
    """Remainder of v modulo an rref basis (unit pivots)."""
    v = list(v)
    for b, p in zip(basis, pivots):
        c = v[p]
        if not c.is_zero():
            for j in range(p, len(v)):
                if not b[j].is_zero():
                    v[j] = v[j] - c * b[j]
    return v


def in_span(v, basis, pivots):
    return all(x.is_zero() for x in reduce_row(v, basis, pivots))


def coords_in_basis(v, basis, pivots, zero):
    """Coordinates of v in an rref basis, or None if v is outside it."""
    v = list(v)
    coords = [zero] * len(basis)
    for idx, (b, p) in enumerate(zip(basis, pivots)):
        c = v[p]
        if not c.is_zero():
            coords[idx] = c
            for j in range(p, len(v)):
                if not b[j].is_zero():
                    v[j] = v[j] - c * b[j]
    if any(not x.is_zero() for x in v):
        return None
    return coords


def nullspace(rows, ncols, zero, one):
    """Basis of the right kernel of the matrix given by dense rows."""
    basis, pivots = rref(rows, zero)
    pivset = set(pivots)
    out = []
    for j in range(ncols):
        if j in pivset:
            continue
        v = [zero] * ncols
        v[j] = one
        for b, p in zip(basis, pivots):
            if not b[j].is_zero():
                v[p] = -b[j]
        out.append(v)
    return out


def solve(rows, rhs, zero, one):
    """One solution x of A x = b for dense rows A, or None.

    rhs may be a single vector or a list of vectors (solved jointly).
    """
    single = rhs and not isinstance(rhs[0], list)
    rhss = [rhs] if single else rhs
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b[i] for b in rhss] for i, r in enumerate(rows)]
    basis, pivots, tail = rref_augmented(aug, zero, npivot=n)
    sols = []
    for k in range(len(rhss)):
        if any(not t[n + k].is_zero() for t in tail):
            sols.append(None)
            continue
        x = [zero] * n
        for b, p in zip(basis, pivots):
            x[p] = b[n + k]
        sols.append(x)
    return sols[0] if single else sols


def rank(rows, zero):
    basis, _ = rref(rows, zero)
    return len(basis)


def invert_dense(rows, zero, one):
    """Inverse of a square dense matrix, or None if singular."""
    n = len(rows)
    aug = [list(r) + [one if i == j else zero for j in range(n)]
           for i, r in enumerate(rows)]
    basis, pivots = rref(aug, zero)
    if pivots[:n] != list(range(n)) or len(basis) != n:
        return None
    return [b[n:] for b in basis]
