"""Concrete modules as labeled exact matrix representations.

A ModuleRep stores the three generator matrices E, F, H over Scalar
together with one WeightLabel per basis vector.  K and its inverse are
never stored or serialized; they are derived from H blockwise.  All
structural claims recorded in the labels are re-checked from the
matrices (weight blocks, nilpotency) before K is built.
"""

from __future__ import annotations

import json
from collections import namedtuple
from fractions import Fraction

from .algebra import AlgebraElement, pbw_normal_form
from .errors import (
    ModeUnsupportedError,
    ModuleInvalidError,
    RejectedInputError,
)
from .linalg import SMat
from .session import MODE_PAPER_LITERAL, Session

WeightLabel = namedtuple("WeightLabel", ["weight", "degree", "tag"])


class ModuleRep:
    """Finite-dimensional module given by exact generator matrices."""

    __slots__ = ("session", "dim", "labels", "matE", "matF", "matH",
                 "max_degree", "name", "_K", "_Kinv")

    def __init__(self, session, labels, matE, matF, matH, max_degree,
                 name=""):
        self.session = session
        self.dim = len(labels)
        self.labels = list(labels)
        self.matE = matE
        self.matF = matF
        self.matH = matH
        self.max_degree = max_degree
        self.name = name
        self._K = None
        self._Kinv = None

    @property
    def K(self):
        if self._K is None:
            self._K, self._Kinv = derive_K(self)
        return self._K

    @property
    def Kinv(self):
        if self._Kinv is None:
            self._K, self._Kinv = derive_K(self)
        return self._Kinv

    def generator_matrix(self, g):
        if g == "E":
            return self.matE
        if g == "F":
            return self.matF
        if g == "H":
            return self.matH
        if g == "K":
            return self.K
        if g == "Kinv":
            return self.Kinv
        raise RejectedInputError("unknown generator %r" % (g,))

    def weight_blocks(self):
        """Map weight -> sorted list of basis indices with that weight."""
        blocks = {}
        for i, lab in enumerate(self.labels):
            blocks.setdefault(lab.weight, []).append(i)
        return blocks

    def __repr__(self):
        return "ModuleRep(%s, dim=%d)" % (self.name or "?", self.dim)


# ---------------------------------------------------------------------
# K = q^H, blockwise
# ---------------------------------------------------------------------

def _h_nilpotent_blocks(mod):
    """Validated (weight, indices, nilpotent powers of H - w) per block.

    Checks that matH never connects distinct weight blocks and that
    H - w is nilpotent on each block; both are required for K = q^H
    to make sense.
    """
    s = mod.session
    blocks = mod.weight_blocks()
    windex = {}
    for w, idx in blocks.items():
        for i in idx:
            windex[i] = w
    for j in range(mod.dim):
        for i in mod.matH.rows[j]:
            if windex[i] != windex[j]:
                raise ModuleInvalidError(
                    "matH connects weight %s to weight %s (entry %d,%d)"
                    % (windex[j], windex[i], j, i)
                )
    out = []
    for w, idx in blocks.items():
        pos = {g: p for p, g in enumerate(idx)}
        n = len(idx)
        nil = SMat(s, n, n)
        for j in idx:
            for i, v in mod.matH.rows[j].items():
                nil.rows[pos[j]][pos[i]] = v
            nil.add_to(pos[j], pos[j], -s.from_rational(w))
        powers = [SMat.identity(s, n)]
        cur = nil
        while not cur.is_zero():
            powers.append(cur)
            if len(powers) > n:
                raise ModuleInvalidError(
                    "matH - %s*I is not nilpotent on its weight block" % (w,)
                )
            cur = cur @ nil
        out.append((w, idx, powers))
    return out


def derive_K(mod):
    """(K, Kinv) with K = q^w * sum_s c_s (H - w)^s on each weight block."""
    s = mod.session
    K = SMat(s, mod.dim, mod.dim)
    Kinv = SMat(s, mod.dim, mod.dim)
    for w, idx, powers in _h_nilpotent_blocks(mod):
        if s.mode == MODE_PAPER_LITERAL and len(powers) > 2:
            raise ModeUnsupportedError(
                "paper-literal coefficients give K*Kinv != I on a block "
                "with nilpotency index %d > 2 (weight %s); use the "
                "exponential mode" % (len(powers), w)
            )
        qw = s.from_cyc(s.q_power(w))
        qwi = s.from_cyc(s.q_power(-w))
        for p, nil_p in enumerate(powers):
            c = s.degree_drop_coeff(p)
            cm = c if p % 2 == 0 else -c
            for a, row in enumerate(nil_p.rows):
                for b, v in row.items():
                    K.add_to(idx[a], idx[b], qw * c * v)
                    Kinv.add_to(idx[a], idx[b], qwi * cm * v)
    return K, Kinv


# ---------------------------------------------------------------------
# relation verification
# ---------------------------------------------------------------------

def _witness(diff):
    for i, row in enumerate(diff.rows):
        for j, v in sorted(row.items()):
            return "entry (%d,%d) = %s" % (i, j, diff.session.format_scalar(v))
    return None


def verify_relations(mod):
    """Check the defining relations as exact matrix identities.

    Returns {"status": "pass"|"fail", "items": [...]} where each item is
    {"check": name, "ok": bool, "witness": str or None}.
    """
    s = mod.session
    items = []

    def check(name, diff):
        w = None if diff.is_zero() else _witness(diff)
        items.append({"check": name, "ok": w is None, "witness": w})

    try:
        _h_nilpotent_blocks(mod)
        items.append({"check": "H weight-block structure", "ok": True,
                      "witness": None})
    except ModuleInvalidError as e:
        items.append({"check": "H weight-block structure", "ok": False,
                      "witness": str(e)})
        return {"status": "fail", "items": items}

    E, F, H = mod.matE, mod.matF, mod.matH
    K, Kinv = mod.K, mod.Kinv
    ident = SMat.identity(s, mod.dim)
    q2 = s.from_cyc(s.q_power(2))
    qm2 = s.from_cyc(s.q_power(-2))
    dqi = s.from_cyc((s.q_power(1) - s.q_power(-1)).inv())

    check("K*Kinv = I", K @ Kinv - ident)
    check("K*E = q^2 E*K", K @ E - (E @ K).scale(q2))
    check("K*F = q^-2 F*K", K @ F - (F @ K).scale(qm2))
    check("[E,F] = (K-Kinv)/(q-q^-1)",
          E @ F - F @ E - (K - Kinv).scale(dqi))
    check("H*K = K*H", H @ K - K @ H)
    check("[H,E] = 2E", H @ E - E @ H - E.scale(s.from_rational(2)))
    check("[H,F] = -2F", H @ F - F @ H + F.scale(s.from_rational(2)))
    check("E^r = 0", E.matpow(s.r))
    check("F^r = 0", F.matpow(s.r))

    ok = all(it["ok"] for it in items)
    return {"status": "pass" if ok else "fail", "items": items}


def weight_decomposition(mod):
    """Per-weight dimensions and nilpotency degrees, verified from matH.

    Returns a list of (weight, degree, indices) sorted by descending
    weight, where degree is the actual maximal nilpotency degree of
    H - w on the block (may be below the declared max_degree).
    """
    out = []
    for w, idx, powers in _h_nilpotent_blocks(mod):
        deg = len(powers) - 1
        if deg > mod.max_degree:
            raise ModuleInvalidError(
                "weight %s has nilpotency degree %d > declared max %d"
                % (w, deg, mod.max_degree)
            )
        out.append((w, deg, idx))
    out.sort(key=lambda t: t[0], reverse=True)
    return out


# ---------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------

def build_one_dim(session, k):
    """One-dimensional module where H acts by k*ell/2 and E = F = 0."""
    w = session.check_weight(Fraction(k * session.ell, 2))
    lab = WeightLabel(w, 0, "c")
    z = SMat.zeros(session, 1, 1)
    matH = SMat(session, 1, 1)
    matH.rows[0][0] = session.from_rational(w)
    return ModuleRep(session, [lab], z, z.copy(), matH, 0,
                     name="C(%s)" % (w,))


def build_simple(session, i):
    """The (i+1)-dimensional simple module with highest weight i."""
    if not (0 <= i <= session.r - 1):
        raise RejectedInputError(
            "simple index %d outside 0..%d" % (i, session.r - 1)
        )
    n = i + 1
    labels = [WeightLabel(Fraction(i - 2 * k), 0, "s%d" % k)
              for k in range(n)]
    matE = SMat(session, n, n)
    matF = SMat(session, n, n)
    matH = SMat(session, n, n)
    for k in range(n):
        matH.rows[k][k] = session.from_rational(i - 2 * k)
        if k < i:
            matF.rows[k + 1][k] = session.one
        if k > 0:
            c = session.quantum_integer(k) * session.quantum_integer(
                i + 1 - k)
            matE.rows[k - 1][k] = session.from_cyc(c)
    return ModuleRep(session, labels, matE, matF, matH, 0,
                     name="L(%d)" % i)


def _chain_ops(session, lam, m):
    """H, K, Kinv on the highest-weight chain v^0..v^m (shift drops k)."""
    n = m + 1
    shift = SMat(session, n, n)
    for k in range(1, n):
        shift.rows[k - 1][k] = session.one
    Hc = shift.copy()
    for k in range(n):
        Hc.add_to(k, k, session.from_rational(lam))
    if session.mode == MODE_PAPER_LITERAL and m >= 2:
        raise ModeUnsupportedError(
            "paper-literal coefficients give K*Kinv != I for degree %d >= 2;"
            " use the exponential mode" % m
        )
    qw = session.from_cyc(session.q_power(lam))
    qwi = session.from_cyc(session.q_power(-lam))
    Kc = SMat.zeros(session, n, n)
    Kci = SMat.zeros(session, n, n)
    power = SMat.identity(session, n)
    for p in range(n):
        c = session.degree_drop_coeff(p)
        cm = c if p % 2 == 0 else -c
        Kc = Kc + power.scale(qw * c)
        Kci = Kci + power.scale(qwi * cm)
        power = power @ shift
    return Hc, Kc, Kci


def build_generalized_verma(session, lam, m):
    """V(lam, m): universal module on a degree-m highest-weight chain.

    Basis F^t v^k with 0 <= t <= r-1, 0 <= k <= m, index t*(m+1)+k.
    The E-action is obtained by PBW-rewriting E*F^t and evaluating the
    normal-form words on the chain (E kills the chain, F^a records the
    row family), so no closed formula is transcribed by hand.
    """
    lam = session.check_weight(lam)
    r = session.r
    n = m + 1
    dim = r * n
    labels = [WeightLabel(lam - 2 * t, k, "F^%d v^%d" % (t, k))
              for t in range(r) for k in range(n)]
    matH = SMat(session, dim, dim)
    matF = SMat(session, dim, dim)
    matE = SMat(session, dim, dim)
    for t in range(r):
        for k in range(n):
            col = t * n + k
            matH.rows[col][col] = session.from_rational(lam - 2 * t)
            if k > 0:
                matH.rows[col - 1][col] = session.one
            if t < r - 1:
                matF.rows[col + n][col] = session.one
    Hc, Kc, Kci = _chain_ops(session, lam, m)
    for t in range(1, r):
        word = ("E",) + ("F",) * t
        nf = pbw_normal_form(AlgebraElement.from_word(session, word))
        for w, coeff in nf.terms.items():
            a = 0
            while a < len(w) and w[a] == "F":
                a += 1
            rest = w[a:]
            if "E" in rest:
                continue  # the raising generator kills the chain
            op = SMat.identity(session, n)
            for g in rest:  # leftmost acts last
                base = Kc if g == "K" else (Kci if g == "Kinv" else Hc)
                op = op @ base
            for k in range(n):
                col = t * n + k
                for kk in range(n):
                    v = op.rows[kk].get(k)
                    if v is not None:
                        matE.add_to(a * n + kk, col, coeff * v)
    return ModuleRep(session, labels, matE, matF, matH, m,
                     name="V(%s,%d)" % (lam, m))


def build_dual(mod):
    """The dual module with the action twisted by the automorphism omega.

    Generators act by Edual = -(K F)^T, Fdual = -(E Kinv)^T, Hdual = H^T;
    weights are preserved and chain degrees are reflected.
    """
    s = mod.session
    m = mod.max_degree
    labels = [WeightLabel(lab.weight, m - lab.degree, "(%s)'" % lab.tag)
              for lab in mod.labels]
    matE = (-(mod.K @ mod.matF)).transpose()
    matF = (-(mod.matE @ mod.Kinv)).transpose()
    matH = mod.matH.transpose()
    return ModuleRep(s, labels, matE, matF, matH, m,
                     name="dual(%s)" % (mod.name or "?"))


def build_tensor(a, b):
    """a (x) b with the action given by the coproduct."""
    assert a.session is b.session
    s = a.session
    nb = b.dim
    labels = []
    for la in a.labels:
        for lb in b.labels:
            labels.append(WeightLabel(la.weight + lb.weight,
                                      la.degree + lb.degree,
                                      "%s|%s" % (la.tag, lb.tag)))
    ia = SMat.identity(s, a.dim)
    ib = SMat.identity(s, nb)
    matE = ia.kron(b.matE) + a.matE.kron(b.K)
    matF = a.Kinv.kron(b.matF) + a.matF.kron(ib)
    matH = a.matH.kron(ib) + ia.kron(b.matH)
    return ModuleRep(s, labels, matE, matF, matH,
                     a.max_degree + b.max_degree,
                     name="(%s)x(%s)" % (a.name or "?", b.name or "?"))


def direct_sum(a, b):
    assert a.session is b.session
    s = a.session
    na = a.dim
    dim = na + b.dim
    labels = list(a.labels) + list(b.labels)

    def block(x, y):
        out = SMat(s, dim, dim)
        for i, row in enumerate(x.rows):
            out.rows[i] = dict(row)
        for i, row in enumerate(y.rows):
            out.rows[na + i] = {na + j: v for j, v in row.items()}
        return out

    return ModuleRep(s, labels, block(a.matE, b.matE),
                     block(a.matF, b.matF), block(a.matH, b.matH),
                     max(a.max_degree, b.max_degree),
                     name="(%s)+(%s)" % (a.name or "?", b.name or "?"))


# ---------------------------------------------------------------------
# serialization (K is derived, never stored)
# ---------------------------------------------------------------------

def dump_module(mod):
    s = mod.session

    def matrix(mat):
        dense = mat.to_dense()
        return [[s.format_scalar(v) for v in row] for row in dense]

    return {
        "session": s.describe(),
        "dim": mod.dim,
        "max_degree": mod.max_degree,
        "labels": [
            {"weight": str(lab.weight), "degree": lab.degree,
             "tag": lab.tag}
            for lab in mod.labels
        ],
        "E": matrix(mod.matE),
        "F": matrix(mod.matF),
        "H": matrix(mod.matH),
    }


def load_module(data, session=None):
    if session is None:
        cfg = data["session"]
        session = Session(cfg["ell"], cfg.get("N", 2),
                          cfg.get("mode", "exponential"))
    labels = [
        WeightLabel(Fraction(lab["weight"]), lab["degree"], lab.get("tag", ""))
        for lab in data["labels"]
    ]
    dim = data["dim"]
    if len(labels) != dim:
        raise RejectedInputError("label count does not match dim")

    def matrix(rows):
        out = SMat(session, dim, dim)
        for i, row in enumerate(rows):
            for j, text in enumerate(row):
                out.set(i, j, session.parse_scalar(text))
        return out

    return ModuleRep(session, labels, matrix(data["E"]), matrix(data["F"]),
                     matrix(data["H"]), data["max_degree"], name="loaded")


def dump_module_json(mod, path):
    with open(path, "w") as fh:
        json.dump(dump_module(mod), fh, indent=1)


def load_module_json(path, session=None):
    with open(path) as fh:
        return load_module(json.load(fh), session)
