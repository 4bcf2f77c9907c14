"""Module constructors, relation verification, K-derivation, duals,
tensors, and serialization round-trips."""

import json
from fractions import Fraction

import pytest

from uqwb import (
    ModeUnsupportedError,
    RejectedInputError,
    Session,
    build_dual,
    build_generalized_verma,
    build_one_dim,
    build_simple,
    build_tensor,
    derive_K,
    direct_sum,
    dump_module,
    load_module,
    verify_relations,
    weight_decomposition,
)
from uqwb.linalg import SMat


def assert_pass(mod):
    rep = verify_relations(mod)
    bad = [it for it in rep["items"] if not it["ok"]]
    assert rep["status"] == "pass", bad


# ---------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------

def test_one_dim_dimensions_and_relations(session):
    for k in (-1, 0, 1, 2):
        mod = build_one_dim(session, k)
        assert mod.dim == 1
        assert mod.labels[0].weight == Fraction(k * session.ell, 2)
        assert_pass(mod)


def test_one_dim_k_value_ell5():
    """K acts by q^{k*ell/2}; at ell=5, k=2 that is q^5 = 1."""
    s = Session(5)
    mod = build_one_dim(s, 2)
    assert mod.K.get(0, 0) == s.one


def test_simple_dimensions_and_relations(session):
    for i in range(0, session.r):
        mod = build_simple(session, i)
        assert mod.dim == i + 1
        assert_pass(mod)
    with pytest.raises(RejectedInputError):
        build_simple(session, session.r)


def test_verma_dimension_law(session):
    for m in (0, 1, 2):
        for lam in (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(-2)):
            mod = build_generalized_verma(session, lam, m)
            assert mod.dim == (m + 1) * session.r
            assert_pass(mod)


def test_weight_decomposition_consistency(session):
    mod = build_generalized_verma(session, Fraction(1), 2)
    decomp = weight_decomposition(mod)
    assert sum(len(idx) for _, _, idx in decomp) == mod.dim
    for w, deg, idx in decomp:
        assert deg == 2
        assert len(idx) == 3
    weights = [w for w, _, _ in decomp]
    assert weights == sorted(weights, reverse=True)
    assert weights[0] == Fraction(1)


# ---------------------------------------------------------------------
# K derivation
# ---------------------------------------------------------------------

def independent_k(mod):
    """Blockwise q^w * exp(tau * (H - w)), built directly in the test."""
    s = mod.session
    K = SMat(s, mod.dim, mod.dim)
    blocks = mod.weight_blocks()
    for w, idx in blocks.items():
        n = len(idx)
        pos = {g: p for p, g in enumerate(idx)}
        nil = SMat(s, n, n)
        for j in idx:
            for i, v in mod.matH.rows[j].items():
                nil.rows[pos[j]][pos[i]] = v
            nil.add_to(pos[j], pos[j], -s.from_rational(w))
        qw = s.from_cyc(s.q_power(w))
        fact = Fraction(1)
        power = SMat.identity(s, n)
        p = 0
        while True:
            coeff = s.tau_power(p, Fraction(1) / fact) if p else s.one
            for a, row in enumerate(power.rows):
                for b, v in row.items():
                    K.add_to(idx[a], idx[b], qw * coeff * v)
            power = power @ nil
            if power.is_zero():
                break
            p += 1
            fact *= p
    return K


@pytest.mark.parametrize("m", [0, 1, 2])
def test_derive_k_is_blockwise_exponential(session, m):
    mod = build_generalized_verma(session, Fraction(1), m)
    K, Kinv = derive_K(mod)
    assert K == independent_k(mod)
    assert K @ Kinv == SMat.identity(session, mod.dim)


def test_k_conjugates_e_and_f(session):
    mod = build_generalized_verma(session, Fraction(1, 2), 1)
    q2 = session.from_cyc(session.q_power(2))
    assert mod.K @ mod.matE @ mod.Kinv == mod.matE.scale(q2)
    assert (mod.K @ mod.matF @ mod.Kinv
            == mod.matF.scale(session.from_cyc(session.q_power(-2))))


def test_paper_literal_mode_small_degrees_agree():
    """Up to degree 1 the two coefficient modes coincide."""
    se = Session(5)
    sp = Session(5, mode="paper-literal")
    for m in (0, 1):
        a = build_generalized_verma(se, Fraction(1), m)
        b = build_generalized_verma(sp, Fraction(1), m)
        assert dump_module(a)["E"] == dump_module(b)["E"]
        assert_pass(b)


def test_paper_literal_mode_degree_two_diagnosed():
    sp = Session(5, mode="paper-literal")
    with pytest.raises(ModeUnsupportedError):
        build_generalized_verma(sp, Fraction(1), 2)


# ---------------------------------------------------------------------
# duals and tensors
# ---------------------------------------------------------------------

def test_dual_preserves_weight_dimensions(session):
    mod = build_generalized_verma(session, Fraction(2), 1)
    dual = build_dual(mod)
    assert_pass(dual)
    assert dual.weight_blocks().keys() == mod.weight_blocks().keys()
    for w, idx in mod.weight_blocks().items():
        assert len(dual.weight_blocks()[w]) == len(idx)


def test_double_dual_matrices(session):
    """dual(dual(m)) has the same H and weight data as m (the module is
    isomorphic; matrix-level agreement of H is automatic)."""
    mod = build_generalized_verma(session, Fraction(1), 1)
    dd = build_dual(build_dual(mod))
    assert dd.matH == mod.matH
    assert_pass(dd)


def test_tensor_dimension_and_relations(session):
    a = build_generalized_verma(session, Fraction(1), 1)
    b = build_simple(session, 1)
    big = build_tensor(a, b)
    assert big.dim == a.dim * b.dim
    assert_pass(big)


def test_tensor_associativity(session):
    a = build_simple(session, 1)
    b = build_one_dim(session, 1)
    c = build_generalized_verma(session, Fraction(0), 1)
    left = build_tensor(build_tensor(a, b), c)
    right = build_tensor(a, build_tensor(b, c))
    for g in ("E", "F", "H"):
        assert left.generator_matrix(g) == right.generator_matrix(g)


def test_direct_sum(session):
    a = build_simple(session, 1)
    b = build_simple(session, 0)
    mod = direct_sum(a, b)
    assert mod.dim == a.dim + b.dim
    assert_pass(mod)


def test_dual_annihilator_is_submodule(session):
    """The annihilator of a submodule is a submodule of complementary
    dimension in the dual: exactness of duality at desk scale."""
    from uqwb import submodule_generated
    from uqwb.structure import annihilator_basis
    mod = build_generalized_verma(session, Fraction(1), 1)
    z = session.zero
    seed = [z] * mod.dim
    seed[mod.dim - 1] = session.one  # lowest basis vector
    sub = submodule_generated(mod, [seed])
    assert 0 < sub.dim < mod.dim
    dual = build_dual(mod)
    cosub = annihilator_basis(dual, sub.rows)
    assert cosub.dim == mod.dim - sub.dim
    assert cosub.is_closed()


# ---------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------

def test_dump_load_round_trip(session, tmp_path):
    mod = build_generalized_verma(session, Fraction(1, 2), 1)
    data = dump_module(mod)
    text = json.dumps(data)
    back = load_module(json.loads(text))
    assert back.dim == mod.dim
    assert back.matE == mod.matE
    assert back.matF == mod.matF
    assert back.matH == mod.matH
    assert [lab.weight for lab in back.labels] \
        == [lab.weight for lab in mod.labels]
    assert_pass(back)


def test_load_rejects_mismatched_labels(session):
    mod = build_simple(session, 1)
    data = dump_module(mod)
    data["labels"] = data["labels"][:-1]
    with pytest.raises(RejectedInputError):
        load_module(data)
