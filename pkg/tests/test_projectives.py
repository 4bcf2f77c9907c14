"""Projective covers: construction, generation, Casimir splitting,
cross-construction, and structural certification."""

from fractions import Fraction

import pytest

from uqwb import (
    RejectedInputError,
    build_dual,
    build_one_dim,
    build_projective_cover,
    build_simple,
    build_tensor,
    build_via_tensor_summand,
    casimir_eigenvalue,
    casimir_matrix,
    certify_projcover_structure,
    extract_costandard_filtration,
    generator_index,
    iso_test,
    proj_index,
    verify_dominant_generation,
    verify_relations,
)


def test_proj_index_is_a_bijection(session):
    r = session.r
    for i in (0, r - 2):
        for m in (0, 1):
            j = r - 2 - i
            seen = set()
            fams = [("T", i + 1), ("S", i + 1), ("L", r - 1 - i),
                    ("R", j + 1)]
            for fam, nk in fams:
                for k in range(nk):
                    for s in range(m + 1):
                        idx = proj_index(session, i, m, fam, k, s)
                        assert 0 <= idx < 2 * (m + 1) * r
                        seen.add(idx)
            assert len(seen) == 2 * (m + 1) * r


def test_cover_dimension_law(session):
    for i in range(0, session.r - 1):
        for m in (0, 1, 2):
            p = build_projective_cover(session, i, m)
            assert p.dim == 2 * (m + 1) * session.r


def test_cover_weight_profile(session):
    i, m = 1, 1
    r = session.r
    j = r - 2 - i
    p = build_projective_cover(session, i, m)
    blocks = p.weight_blocks()
    assert len(blocks[Fraction(i)]) == 2 * (m + 1)
    assert len(blocks[Fraction(j + r)]) == m + 1
    assert len(blocks[Fraction(-j - r)]) == m + 1


def test_cover_relations_pass(session):
    for i in (0, session.r - 2):
        for m in (0, 1):
            p = build_projective_cover(session, i, m)
            rep = verify_relations(p)
            assert rep["status"] == "pass", \
                [x for x in rep["items"] if not x["ok"]]


def test_cover_index_validation(session):
    with pytest.raises(RejectedInputError):
        build_projective_cover(session, session.r - 1, 0)
    with pytest.raises(RejectedInputError):
        build_projective_cover(session, -1, 0)


def test_generator_recovers_module(session):
    i, m = 1, 1
    p = build_projective_cover(session, i, m)
    rep = verify_dominant_generation(session, p, i, m)
    assert rep["status"] == "pass", \
        [x for x in rep["items"] if not x["ok"]]


def test_degree_zero_boundary_vanishing(session):
    """At m = 0 the classical boundary relation E w^S_{i,0} = 0 holds."""
    i = 1
    p = build_projective_cover(session, i, 0)
    si = proj_index(session, i, 0, "S", 0, 0)
    col = [p.matE.get(a, si) for a in range(p.dim)]
    assert all(x.is_zero() for x in col)


def test_generator_weight_and_degree(session):
    i, m = 0, 2
    p = build_projective_cover(session, i, m)
    gi = generator_index(session, i, m)
    lab = p.labels[gi]
    assert lab.weight == Fraction(i)
    assert lab.degree == m


def test_twist_matches_tensor_by_one_dim(session):
    i, m, k = 1, 1, 1
    tw = build_projective_cover(session, i, m, twist=k)
    plain = build_projective_cover(session, i, m)
    via = build_tensor(plain, build_one_dim(session, k))
    assert iso_test(tw, via) is not None


def test_casimir_is_central_and_constant_on_verma(session):
    from uqwb import build_generalized_verma
    lam = Fraction(2)
    mod = build_generalized_verma(session, lam, 1)
    omega = casimir_matrix(mod)  # raises if not central
    chi = session.from_cyc(casimir_eigenvalue(session, lam))
    # on a highest-weight vector the Casimir acts by chi
    v = [session.zero] * mod.dim
    v[0] = session.one
    img = omega.apply(v)
    assert img[0] == chi


def test_casimir_eigenvalue_pairs(session):
    """Linked weights i and 2r-2-i share the Casimir eigenvalue; a
    typical neighbour does not."""
    r = session.r
    i = 1
    assert casimir_eigenvalue(session, Fraction(i)) \
        == casimir_eigenvalue(session, Fraction(2 * r - 2 - i))
    # weights 0 and 1 are never linked (1 != +-2 mod ell for ell >= 4)
    assert casimir_eigenvalue(session, Fraction(0)) \
        != casimir_eigenvalue(session, Fraction(1))


def test_tensor_summand_matches_cover(session):
    for i, m in [(0, 0), (1, 1)]:
        mod = build_via_tensor_summand(session, i, m)
        assert mod.dim == 2 * (m + 1) * session.r
        ref = build_projective_cover(session, i, m)
        assert iso_test(mod, ref) is not None


def test_certify_structure(session):
    rep = certify_projcover_structure(session, 1, 1)
    assert rep["status"] == "pass", \
        [x for x in rep["items"] if not x["ok"]]


def test_cover_is_self_dual(session):
    p = build_projective_cover(session, 0, 1)
    assert iso_test(build_dual(p), p) is not None


def test_cover_has_costandard_filtration(session):
    """Projective implies tilting: a costandard filtration exists."""
    p = build_projective_cover(session, 1, 0)
    cert = extract_costandard_filtration(p, 0)
    assert cert is not None
    assert len(cert.claims) == 2


def test_summand_rejects_untypical_setup():
    """The shift weight must be typical; the guard is exercised through
    the public error type on an impossible session if ever hit."""
    # For every valid (i, m) the canonical shift is typical by
    # construction, so instead check the certification path end to end
    # on the boundary index i = r - 2.
    from uqwb import Session
    s = Session(5)
    mod = build_via_tensor_summand(s, s.r - 2, 0)
    assert iso_test(mod, build_projective_cover(s, s.r - 2, 0)) is not None
