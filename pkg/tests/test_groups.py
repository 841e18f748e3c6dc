"""Group engines against presentations and the affine-isometry oracle."""

from __future__ import annotations

import random

import pytest
from affine_oracle import AffineRep

from wct.groups import (
    GROUP_IDS,
    Element,
    all_groups,
    element_from_json,
    load_group,
    parse_element,
)
from wct.lattice import matmul


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_presentation(gid):
    report = load_group(gid).check_presentation()
    assert report["violations"] == []
    assert all(r["holds"] for r in report["relations"])


def test_transversal_sizes():
    sizes = {g.gid: len(g.F) for g in all_groups()}
    assert sizes == {
        "p1": 1, "p2": 2, "p3": 3, "p4": 4, "p6": 6,
        "cm": 2, "pm": 2, "pg": 2,
        "c2mm": 4, "p2mm": 4, "p2mg": 4, "p2gg": 4,
        "p3m1": 6, "p31m": 6, "p4mg": 8, "p4mm": 8, "p6m": 12,
    }


def test_known_products():
    p4 = load_group("p4")
    assert p4.mul(p4.element(1, 0, "rho"), p4.element(0, 1, "rho")) == p4.element(2, 0, "rho2")
    assert p4.inv(p4.element(1, 0, "rho")) == p4.element(0, -1, "rho3")

    pg = load_group("pg")
    gam = pg.element(0, 0, "gamma")
    assert pg.mul(gam, gam) == pg.element(1, 0)
    assert pg.inv(gam) == pg.element(-1, 0, "gamma")

    p4mg = load_group("p4mg")
    assert p4mg.mul(p4mg.element(0, 0, "gamma"), p4mg.element(0, 0, "rho")) \
        == p4mg.element(0, -1, "rho3gamma")
    rg = p4mg.element(0, 0, "rhogamma")
    assert p4mg.mul(rg, rg) == p4mg.identity

    p2mg = load_group("p2mg")
    assert p2mg.mul(p2mg.element(0, 0, "sigma"), p2mg.element(0, 0, "rho")) \
        == p2mg.element(0, -1, "rhosigma")

    p2gg = load_group("p2gg")
    assert p2gg.mul(p2gg.element(0, 0, "gamma"), p2gg.element(0, 0, "rho")) \
        == p2gg.element(1, -1, "rhogamma")


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_act_is_antihomomorphism(gid):
    G = load_group(gid)
    for f in G.F:
        for g in G.F:
            h = G.fprod[(f, g)][1]
            assert G.act[h] == matmul(G.act[g], G.act[f]), (f, g)


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_mul_matches_affine_oracle(gid):
    G = load_group(gid)
    rep = AffineRep(G)
    small = G.ball(1)
    for g in small:
        for h in small:
            assert G.mul(g, h) == rep.mul(g, h), (g, h)


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_inv_and_conj_match_affine_oracle(gid):
    G = load_group(gid)
    rep = AffineRep(G)
    rnd = random.Random(hash(gid) & 0xFFFF)
    big = G.ball(4)
    for g in G.ball(2):
        assert G.inv(g) == rep.inv(g)
    for _ in range(400):
        g, h = rnd.choice(big), rnd.choice(big)
        assert G.mul(g, h) == rep.mul(g, h)
        assert G.conj(g, h) == rep.conj(g, h)


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_group_axioms_sampled(gid):
    G = load_group(gid)
    rnd = random.Random(42)
    B = G.ball(2)
    for _ in range(200):
        a, b, c = rnd.choice(B), rnd.choice(B), rnd.choice(B)
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
        assert G.mul(a, G.inv(a)) == G.identity
        assert G.mul(G.inv(a), a) == G.identity
        assert G.mul(a, G.identity) == a
        assert G.mul(G.identity, a) == a


def test_huge_coordinates_stay_exact():
    G = load_group("p6m")
    n = 10 ** 40
    g = G.element(n, -n + 3, "rho5sigma")
    h = G.element(2 * n, n, "rho2")
    prod = G.mul(g, h)
    assert G.mul(prod, G.inv(h)) == g
    assert G.mul(G.inv(g), prod) == h


def test_ball_shape():
    G = load_group("p4mg")
    b2 = G.ball(2)
    assert len(b2) == 25 * 8
    assert b2[0] == G.identity
    assert len(set(b2)) == len(b2)
    # norm-sorted: translations grow outward
    norms = [max(abs(g.a[0]), abs(g.a[1])) for g in b2]
    assert norms == sorted(norms)


def test_point_conj_table():
    for G in all_groups():
        for f in G.F:
            for fp in G.F:
                expected = G.conj(Element((0, 0), f), Element((0, 0), fp))
                assert G.point_conj[(f, fp)] == (expected.a, expected.f)


def test_power():
    p6 = load_group("p6")
    r = p6.element(1, 2, "rho")
    acc = p6.identity
    for k in range(8):
        assert p6.power(r, k) == acc
        acc = p6.mul(acc, r)
    assert p6.power(r, -3) == p6.inv(p6.power(r, 3))


def test_parse_and_json_round_trip():
    G = load_group("p4mg")
    g = parse_element(G, "x^2 y^-1 rho2gamma")
    assert g == G.element(2, -1, "rho2gamma")
    assert parse_element(G, "1") == G.identity
    assert parse_element(G, "gamma") == G.element(0, 0, "gamma")
    assert parse_element(G, "x*y*rho") == G.element(1, 1, "rho")
    assert element_from_json(g.to_json()) == g

    with pytest.raises(ValueError):
        parse_element(G, "sigma")
    with pytest.raises(ValueError):
        parse_element(G, "rho x")
    with pytest.raises(ValueError):
        G.element(0, 0, "nope")
    with pytest.raises(ValueError):
        load_group("p5")


def test_word_rejects_missing_generator():
    p1 = load_group("p1")
    with pytest.raises(ValueError):
        p1.word("r")
