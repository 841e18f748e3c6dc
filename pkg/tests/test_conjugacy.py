"""Closed-form conjugacy against brute conjugator sweeps."""

from __future__ import annotations

import random

import pytest

from wct.conjugacy import (
    CosetUnionClass,
    TranslationClass,
    antifixed_line,
    brute_is_conjugate,
    conjugacy_class,
    conjugates_within,
    fixed_line,
    involution_loci,
    is_conjugate,
    kf,
    square_affine,
    squares_image,
)
from wct.groups import GROUP_IDS, all_groups, load_group
from wct.lattice import Coset, Sublattice, matvec


def test_kf_frozen_values():
    p6 = load_group("p6")
    assert kf(p6, "1") == Sublattice.zero(2)
    assert kf(p6, "rho2") == Sublattice(2, [(-2, 1), (1, 1)])
    assert kf(p6, "rho2").index() == 3
    assert kf(p6, "rho3") == Sublattice(2, [(2, 0), (0, 2)])
    meet = kf(p6, "rho2").intersect(kf(p6, "rho3"))
    assert meet == Sublattice(2, [(2, 2), (2, -4)])
    assert meet.index() == 12

    # rotations of full point symmetry have K of finite index; pure mirrors do not
    assert kf(load_group("p2"), "rho").index() == 4
    assert kf(load_group("pm"), "sigma").rows == ((0, 2),)
    assert kf(load_group("cm"), "sigma").rows == ((1, -1),)


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_kf_invariance(gid):
    G = load_group(gid)
    for f in G.F:
        k = kf(G, f)
        # K is shared with the inverse part and stable under the part itself
        assert kf(G, G.point_inv[f][0]) == k
        assert k.transform(G.act[f]) == k
        # offsets produced by conjugating with translations stay inside K
        g = G.element(3, -2, f)
        for t in ((1, 0), (0, 1), (2, 3)):
            moved = G.conj(g, G.element(*t))
            assert moved.f == f
            assert k.contains((moved.a[0] - g.a[0], moved.a[1] - g.a[1]))


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_is_conjugate_matches_brute(gid):
    G = load_group(gid)
    elems = G.ball(1)
    brute = {g: conjugates_within(G, g, 6) for g in elems}
    for g in elems:
        for h in elems:
            assert is_conjugate(G, g, h) == (h in brute[g]), (g, h)


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_class_descriptor_consistency(gid):
    G = load_group(gid)
    rnd = random.Random(17)
    elems = G.ball(2)
    for g in rnd.sample(elems, 20):
        desc = conjugacy_class(G, g)
        assert desc.contains(g)
        for c in elems:
            assert desc.contains(G.conj(g, c))
        for h in rnd.sample(elems, min(30, len(elems))):
            assert desc.contains(h) == is_conjugate(G, g, h)


def test_classes_partition():
    for gid in ("p2", "p4", "cm", "pg", "p2gg", "p4mg"):
        G = load_group(gid)
        elems = G.ball(1)
        for g in elems:
            for h in elems:
                same = conjugacy_class(G, g) == conjugacy_class(G, h)
                assert same == is_conjugate(G, g, h), (gid, g, h)


def test_translation_classes_are_orbits():
    for G in all_groups():
        a = (2, -1)
        cls = conjugacy_class(G, G.element(*a))
        assert isinstance(cls, TranslationClass)
        assert cls.elements == frozenset(
            G.element(*matvec(G.act[f], a)) for f in G.F
        )
        assert len(G.F) % cls.size() == 0


def test_known_conjugacy_decisions():
    c2mm = load_group("c2mm")
    assert not is_conjugate(c2mm, c2mm.element(1, 1, "rho"), c2mm.element(0, 2, "rho"))
    assert is_conjugate(c2mm, c2mm.element(0, 0, "rho"), c2mm.element(2, 0, "rho"))

    # translations conjugate only within the point orbit
    p4 = load_group("p4")
    assert is_conjugate(p4, p4.element(1, 0), p4.element(0, -1))
    assert not is_conjugate(p4, p4.element(1, 0), p4.element(1, 1))
    assert not is_conjugate(p4, p4.element(1, 0), p4.element(1, 0, "rho"))

    # a rotation never meets a reflection part
    p4mm = load_group("p4mm")
    assert not is_conjugate(p4mm, p4mm.element(0, 0, "rho"), p4mm.element(0, 0, "sigma"))


def test_class_json_shape():
    p4 = load_group("p4")
    data = conjugacy_class(p4, p4.element(0, 0, "rho")).to_json()
    assert data["kind"] == "cosetUnion"
    assert all(set(p) == {"f", "offset", "lattice"} for p in data["pieces"])
    tdata = conjugacy_class(p4, p4.element(1, 0)).to_json()
    assert tdata["kind"] == "finiteSet"
    assert len(tdata["elements"]) == 4


def test_mirror_lines():
    p4mm = load_group("p4mm")
    assert fixed_line(p4mm, "sigma") == Sublattice(2, [(1, 0)])
    assert antifixed_line(p4mm, "sigma") == Sublattice(2, [(0, 1)])
    assert fixed_line(p4mm, "rhosigma") == Sublattice(2, [(1, -1)])
    assert antifixed_line(p4mm, "rhosigma") == Sublattice(2, [(1, 1)])

    cm = load_group("cm")
    assert fixed_line(cm, "sigma") == Sublattice(2, [(1, 1)])
    assert antifixed_line(cm, "sigma") == Sublattice(2, [(1, -1)])

    # the axis kernel is primitive even when the slack lattice K is not:
    # p2mg has L_perp(rho sigma) = <x> while K_{rho sigma} contains only x^2
    p2mg = load_group("p2mg")
    assert antifixed_line(p2mg, "rhosigma") == Sublattice(2, [(1, 0)])
    assert kf(p2mg, "rhosigma") == Sublattice(2, [(2, 0)])

    with pytest.raises(ValueError):
        fixed_line(p4mm, "rho")
    with pytest.raises(ValueError):
        antifixed_line(load_group("p2"), "rho")


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_square_affine_matches_mul(gid):
    G = load_group(gid)
    for f in G.F:
        m, c, h = square_affine(G, f)
        for a in ((0, 0), (1, 0), (0, 1), (3, -2), (-4, 7)):
            g = G.element(*a, f)
            assert G.mul(g, g) == G.element(*[x + y for x, y in zip(matvec(m, a), c)], h)


def test_squares_image_frozen():
    pg = load_group("pg")
    h, img = squares_image(pg, "gamma")
    assert h == "1" and img == Coset((1, 0), Sublattice(2, [(2, 0)]))

    p2gg = load_group("p2gg")
    h2, img2 = squares_image(p2gg, "gamma")
    assert h2 == "1" and img2 == Coset((1, 0), Sublattice(2, [(2, 0)]))

    p4mg = load_group("p4mg")
    h3, img3 = squares_image(p4mg, "gamma")
    assert h3 == "1" and img3 == Coset((1, 0), Sublattice(2, [(2, 0)]))
    h4, img4 = squares_image(p4mg, "rhogamma")
    assert h4 == "1" and img4 == Coset((0, 0), Sublattice(2, [(1, -1)]))


@pytest.mark.parametrize("gid", GROUP_IDS)
def test_involution_loci_vs_scan(gid):
    G = load_group(gid)
    loci = involution_loci(G)
    assert "1" not in loci
    for g in G.ball(3):
        if g.f == "1":
            continue
        is_inv = G.mul(g, g) == G.identity
        locus = loci[g.f]
        assert is_inv == (locus is not None and locus.contains(g.a)), g


def test_p4mg_involution_loci_frozen():
    G = load_group("p4mg")
    loci = {f: c for f, c in involution_loci(G).items() if c is not None}
    assert set(loci) == {"rho2", "rhogamma", "rho3gamma"}
    assert loci["rho2"] == Coset((0, 0), Sublattice.full(2))
    assert loci["rhogamma"] == Coset((0, 0), Sublattice(2, [(1, 1)]))
    assert loci["rho3gamma"] == Coset((-1, 0), Sublattice(2, [(1, -1)]))


def test_brute_is_conjugate_small():
    # p3 keeps three separate classes of threefold parts: the rotation centres
    # 0, (1,0), (2,0) are inequivalent even though they look alike locally
    p3 = load_group("p3")
    g = p3.element(0, 0, "rho")
    assert brute_is_conjugate(p3, g, p3.element(1, 1, "rho"), 3)
    assert not brute_is_conjugate(p3, g, p3.element(1, 0, "rho"), 4)
    assert not is_conjugate(p3, g, p3.element(1, 0, "rho"))
    assert not brute_is_conjugate(p3, g, p3.element(0, 0, "rho2"), 3)


def test_coset_union_piece_counts():
    # the p4mg class of a generic glide splits across several parts
    G = load_group("p4mg")
    cls = conjugacy_class(G, G.element(0, 0, "gamma"))
    assert isinstance(cls, CosetUnionClass)
    parts = {f for f, _ in cls.pieces}
    assert parts == {"gamma", "rho2gamma"}
    # rotations by a quarter turn fuse with their inverse part only via mirrors
    cls_r = conjugacy_class(G, G.element(0, 0, "rho"))
    assert {f for f, _ in cls_r.pieces} == {"rho", "rho3"}
