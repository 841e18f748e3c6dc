"""Coset-wise affine bijections of a wallpaper group.

A map here sends each translation coset A*f onto some coset A*f' by an
integer-affine rule a |-> M a + t.  Automorphisms of the catalog, inversion,
inner maps and the tau/mu conjugation patches all have this shape, and the
shape is closed under composition and inverse, so weak Cayley table identities
become decidable equalities of finitely much integer data: no ball arguments
are needed to compare two maps.

Conventions, fixed once: composition m1 * m2 applies m2 first, and m ** n
(spelled conjugate_by) is inv(n) * m * n.  Product words from the relation
tables are read the same way, rightmost factor first.
"""

from __future__ import annotations

import random
import re
from functools import lru_cache
from itertools import product

from .conjugacy import is_conjugate
from .groups import Element, GroupTable, load_group, parse_element
from .lattice import (
    Mat,
    Vec,
    mat_identity,
    matmul,
    matvec,
    vadd,
    vneg,
)

_I2 = mat_identity(2)
_Z2: Vec = (0, 0)


class CosetwiseAffineMap:
    __slots__ = ("gid", "rule", "_key")

    def __init__(self, G: GroupTable, rule: dict):
        if set(rule) != set(G.F):
            raise ValueError(f"rule must cover exactly the parts of {G.gid}")
        targets = [rule[f][0] for f in G.F]
        if sorted(targets) != sorted(G.F):
            raise ValueError("rule does not permute the translation cosets")
        for f, (_, m, _) in rule.items():
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
            if det not in (1, -1):
                raise ValueError(f"matrix on coset {f!r} is not invertible over Z")
        self.gid = G.gid
        self.rule = dict(rule)
        self._key = (G.gid, tuple((f,) + self.rule[f] for f in G.F))

    def apply(self, g: Element) -> Element:
        f2, m, t = self.rule[g.f]
        a = g.a
        return Element(
            (m[0][0] * a[0] + m[0][1] * a[1] + t[0],
             m[1][0] * a[0] + m[1][1] * a[1] + t[1]),
            f2,
        )

    def compose(self, other: "CosetwiseAffineMap") -> "CosetwiseAffineMap":
        """self after other."""
        if self.gid != other.gid:
            raise ValueError("maps act on different groups")
        G = load_group(self.gid)
        rule = {}
        for f in G.F:
            f2, m2, t2 = other.rule[f]
            f1, m1, t1 = self.rule[f2]
            rule[f] = (f1, matmul(m1, m2), vadd(matvec(m1, t2), t1))
        return CosetwiseAffineMap(G, rule)

    def invert(self) -> "CosetwiseAffineMap":
        G = load_group(self.gid)
        rule = {}
        for f, (f2, m, t) in self.rule.items():
            mi = _inv2(m)
            rule[f2] = (f, mi, vneg(matvec(mi, t)))
        return CosetwiseAffineMap(G, rule)

    def conjugate_by(self, n: "CosetwiseAffineMap") -> "CosetwiseAffineMap":
        """inv(n) * self * n, applied n first."""
        return n.invert().compose(self).compose(n)

    def is_identity(self) -> bool:
        return all(self.rule[f] == (f, _I2, _Z2) for f in self.rule)

    def __eq__(self, other) -> bool:
        return isinstance(other, CosetwiseAffineMap) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"CosetwiseAffineMap({self.gid}, {self.rule!r})"

    def to_json(self) -> dict:
        return {
            "group": self.gid,
            "rule": {
                f: {"to": f2, "m": [list(r) for r in m], "t": list(t)}
                for f, (f2, m, t) in sorted(self.rule.items())
            },
        }


def _inv2(m: Mat) -> Mat:
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return ((m[1][1] // det, -m[0][1] // det), (-m[1][0] // det, m[0][0] // det))


def identity_map(G: GroupTable) -> CosetwiseAffineMap:
    return CosetwiseAffineMap(G, {f: (f, _I2, _Z2) for f in G.F})


def iota(G: GroupTable) -> CosetwiseAffineMap:
    """g |-> g^-1."""
    rule = {}
    for f in G.F:
        finv, c = G.point_inv[f]
        m = tuple(tuple(-x for x in row) for row in G.act[f])
        rule[f] = (finv, m, matvec(m, c))
    return CosetwiseAffineMap(G, rule)


def map_from_function(G: GroupTable, fn) -> CosetwiseAffineMap:
    """Fit the affine rule of fn per coset, then verify on extra probes."""
    rule = {}
    for f in G.F:
        base = fn(Element(_Z2, f))
        img1 = fn(Element((1, 0), f))
        img2 = fn(Element((0, 1), f))
        if img1.f != base.f or img2.f != base.f:
            raise ValueError(f"function is not coset-wise on {f!r}")
        m = (
            (img1.a[0] - base.a[0], img2.a[0] - base.a[0]),
            (img1.a[1] - base.a[1], img2.a[1] - base.a[1]),
        )
        rule[f] = (base.f, m, base.a)
    out = CosetwiseAffineMap(G, rule)
    for f in G.F:
        for probe in ((2, 3), (-1, 4)):
            g = Element(probe, f)
            if out.apply(g) != fn(g):
                raise ValueError(f"function is not affine on coset {f!r}")
    return out


def inner_map(G: GroupTable, g: Element) -> CosetwiseAffineMap:
    """h |-> h^g = g^-1 h g."""
    G.check_element(g)
    return map_from_function(G, lambda h: G.conj(h, g))


def coset_conjugation(G: GroupTable, parts, u: Element) -> CosetwiseAffineMap:
    """Conjugate the listed cosets by u, fix everything else pointwise.

    This is the shape of all the non-trivial tau/mu generators; whether a
    given (parts, u) choice actually lands in W(G) is is_wct_on_ball's job.
    """
    G.check_element(u)
    chosen = set(parts)
    unknown = chosen - set(G.F)
    if unknown:
        raise ValueError(f"unknown parts {sorted(unknown)} for {G.gid}")
    return map_from_function(
        G, lambda h: G.conj(h, u) if h.f in chosen else h
    )


def automorphism(G: GroupTable, images: dict) -> CosetwiseAffineMap:
    """Extend generator images to the whole group; reject non-homomorphisms.

    images maps "x", "y" (and "r", "s"/"g" when present) to Elements; x and y
    must land in A, so a single matrix serves every coset.
    """
    for key in G.generators:
        if key not in images:
            raise ValueError(f"missing image for generator {key!r}")
    vx, vy = images["x"], images["y"]
    if vx.f != "1" or vy.f != "1":
        raise ValueError("x and y must map into the translation subgroup")
    m = ((vx.a[0], vy.a[0]), (vx.a[1], vy.a[1]))
    refl = G.refl
    rule = {}
    for f in G.F:
        k, e = G._part_of[f]
        img = G.identity
        if k:
            img = G.power(images["r"], k)
        if e:
            img = G.mul(img, images["s" if refl == "sigma" else "g"])
        rule[f] = (img.f, m, img.a)
    out = CosetwiseAffineMap(G, rule)
    bad = homomorphism_failure(G, out)
    if bad is not None:
        raise ValueError(f"generator images do not define a homomorphism: {bad}")
    return out


# -- exact structural checks ---------------------------------------------------

_PROBES = ((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def homomorphism_failure(G: GroupTable, m: CosetwiseAffineMap):
    """First pair with m(g1 g2) != m(g1) m(g2), or None.

    Both sides are affine in the pair of translation parts, so probing the
    origin plus the four basis directions per coset pair is a complete check.
    """
    for f in G.F:
        for g in G.F:
            for i, j, k, l in _PROBES:
                g1, g2 = Element((i, j), f), Element((k, l), g)
                if m.apply(G.mul(g1, g2)) != G.mul(m.apply(g1), m.apply(g2)):
                    return g1, g2
    return None


def antihomomorphism_failure(G: GroupTable, m: CosetwiseAffineMap):
    """First pair with m(g1 g2) != m(g2) m(g1), or None; same probe argument."""
    for f in G.F:
        for g in G.F:
            for i, j, k, l in _PROBES:
                g1, g2 = Element((i, j), f), Element((k, l), g)
                if m.apply(G.mul(g1, g2)) != G.mul(m.apply(g2), m.apply(g1)):
                    return g1, g2
    return None


def map_order(m: CosetwiseAffineMap, bound: int = 12):
    acc = m
    for k in range(1, bound + 1):
        if acc.is_identity():
            return k
        acc = acc.compose(m)
    return None


# -- weak Cayley table verification ---------------------------------------------


def is_wct_on_ball(G: GroupTable, m: CosetwiseAffineMap, radius: int) -> dict:
    """Check m(g1 g2) ~ m(g1) m(g2) for all pairs from ball(radius).

    Sound for violations (the witness re-checks); passing is evidence, not
    proof, since the ball is finite.
    """
    ball = G.ball(radius)
    images = {g: m.apply(g) for g in ball}
    for g1 in ball:
        img1 = images[g1]
        for g2 in ball:
            lhs = m.apply(G.mul(g1, g2))
            rhs = G.mul(img1, images[g2])
            if not is_conjugate(G, lhs, rhs):
                assert not is_conjugate(G, m.apply(G.mul(g1, g2)), rhs)
                return {
                    "ok": False,
                    "witness": [g1.to_json(), g2.to_json()],
                    "radius": radius,
                }
    return {"ok": True, "witness": None, "radius": radius}


def nontriviality_certificate(G: GroupTable, m: CosetwiseAffineMap, radius: int):
    """Witness pairs showing m is neither a homomorphism nor an antihomomorphism.

    Returns {"hom_witness": .., "antihom_witness": ..} or None when either
    search comes up empty within the ball, in which case m looks trivial.
    """
    ball = G.ball(radius)
    hom_witness = antihom_witness = None
    for g1 in ball:
        if hom_witness and antihom_witness:
            break
        m1 = m.apply(g1)
        for g2 in ball:
            lhs = m.apply(G.mul(g1, g2))
            m2 = m.apply(g2)
            if hom_witness is None and lhs != G.mul(m1, m2):
                hom_witness = (g1, g2)
            if antihom_witness is None and lhs != G.mul(m2, m1):
                antihom_witness = (g1, g2)
            if hom_witness and antihom_witness:
                break
    if hom_witness is None or antihom_witness is None:
        return None
    return {"hom_witness": hom_witness, "antihom_witness": antihom_witness}


def wct_invariants(G: GroupTable, m: CosetwiseAffineMap, radius: int = 2) -> dict:
    """Check the consequences forced on every weak Cayley table bijection.

    Taking g2 = e, g2 = g1^-1 or g2 = g1 in the defining condition pins down:
    the identity is fixed, inverses are respected, involutions go to
    involutions, conjugacy is preserved in both directions, and the
    translation subgroup maps onto itself.  Class preservation is checked by
    requiring the induced map on exact class descriptors over ball(radius) to
    be well defined and injective; the rest is element-wise over the ball.
    """
    from .conjugacy import conjugacy_class

    ball = G.ball(radius)
    checks = {
        "fixes_identity": m.apply(G.identity) == G.identity,
        "respects_inverse": all(
            m.apply(G.inv(g)) == G.inv(m.apply(g)) for g in ball),
        "involutions_to_involutions": all(
            G.mul(m.apply(g), m.apply(g)) == G.identity
            for g in ball if G.mul(g, g) == G.identity),
        "preserves_translations": m.rule["1"][0] == "1",
    }
    forward: dict = {}
    backward: dict = {}
    preserved = True
    for g in ball:
        s = conjugacy_class(G, g)
        si = conjugacy_class(G, m.apply(g))
        if forward.setdefault(s, si) != si or backward.setdefault(si, s) != s:
            preserved = False
            break
    checks["preserves_classes"] = preserved
    checks["ok"] = all(checks.values())
    return checks


def wct_certificate_symbolic(G: GroupTable, m: CosetwiseAffineMap) -> dict:
    """Experimental: try to prove the WCT property for all of G at once.

    For each pair of source cosets, look for one conjugating part f' that
    works uniformly: the mismatch between m(g1 g2) and m(g1) m(g2) conjugated
    through f' must land in the slack lattice K for every choice of the two
    translation parts, which reduces to finitely many lattice memberships.
    Returns proven=False when some pair has no uniform part; that is
    inconclusive, not a refutation.
    """
    from .conjugacy import kf

    def image_pair(f, g, a, b):
        g1, g2 = Element(a, f), Element(b, g)
        return m.apply(G.mul(g1, g2)), G.mul(m.apply(g1), m.apply(g2))

    pair_report = {}
    for f in G.F:
        for g in G.F:
            lhs0, rhs0 = image_pair(f, g, _Z2, _Z2)
            found = None
            for fp in G.F:
                s, part = G.point_conj[(lhs0.f, fp)]
                if part != rhs0.f:
                    continue
                lat = kf(G, rhs0.f)
                ok = True
                for a, b in (((0, 0), (0, 0)), ((1, 0), (0, 0)), ((0, 1), (0, 0)),
                             ((0, 0), (1, 0)), ((0, 0), (0, 1))):
                    lhs, rhs = image_pair(f, g, a, b)
                    if lhs.f != lhs0.f or rhs.f != rhs0.f:
                        ok = False
                        break
                    diff = vadd(matvec(G.act[fp], lhs.a), s)
                    if not lat.contains((rhs.a[0] - diff[0], rhs.a[1] - diff[1])):
                        ok = False
                        break
                if ok:
                    found = fp
                    break
            pair_report[(f, g)] = found
            if found is None:
                return {"proven": False, "pairs": pair_report}
    return {"proven": True, "pairs": pair_report}


# -- the named generator catalog -------------------------------------------------


def _aut(G: GroupTable, **imgs: str) -> CosetwiseAffineMap:
    return automorphism(G, {k: parse_element(G, v) for k, v in imgs.items()})


@lru_cache(maxsize=None)
def _catalog(gid: str) -> dict:
    G = load_group(gid)
    cat: dict[str, CosetwiseAffineMap] = {"id": identity_map(G), "iota": iota(G)}
    cat["I_x"] = inner_map(G, G.element(1, 0))
    cat["I_y"] = inner_map(G, G.element(0, 1))
    if "r" in G.generators:
        cat["I_rho"] = inner_map(G, G.generators["r"])
    if "s" in G.generators:
        cat["I_sigma"] = inner_map(G, G.generators["s"])
    if "g" in G.generators:
        cat["I_gamma"] = inner_map(G, G.generators["g"])

    if gid in ("p3", "p4", "p6"):
        cat["psi_x"] = _aut(G, x="x", y="y", r="x rho")
        cat["psi_y"] = _aut(G, x="x", y="y", r="y rho")
    if gid == "p3":
        cat["tau"] = coset_conjugation(G, ("rho", "rho2"), G.element(0, 0, "rho"))
    elif gid == "p4":
        cat["psi_1"] = _aut(G, x="x", y="y^-1", r="rho3")
        for name, u in (("x", G.element(1, 0)), ("y", G.element(0, 1)),
                        ("rho2", G.element(0, 0, "rho2"))):
            cat[f"tau_{name}"] = coset_conjugation(G, ("rho2",), u)
        for name, u in (("x", G.element(1, 0)), ("y", G.element(0, 1)),
                        ("rho", G.element(0, 0, "rho"))):
            cat[f"mu_{name}"] = coset_conjugation(G, ("rho", "rho3"), u)
        # a tempting candidate that is not a WCT map: conjugate the
        # half-turn coset by a quarter turn (kept for negative tests)
        cat["conj_rho_on_rho2"] = coset_conjugation(G, ("rho2",), G.element(0, 0, "rho"))
    elif gid == "p6":
        cat["psi"] = _aut(G, x="y", y="x", r="rho5")
        # the even-coset patch carries h in {x^2, y^2, rho^3} and the A rho^3
        # patch carries h in {xy, xy^-2, rho^2}; swapping the sets gives maps
        # that already fail the class condition at radius 2 (the K lattices
        # K_{rho^3} = 2Z^2 and K_{rho^2} = <xy, xy^-2> sort the shifts out)
        even = ("1", "rho2", "rho4")
        for name, u in (("x2", G.element(2, 0)), ("y2", G.element(0, 2)),
                        ("rho3", G.element(0, 0, "rho3"))):
            cat[f"tau_{name}"] = coset_conjugation(G, even, u)
        for name, u in (("xy", G.element(1, 1)), ("xyinv2", G.element(1, -2)),
                        ("rho2", G.element(0, 0, "rho2"))):
            cat[f"mu_{name}"] = coset_conjugation(G, ("1", "rho3"), u)
    elif gid == "p2mm":
        cat["tau"] = coset_conjugation(G, ("rho", "sigma"), G.element(0, 0, "sigma"))
        cat["tau_rs"] = coset_conjugation(
            G, ("rho", "rhosigma"), G.element(0, 0, "rhosigma"))
        cat["psi"] = _aut(G, x="y", y="x", r="rho", s="rhosigma")
        # the psi_uv family: rho |-> x^u y^v rho, sigma |-> y^v sigma.  An
        # x-power on the sigma image would break sigma^2 = e.
        cat["psi_10"] = _aut(G, x="x", y="y", r="x rho", s="sigma")
        cat["psi_01"] = _aut(G, x="x", y="y", r="y rho", s="y sigma")
    elif gid == "cm":
        cat["psi"] = _aut(G, x="x^-1", y="y^-1", s="sigma")
    elif gid == "pm":
        cat["psi"] = _aut(G, x="x^-1", y="y^-1", s="sigma")
    elif gid == "pg":
        cat["psi_y"] = _aut(G, x="x", y="y", g="y gamma")
        cat["psi"] = _aut(G, x="x^-1", y="y^-1", g="x^-1 gamma")
    elif gid == "c2mm":
        cat["psi"] = _aut(G, x="x^-1", y="y^-1", r="rho", s="sigma")
        # psi_uvij family instances; sigma^2 = e forces the sigma shift onto
        # the antidiagonal, and the braid constraint u + j = i + v does the rest
        cat["psi_1"] = _aut(G, x="x", y="y", r="x y rho", s="sigma")
        cat["psi_2"] = _aut(G, x="x", y="y", r="x^2 rho", s="x y^-1 sigma")
    elif gid == "p2mg":
        cat["psi_x"] = _aut(G, x="x", y="y", r="x rho", s="sigma")
        cat["psi_y"] = _aut(G, x="x", y="y", r="y rho", s="y sigma")
        cat["psi"] = _aut(G, x="x^-1", y="y^-1", r="y^-1 rho", s="sigma")
    elif gid == "p2gg":
        cat["psi_x"] = _aut(G, x="x", y="y", r="x rho", g="gamma")
        cat["psi_y"] = _aut(G, x="x", y="y", r="y rho", g="y gamma")
        cat["psi"] = _aut(G, x="x^-1", y="y^-1", r="rho", g="x^-1 y gamma")
    elif gid == "p3m1":
        cat["psi_1"] = _aut(G, x="x", y="y", r="y^-1 rho", s="sigma")
    elif gid == "p4mg":
        cat["psi_1"] = _aut(G, x="x", y="y", r="x rho", g="y^-1 gamma")
        cat["psi_2"] = _aut(G, x="x^-1", y="y^-1", r="y^-1 rho", g="x^-1 gamma")
    elif gid == "p4mm":
        cat["psi_1"] = _aut(G, x="x", y="y", r="y rho", s="y sigma")
    return cat


def catalog(G: GroupTable) -> dict:
    return dict(_catalog(G.gid))


def generator(G: GroupTable, name: str) -> CosetwiseAffineMap:
    cat = _catalog(G.gid)
    if name not in cat:
        raise ValueError(
            f"unknown map {name!r} for {G.gid}; have {', '.join(sorted(cat))}")
    return cat[name]


NONTRIVIAL_CATALOG = {
    "p2mm": ("tau",),
    "p3": ("tau",),
    "p4": ("tau_x", "tau_y", "tau_rho2", "mu_x", "mu_y", "mu_rho"),
    "p6": ("tau_x2", "tau_y2", "tau_rho3", "mu_xy", "mu_xyinv2", "mu_rho2"),
}


# -- map expressions --------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def parse_map_expr(G: GroupTable, text: str) -> CosetwiseAffineMap:
    """Evaluate an expression like "tau * inv(psi_x) * inner(x^-1 y rho)".

    '*' composes (right factor applied first); names come from the catalog.
    """
    pos = 0
    text = text.strip()

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_atom() -> CosetwiseAffineMap:
        nonlocal pos
        skip_ws()
        m = _NAME_RE.match(text, pos)
        if not m:
            raise ValueError(f"expected a map name at position {pos} in {text!r}")
        name = m.group(0)
        pos = m.end()
        skip_ws()
        if name in ("inv", "inner"):
            if pos >= len(text) or text[pos] != "(":
                raise ValueError(f"{name} needs parentheses in {text!r}")
            pos += 1
            if name == "inv":
                inner_expr = parse_expr()
                skip_ws()
                if pos >= len(text) or text[pos] != ")":
                    raise ValueError(f"unbalanced parentheses in {text!r}")
                pos += 1
                return inner_expr.invert()
            close = text.find(")", pos)
            if close < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
            elem = parse_element(G, text[pos:close])
            pos = close + 1
            return inner_map(G, elem)
        return generator(G, name)

    def parse_expr() -> CosetwiseAffineMap:
        nonlocal pos
        out = parse_atom()
        while True:
            skip_ws()
            if pos < len(text) and text[pos] == "*":
                pos += 1
                out = out.compose(parse_atom())
            else:
                return out

    out = parse_expr()
    skip_ws()
    if pos != len(text):
        raise ValueError(f"trailing input at position {pos} in {text!r}")
    return out


# -- relation suites for the non-trivial W(G) -------------------------------------


def _conj_expr(m: str, n: str) -> str:
    return f"inv({n})*{m}*{n}"


def _tau_rhs(G: GroupTable, parts, mu: CosetwiseAffineMap, u: Element):
    """tau_{mu^-1(u)} (or mu_-flavoured), built directly from the definition."""
    return coset_conjugation(G, parts, mu.invert().apply(u))


def wgroup_relations(G: GroupTable) -> dict:
    """Verify the presentation relations of W(G) for p3, p4, p6, p2mm.

    Each relation is an exact map equality.  Printed relations that fail get a
    "resolved" entry: the corrected right side that does hold, with a note; the
    suite passes when every relation holds as printed or has a holding
    resolution.
    """
    if G.gid not in ("p3", "p4", "p6", "p2mm"):
        raise ValueError(f"no relation suite for {G.gid}")
    cat = _catalog(G.gid)
    ev = lambda expr: parse_map_expr(G, expr)
    records = []

    def check(name: str, lhs, rhs, source: str = "printed", resolution=None):
        lhs_map = ev(lhs) if isinstance(lhs, str) else lhs
        rhs_map = ev(rhs) if isinstance(rhs, str) else rhs
        rec = {"relation": name, "holds": lhs_map == rhs_map, "source": source}
        if not rec["holds"] and resolution is not None:
            res_expr, note = resolution
            res_map = ev(res_expr) if isinstance(res_expr, str) else res_expr
            rec["resolved"] = res_expr if isinstance(res_expr, str) else "computed"
            rec["resolved_holds"] = lhs_map == res_map
            rec["note"] = note
        records.append(rec)

    iota_central_against: tuple[str, ...]

    if G.gid == "p3":
        check("tau^3 = id", "tau*tau*tau", "id")
        check("psi_x psi_y = psi_y psi_x", "psi_x*psi_y", "psi_y*psi_x")
        check("I_x = psi_x^-1 psi_y^-1", "I_x", "inv(psi_x)*inv(psi_y)")
        check("I_y = psi_x psi_y^-2", "I_y", "psi_x*inv(psi_y)*inv(psi_y)")
        check("psi_y^I_rho = psi_x psi_y^-1",
              _conj_expr("psi_y", "I_rho"), "psi_x*inv(psi_y)")
        check("psi_x^I_rho = I_y^-1",
              _conj_expr("psi_x", "I_rho"), "inv(I_y)",
              resolution=("inv(psi_y)",
                          "printed right side is inconsistent: together with "
                          "psi_y^I_rho it would give the conjugation action "
                          "infinite order, yet I_rho^3 = id; psi_y^-1 is the "
                          "value the maps actually satisfy"))
        check("tau^psi_x = tau psi_x psi_y",
              _conj_expr("tau", "psi_x"), "tau*psi_x*psi_y")
        check("tau^psi_y = tau psi_x^-1 psi_y^2",
              _conj_expr("tau", "psi_y"), "tau*inv(psi_x)*psi_y*psi_y")
        check("I_rho^3 = id", "I_rho*I_rho*I_rho", "id")
        iota_central_against = ("tau", "psi_x", "psi_y", "I_rho")

    elif G.gid == "p4":
        check("tau_x tau_y = tau_y tau_x", "tau_x*tau_y", "tau_y*tau_x")
        check("tau_rho2^2 = id", "tau_rho2*tau_rho2", "id")
        check("tau_x^tau_rho2 = tau_x^-1", _conj_expr("tau_x", "tau_rho2"),
              "inv(tau_x)", source="derived")
        check("tau_y^tau_rho2 = tau_y^-1", _conj_expr("tau_y", "tau_rho2"),
              "inv(tau_y)", source="derived")
        check("tau_rho2^psi_x = tau_rho2 tau_x^-1 tau_y",
              _conj_expr("tau_rho2", "psi_x"), "tau_rho2*inv(tau_x)*tau_y")
        check("tau_rho2^psi_y = tau_rho2 tau_x tau_y^-1",
              _conj_expr("tau_rho2", "psi_y"), "tau_rho2*tau_x*inv(tau_y)",
              resolution=("tau_rho2*inv(tau_x)*inv(tau_y)",
                          "the stated transport rule (tau_u)^mu = "
                          "tau_{mu^-1(u)} gives tau at psi_y^-1(rho^2) = "
                          "(y^-1 rho)^2 = x^-1 y^-1 rho^2, so the tau_x "
                          "factor needs the inverse; no orientation choice "
                          "makes the printed word consistent with the "
                          "companion psi_x relation"))
        check("mu_x mu_y = mu_y mu_x", "mu_x*mu_y", "mu_y*mu_x")
        check("mu_rho^4 = id", "mu_rho*mu_rho*mu_rho*mu_rho", "id")
        check("mu_x^mu_rho = mu_y^-1", _conj_expr("mu_x", "mu_rho"), "inv(mu_y)")
        check("mu_y^mu_rho = mu_x", _conj_expr("mu_y", "mu_rho"), "mu_x")
        for t in ("tau_x", "tau_y", "tau_rho2"):
            for s in ("mu_x", "mu_y", "mu_rho"):
                check(f"{t} {s} = {s} {t}", f"{t}*{s}", f"{s}*{t}",
                      source="derived")
        check("psi_1^2 = id", "psi_1*psi_1", "id")
        check("I_rho^4 = id", "I_rho*I_rho*I_rho*I_rho", "id")
        tau_targets = (("x", G.element(1, 0)), ("y", G.element(0, 1)),
                       ("rho2", G.element(0, 0, "rho2")))
        mu_targets = (("x", G.element(1, 0)), ("y", G.element(0, 1)),
                      ("rho", G.element(0, 0, "rho")))
        for mu_name in ("I_rho", "psi_1", "psi_x", "psi_y", "I_x", "I_y"):
            mu = cat[mu_name]
            for uname, u in tau_targets:
                check(f"(tau_{uname})^{mu_name} = tau_{mu_name}^-1({uname})",
                      ev(_conj_expr(f"tau_{uname}", mu_name)),
                      _tau_rhs(G, ("rho2",), mu, u))
            for uname, u in mu_targets:
                check(f"(mu_{uname})^{mu_name} = mu_{mu_name}^-1({uname})",
                      ev(_conj_expr(f"mu_{uname}", mu_name)),
                      _tau_rhs(G, ("rho", "rho3"), mu, u))
        iota_central_against = ("tau_x", "tau_rho2", "mu_rho", "psi_x", "psi_1", "I_rho")

    elif G.gid == "p6":
        check("tau_x2 tau_y2 = tau_y2 tau_x2", "tau_x2*tau_y2",
              "tau_y2*tau_x2", source="derived")
        check("tau_rho3^2 = id", "tau_rho3*tau_rho3", "id", source="derived")
        check("tau_x2^tau_rho3 = tau_x2^-1", _conj_expr("tau_x2", "tau_rho3"),
              "inv(tau_x2)", source="derived")
        check("tau_y2^tau_rho3 = tau_y2^-1", _conj_expr("tau_y2", "tau_rho3"),
              "inv(tau_y2)", source="derived")
        check("mu_xy mu_xyinv2 = mu_xyinv2 mu_xy", "mu_xy*mu_xyinv2",
              "mu_xyinv2*mu_xy", source="derived")
        check("mu_rho2^3 = id", "mu_rho2*mu_rho2*mu_rho2", "id",
              source="derived")
        check("mu_xy^mu_rho2 = mu_xyinv2", _conj_expr("mu_xy", "mu_rho2"),
              "mu_xyinv2", source="derived")
        check("mu_xyinv2^mu_rho2 = mu_xy^-1 mu_xyinv2^-1",
              _conj_expr("mu_xyinv2", "mu_rho2"),
              "inv(mu_xy)*inv(mu_xyinv2)", source="derived")
        for t in ("tau_x2", "tau_y2", "tau_rho3"):
            for s in ("mu_xy", "mu_xyinv2", "mu_rho2"):
                check(f"{t} {s} = {s} {t}", f"{t}*{s}", f"{s}*{t}",
                      source="derived")
        check("psi^2 = id", "psi*psi", "id", source="derived")
        check("I_rho^6 = id", "*".join(["I_rho"] * 6), "id", source="derived")
        check("tau_rho3^I_rho = tau_rho3", _conj_expr("tau_rho3", "I_rho"),
              "tau_rho3", source="derived")
        check("mu_rho2^I_rho = mu_rho2", _conj_expr("mu_rho2", "I_rho"),
              "mu_rho2", source="derived")
        check("tau_rho3^psi = tau_rho3", _conj_expr("tau_rho3", "psi"),
              "tau_rho3", source="derived")
        check("mu_rho2^psi = mu_rho2^2", _conj_expr("mu_rho2", "psi"),
              "mu_rho2*mu_rho2", source="derived")
        even = ("1", "rho2", "rho4")
        odd = ("1", "rho3")
        tau_targets = (("x2", G.element(2, 0)), ("y2", G.element(0, 2)))
        mu_targets = (("xy", G.element(1, 1)), ("xyinv2", G.element(1, -2)))
        for mu_name in ("I_rho", "psi", "I_x", "I_y"):
            mu = cat[mu_name]
            for uname, u in tau_targets:
                check(f"(tau_{uname})^{mu_name} = tau_{mu_name}^-1({uname})",
                      ev(_conj_expr(f"tau_{uname}", mu_name)),
                      _tau_rhs(G, even, mu, u), source="derived")
            for uname, u in mu_targets:
                check(f"(mu_{uname})^{mu_name} = mu_{mu_name}^-1({uname})",
                      ev(_conj_expr(f"mu_{uname}", mu_name)),
                      _tau_rhs(G, odd, mu, u), source="derived")
        iota_central_against = ("tau_x2", "tau_rho3", "mu_xy", "mu_rho2", "psi", "I_rho")

    else:  # p2mm
        check("tau^2 = id", "tau*tau", "id")
        check("tau_rs^2 = id", "tau_rs*tau_rs", "id", source="derived")
        check("tau tau_rs = tau_rs tau", "tau*tau_rs", "tau_rs*tau",
              source="derived")
        check("tau^psi = tau_rs (conj by rho sigma on the rho cosets)",
              _conj_expr("tau", "psi"), "tau_rs")
        check("tau^psi_10 = tau", _conj_expr("tau", "psi_10"), "tau",
              source="derived")
        check("tau^psi_01 = I_y tau", _conj_expr("tau", "psi_01"), "I_y*tau",
              source="derived")
        check("psi^2 = id", "psi*psi", "id", source="derived")
        check("psi_10 psi_01 = psi_01 psi_10", "psi_10*psi_01", "psi_01*psi_10",
              source="derived")
        check("psi_10^2 = I_x^-1", "psi_10*psi_10", "inv(I_x)", source="derived")
        check("psi_01^2 = I_y^-1", "psi_01*psi_01", "inv(I_y)", source="derived")
        check("I_rho^2 = id", "I_rho*I_rho", "id", source="derived")
        check("I_sigma^2 = id", "I_sigma*I_sigma", "id", source="derived")
        iota_central_against = ("tau", "tau_rs", "psi", "psi_10", "I_rho", "I_sigma")

    check("iota^2 = id", "iota*iota", "id")
    for name in iota_central_against:
        check(f"iota {name} = {name} iota", f"iota*{name}", f"{name}*iota")

    order_names = {
        "p3": ("tau", "psi_x", "psi_y", "I_rho", "iota"),
        "p4": ("tau_x", "tau_rho2", "mu_x", "mu_rho", "psi_x", "psi_1", "I_rho", "iota"),
        "p6": ("tau_x2", "tau_rho3", "mu_xy", "mu_rho2", "psi_x", "psi", "I_rho", "iota"),
        "p2mm": ("tau", "tau_rs", "psi", "psi_10", "I_rho", "I_sigma", "iota"),
    }[G.gid]
    orders = {name: map_order(cat[name]) for name in order_names}

    ok = all(r["holds"] or r.get("resolved_holds", False) for r in records)
    notes = []
    if G.gid == "p2mm":
        notes.append(
            "the stated presentation references a sigma_rs generator that is "
            "never defined for this group; the suite checks the relations "
            "expressible with tau, tau_rs, psi, psi_uv, inner maps and iota")
        notes.append(
            "psi_uv is implemented as rho |-> x^u y^v rho, sigma |-> y^v "
            "sigma: an x-power on the sigma image would violate sigma^2 = e, "
            "so the family as stated is only a homomorphism for u = 0")
    return {"group": G.gid, "relations": records, "orders": orders,
            "ok": ok, "notes": notes}


W0_GENERATORS = {
    "p4": ("iota", "psi_x", "psi_y", "psi_1", "I_rho", "I_x", "I_y"),
    "p6": ("iota", "psi_x", "psi_y", "psi", "I_rho", "I_x", "I_y"),
}


def normality_check(G: GroupTable, word_length: int = 4) -> dict:
    """Conjugate each non-trivial generator by each W0 generator and find the
    result among short words in the non-trivial generators."""
    if G.gid not in W0_GENERATORS:
        raise ValueError(f"no normality data for {G.gid}")
    cat = _catalog(G.gid)
    ngens = {name: cat[name] for name in NONTRIVIAL_CATALOG[G.gid]}
    symbols = list(ngens.items()) + [
        (f"inv({name})", m.invert()) for name, m in ngens.items()]

    words = {identity_map(G): ("id", 0)}
    frontier = [identity_map(G)]
    for length in range(1, word_length + 1):
        nxt = []
        for base in frontier:
            for sym_name, sym in symbols:
                w = base.compose(sym)
                if w not in words:
                    base_name = words[base][0]
                    name = sym_name if base_name == "id" else f"{base_name}*{sym_name}"
                    words[w] = (name, length)
                    nxt.append(w)
        frontier = nxt

    pairs = []
    for n_name, n in ngens.items():
        for w_name in W0_GENERATORS[G.gid]:
            conj = n.conjugate_by(cat[w_name])
            hit = words.get(conj)
            pairs.append({
                "generator": n_name,
                "by": w_name,
                "found": hit is not None,
                "word": hit[0] if hit else None,
            })
    return {
        "group": G.gid,
        "word_length": word_length,
        "pairs": pairs,
        "ok": all(p["found"] for p in pairs),
    }


# -- randomized candidates for the triviality evidence ------------------------------


@lru_cache(maxsize=1)
def _unimodular_pool() -> tuple:
    pool = []
    for a, b, c, d in product(range(-2, 3), repeat=4):
        if a * d - b * c in (1, -1):
            pool.append(((a, b), (c, d)))
    return tuple(pool)


def random_map(G: GroupTable, rnd: random.Random, shift_bound: int = 2) -> CosetwiseAffineMap:
    """A random coset permutation with random small affine rules per coset."""
    targets = list(G.F)
    rnd.shuffle(targets)
    pool = _unimodular_pool()
    rule = {}
    for f, f2 in zip(G.F, targets):
        m = rnd.choice(pool)
        t = (rnd.randint(-shift_bound, shift_bound),
             rnd.randint(-shift_bound, shift_bound))
        rule[f] = (f2, m, t)
    return CosetwiseAffineMap(G, rule)
