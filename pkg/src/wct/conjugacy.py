"""Closed-form conjugacy structure of the wallpaper groups.

Conjugating a * f by t * f' splits into a translation step, which moves a
within a + K_f for K_f = im(act(f) - I), and a transversal step, which maps
that coset onto act(f')(a + K_f) + s(f, f') inside the A-coset of the
conjugated point part.  Classes are therefore finite orbits for translations
and finite unions of lattice cosets otherwise; everything below is exact
integer arithmetic on those descriptions.

brute_is_conjugate/conjugates_within sweep conjugators from a ball instead
and exist so the closed forms can be tested against something that cannot
share their bugs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groups import Element, GroupTable
from .lattice import Coset, Sublattice, matvec, solve_integer, vadd, vneg, vsub


def _mat_minus_identity(m):
    return ((m[0][0] - 1, m[0][1]), (m[1][0], m[1][1] - 1))


def _mat_plus_identity(m):
    return ((m[0][0] + 1, m[0][1]), (m[1][0], m[1][1] + 1))


@lru_cache(maxsize=None)
def _kf_cache(gid: str, f: str) -> Sublattice:
    from .groups import load_group

    G = load_group(gid)
    m = _mat_minus_identity(G.act[f])
    return Sublattice(2, [(m[0][0], m[1][0]), (m[0][1], m[1][1])])


def kf(G: GroupTable, f: str) -> Sublattice:
    """K_f = im(act(f) - I), the translation slack of the class of a*f."""
    if f not in G.F:
        raise ValueError(f"unknown transversal label {f!r} for {G.gid}")
    return _kf_cache(G.gid, f)


def fixed_line(G: GroupTable, f: str) -> Sublattice:
    """L(f) = ker(act(f) - I) for a reflection-type part (det act(f) = -1)."""
    return _eigenline(G, f, +1)


def antifixed_line(G: GroupTable, f: str) -> Sublattice:
    """L_perp(f) = ker(act(f) + I) for a reflection-type part."""
    return _eigenline(G, f, -1)


def _eigenline(G: GroupTable, f: str, sign: int) -> Sublattice:
    m = G.act[f]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det != -1:
        raise ValueError(f"{f!r} in {G.gid} is not reflection-type (det act = {det})")
    shifted = _mat_minus_identity(m) if sign > 0 else _mat_plus_identity(m)
    sol = solve_integer(shifted, (0, 0))
    assert sol is not None
    return Sublattice(2, sol[1])


# -- class descriptors --------------------------------------------------------


@dataclass(frozen=True)
class TranslationClass:
    """Finite conjugacy class of a translation: the point-group orbit."""

    elements: frozenset

    def contains(self, g: Element) -> bool:
        return g in self.elements

    def size(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "kind": "finiteSet",
            "elements": [e.to_json() for e in sorted(self.elements)],
        }


@dataclass(frozen=True)
class CosetUnionClass:
    """Class of a non-translation: finitely many lattice cosets, tagged by part."""

    pieces: tuple  # ((f, Coset), ...) deduplicated, canonically ordered

    def contains(self, g: Element) -> bool:
        return any(f == g.f and c.contains(g.a) for f, c in self.pieces)

    def to_json(self) -> dict:
        return {
            "kind": "cosetUnion",
            "pieces": [{"f": f, **c.to_json()} for f, c in self.pieces],
        }


def translation_orbit(G: GroupTable, a) -> frozenset:
    return frozenset(Element(matvec(G.act[f], a), "1") for f in G.F)


def conjugacy_class(G: GroupTable, g: Element):
    """Exact descriptor of the conjugacy class of g."""
    G.check_element(g)
    if g.f == "1":
        return TranslationClass(translation_orbit(G, g.a))
    pieces = {}
    for fp in G.F:
        s, h = G.point_conj[(g.f, fp)]
        piece = (h, Coset(vadd(matvec(G.act[fp], g.a), s), kf(G, h)))
        pieces[piece] = None  # dict keeps insertion order, drops duplicates
    order = {f: i for i, f in enumerate(G.F)}
    return CosetUnionClass(
        tuple(sorted(pieces, key=lambda p: (order[p[0]], p[1].offset)))
    )


def is_conjugate(G: GroupTable, g: Element, h: Element) -> bool:
    """Closed-form conjugacy test; no search."""
    G.check_element(g)
    G.check_element(h)
    if (g.f == "1") != (h.f == "1"):
        return False
    if g.f == "1":
        return any(matvec(G.act[f], g.a) == h.a for f in G.F)
    for fp in G.F:
        s, part = G.point_conj[(g.f, fp)]
        if part != h.f:
            continue
        if kf(G, h.f).contains(vsub(h.a, vadd(matvec(G.act[fp], g.a), s))):
            return True
    return False


def conjugates_within(G: GroupTable, g: Element, radius: int) -> set:
    """Brute conjugate set {g^c : c in ball(radius)}; oracle for is_conjugate."""
    out = set()
    for c in G.ball(radius):
        out.add(G.conj(g, c))
    return out


def brute_is_conjugate(G: GroupTable, g: Element, h: Element, radius: int) -> bool:
    return any(G.conj(g, c) == h for c in G.ball(radius))


# -- squares and involutions ---------------------------------------------------


def square_affine(G: GroupTable, f: str):
    """(a*f)^2 = (M @ a + c, h) for all a: returns (M, c, h)."""
    if f not in G.F:
        raise ValueError(f"unknown transversal label {f!r} for {G.gid}")
    c, h = G.fprod[(f, f)]
    m = _mat_plus_identity(G.act_inv[f])
    return m, c, h


def squares_image(G: GroupTable, f: str):
    """The set {g^2 : g in A*f} as (h, Coset): affine image of the lattice."""
    m, c, h = square_affine(G, f)
    cols = Sublattice(2, [(m[0][0], m[1][0]), (m[0][1], m[1][1])])
    return h, Coset(c, cols)


def involution_locus(G: GroupTable, f: str):
    """Solutions of (a*f)^2 = e as a Coset of A, or None.

    The identity part is excluded: a*1 squares to e only at the identity
    element itself, which has order 1.
    """
    if f == "1":
        return None
    m, c, h = square_affine(G, f)
    if h != "1":
        return None
    sol = solve_integer(m, vneg(c))
    if sol is None:
        return None
    part, kern = sol
    return Coset(part, Sublattice(2, kern))


def involution_loci(G: GroupTable) -> dict:
    """Map each transversal part to its involution locus (None when empty)."""
    return {f: involution_locus(G, f) for f in G.F if f != "1"}
