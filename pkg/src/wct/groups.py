"""Multiplication engines for the 17 wallpaper groups.

Every group is handled in the normal form a * f where a = x^i y^j ranges over
the translation lattice A = Z^2 and f over a fixed transversal F of G/A.  The
transversal elements are words rho^k gamma^e (gamma doubling as sigma for the
reflection groups), so the whole product rule is determined by

  * act(f): the 2x2 integer matrix of a |-> a^f = f^-1 a f,
  * the relation gamma^2 = beta1 (nonzero only for glide transversals), and
  * the relation (rho gamma)^2 = c, which yields the translation picked up
    when gamma moves past rho.

Products of transversal words then reduce to cocycle tables fprod[f, g] =
(translation, representative); those tables are what mul/inv/conj run on.
check_presentation replays the defining relations through the engine, so a
bad table cannot survive the test suite.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterator, NamedTuple

from .lattice import (
    Mat,
    Vec,
    mat_identity,
    mat_inv_unimodular,
    matmul,
    matvec,
    vadd,
    vneg,
)

GROUP_IDS = (
    "p1", "p2", "p3", "p4", "p6",
    "cm", "pm", "pg",
    "c2mm", "p2mm", "p2mg", "p2gg",
    "p3m1", "p31m", "p4mg", "p4mm", "p6m",
)

_ZERO: Vec = (0, 0)
_X: Vec = (1, 0)
_Y: Vec = (0, 1)

_R_P2 = ((-1, 0), (0, -1))
_R_P3 = ((-1, -1), (1, 0))
_R_P4 = ((0, -1), (1, 0))
_R_P6 = ((0, -1), (1, 1))
_S_MIRROR_X = ((1, 0), (0, -1))   # x fixed, y inverted
_S_SWAP = ((0, 1), (1, 0))        # x <-> y
_S_HEX = ((1, 1), (0, -1))        # x fixed, y -> x y^-1


class Element(NamedTuple):
    """Group element a * f with a in lattice coordinates and f a transversal label."""

    a: Vec
    f: str

    def to_json(self) -> dict:
        return {"a": list(self.a), "f": self.f}


def element_from_json(data: dict) -> Element:
    a = data["a"]
    return Element((int(a[0]), int(a[1])), str(data["f"]))


class _Spec(NamedTuple):
    d: int                  # order of the rotation part (1 when absent)
    refl: str | None        # "sigma", "gamma", or None
    rot: Mat | None         # act(rho)
    mirror: Mat | None      # act(sigma) / act(gamma)
    beta1: Vec              # gamma^2
    rel_rg: Vec             # (rho gamma)^2
    beta2: Vec              # named constant used by the class formulas
    relations: tuple[tuple[str, str, str], ...]
    notes: tuple[str, ...] = ()


def _rels(*items: tuple[str, str, str]) -> tuple[tuple[str, str, str], ...]:
    return (("(x,y)", "XYxy", ""),) + items


_SPECS: dict[str, _Spec] = {
    "p1": _Spec(1, None, None, None, _ZERO, _ZERO, _ZERO, _rels()),
    "p2": _Spec(2, None, _R_P2, None, _ZERO, _ZERO, _ZERO, _rels(
        ("x^rho = x^-1", "Rxr", "X"), ("y^rho = y^-1", "Ryr", "Y"), ("rho^2", "rr", ""))),
    "p3": _Spec(3, None, _R_P3, None, _ZERO, _ZERO, _ZERO, _rels(
        ("x^rho = x^-1 y", "Rxr", "Xy"), ("y^rho = x^-1", "Ryr", "X"), ("rho^3", "rrr", ""))),
    "p4": _Spec(4, None, _R_P4, None, _ZERO, _ZERO, _ZERO, _rels(
        ("x^rho = y", "Rxr", "y"), ("y^rho = x^-1", "Ryr", "X"), ("rho^4", "rrrr", ""))),
    "p6": _Spec(6, None, _R_P6, None, _ZERO, _ZERO, _ZERO, _rels(
        ("x^rho = y", "Rxr", "y"), ("y^rho = x^-1 y", "Ryr", "Xy"), ("rho^6", "rrrrrr", ""))),
    "cm": _Spec(1, "sigma", None, _S_SWAP, _ZERO, _ZERO, _ZERO, _rels(
        ("x^sigma = y", "Sxs", "y"), ("y^sigma = x", "Sys", "x"), ("sigma^2", "ss", ""))),
    "pm": _Spec(1, "sigma", None, _S_MIRROR_X, _ZERO, _ZERO, _ZERO, _rels(
        ("x^sigma = x", "Sxs", "x"), ("y^sigma = y^-1", "Sys", "Y"), ("sigma^2", "ss", ""))),
    "pg": _Spec(1, "gamma", None, _S_MIRROR_X, _X, _ZERO, _ZERO, _rels(
        ("x^gamma = x", "Gxg", "x"), ("y^gamma = y^-1", "Gyg", "Y"), ("gamma^2 = x", "gg", "x"))),
    "c2mm": _Spec(2, "sigma", _R_P2, _S_SWAP, _ZERO, _ZERO, _ZERO, _rels(
        ("rho^2", "rr", ""), ("sigma^2", "ss", ""),
        ("x^rho = x^-1", "Rxr", "X"), ("y^rho = y^-1", "Ryr", "Y"),
        ("x^sigma = y", "Sxs", "y"), ("y^sigma = x", "Sys", "x"),
        ("(rho sigma)^2", "rsrs", ""))),
    "p2mm": _Spec(2, "sigma", _R_P2, _S_MIRROR_X, _ZERO, _ZERO, _ZERO, _rels(
        ("rho^2", "rr", ""), ("sigma^2", "ss", ""), ("(rho,sigma)", "RSrs", ""),
        ("x^rho = x^-1", "Rxr", "X"), ("y^rho = y^-1", "Ryr", "Y"),
        ("x^sigma = x", "Sxs", "x"), ("y^sigma = y^-1", "Sys", "Y"))),
    "p2mg": _Spec(2, "sigma", _R_P2, _S_MIRROR_X, _ZERO, _Y, _Y, _rels(
        ("rho^2", "rr", ""), ("sigma^2", "ss", ""),
        ("x^rho = x^-1", "Rxr", "X"), ("y^rho = y^-1", "Ryr", "Y"),
        ("x^sigma = x", "Sxs", "x"), ("y^sigma = y^-1", "Sys", "Y"),
        ("(rho sigma)^2 = y", "rsrs", "y"))),
    "p2gg": _Spec(2, "gamma", _R_P2, _S_MIRROR_X, _X, _Y, _Y, _rels(
        ("rho^2", "rr", ""), ("gamma^2 = x", "gg", "x"),
        ("x^rho = x^-1", "Rxr", "X"), ("y^rho = y^-1", "Ryr", "Y"),
        ("x^gamma = x", "Gxg", "x"), ("y^gamma = y^-1", "Gyg", "Y"),
        ("(rho gamma)^2 = y", "rgrg", "y"))),
    "p3m1": _Spec(3, "sigma", _R_P3, _S_SWAP, _ZERO, _ZERO, _ZERO, _rels(
        ("rho^3", "rrr", ""), ("sigma^2", "ss", ""), ("(rho sigma)^2", "rsrs", ""),
        ("x^rho = x^-1 y", "Rxr", "Xy"), ("y^rho = x^-1", "Ryr", "X"),
        ("x^sigma = y", "Sxs", "y"), ("y^sigma = x", "Sys", "x"))),
    "p31m": _Spec(3, "sigma", _R_P3, _S_HEX, _ZERO, _ZERO, _ZERO, _rels(
        ("rho^3", "rrr", ""), ("sigma^2", "ss", ""), ("(rho sigma)^2", "rsrs", ""),
        ("x^rho = x^-1 y", "Rxr", "Xy"), ("y^rho = x^-1", "Ryr", "X"),
        ("x^sigma = x", "Sxs", "x"), ("y^sigma = x y^-1", "Sys", "xY")),
        notes=("source presentation lists the relation '(xy)'; read as the commutator (x,y)",)),
    "p4mg": _Spec(4, "gamma", _R_P4, _S_MIRROR_X, _X, _ZERO, _Y, _rels(
        ("rho^4", "rrrr", ""), ("gamma^2 = x", "gg", "x"),
        ("x^rho = y", "Rxr", "y"), ("y^rho = x^-1", "Ryr", "X"),
        ("x^gamma = x", "Gxg", "x"), ("y^gamma = y^-1", "Gyg", "Y"),
        ("(rho gamma)^2", "rgrg", ""))),
    "p4mm": _Spec(4, "sigma", _R_P4, _S_MIRROR_X, _ZERO, _ZERO, _ZERO, _rels(
        ("rho^4", "rrrr", ""), ("sigma^2", "ss", ""),
        ("x^rho = y", "Rxr", "y"), ("y^rho = x^-1", "Ryr", "X"),
        ("x^sigma = x", "Sxs", "x"), ("y^sigma = y^-1", "Sys", "Y"),
        ("(rho sigma)^2", "rsrs", ""))),
    "p6m": _Spec(6, "sigma", _R_P6, _S_HEX, _ZERO, _ZERO, _ZERO, _rels(
        ("rho^6", "rrrrrr", ""), ("sigma^2", "ss", ""),
        ("x^rho = y", "Rxr", "y"), ("y^rho = x^-1 y", "Ryr", "Xy"),
        ("x^sigma = x", "Sxs", "x"), ("y^sigma = x y^-1", "Sys", "xY"),
        ("(rho sigma)^2", "rsrs", ""))),
}


def _label(k: int, e: int, refl: str | None) -> str:
    rot = "" if k == 0 else ("rho" if k == 1 else f"rho{k}")
    tail = refl if e == 1 else ""
    return (rot + tail) or "1"


class GroupTable:
    """Immutable multiplication tables for one wallpaper group."""

    def __init__(self, gid: str):
        if gid not in _SPECS:
            raise ValueError(f"unknown group {gid!r}; expected one of {', '.join(GROUP_IDS)}")
        spec = _SPECS[gid]
        self.gid = gid
        self.d = spec.d
        self.refl = spec.refl
        self.beta1 = spec.beta1
        self.beta2 = spec.beta2
        self.relations = spec.relations
        self.notes = spec.notes

        rot = spec.rot if spec.rot is not None else mat_identity(2)
        rot_pows = [mat_identity(2)]
        for _ in range(1, spec.d):
            rot_pows.append(matmul(rot_pows[-1], rot))
        rot_inv = mat_inv_unimodular(rot)
        rot_inv_pows = [mat_identity(2)]
        for _ in range(1, spec.d):
            rot_inv_pows.append(matmul(rot_inv_pows[-1], rot_inv))

        parts: list[tuple[int, int]] = [(k, 0) for k in range(spec.d)]
        if spec.refl is not None:
            parts += [(k, 1) for k in range(spec.d)]
        self._parts = parts
        self.F: tuple[str, ...] = tuple(_label(k, e, spec.refl) for k, e in parts)
        self._part_of = {lbl: ke for lbl, ke in zip(self.F, parts)}

        # act(rho^k gamma^e) = act(gamma)^e @ act(rho)^k  (column vectors)
        self.act: dict[str, Mat] = {}
        for lbl, (k, e) in zip(self.F, parts):
            m = rot_pows[k]
            if e:
                m = matmul(spec.mirror, m)
            self.act[lbl] = m
        self.act_inv: dict[str, Mat] = {lbl: mat_inv_unimodular(m) for lbl, m in self.act.items()}

        # translation picked up when gamma crosses rho^m:  gamma rho^m = tau[m] rho^-m gamma
        t1 = matvec(rot, vadd(spec.rel_rg, vneg(spec.beta1)))
        tau = [_ZERO]
        for m in range(1, spec.d):
            tau.append(vadd(tau[-1], matvec(rot_pows[m - 1], t1)))

        self.fprod: dict[tuple[str, str], tuple[Vec, str]] = {}
        for lbl1, (k, e) in zip(self.F, parts):
            for lbl2, (m, n) in zip(self.F, parts):
                if e == 0:
                    c: Vec = _ZERO
                    h = ((k + m) % spec.d, n)
                else:
                    j = (k - m) % spec.d
                    c = matvec(rot_inv_pows[k], tau[m])
                    if n == 1:
                        c = vadd(c, matvec(rot_inv_pows[j], spec.beta1))
                    h = (j, 1 - n)
                self.fprod[(lbl1, lbl2)] = (c, _label(h[0], h[1], spec.refl))

        # inverse transversal data: point_inv[f] = (g, c(f, g)) with point(f*g) = 1
        self.point_inv: dict[str, tuple[str, Vec]] = {}
        for f in self.F:
            g = next(g for g in self.F if self.fprod[(f, g)][1] == "1")
            self.point_inv[f] = (g, self.fprod[(f, g)][0])

        self.identity = Element(_ZERO, "1")
        gens: dict[str, Element] = {"x": Element(_X, "1"), "y": Element(_Y, "1")}
        if spec.d > 1:
            gens["r"] = Element(_ZERO, "rho")
        if spec.refl == "sigma":
            gens["s"] = Element(_ZERO, "sigma")
        elif spec.refl == "gamma":
            gens["g"] = Element(_ZERO, "gamma")
        self.generators = gens

        # conjugation table for pure transversal parts: (0,f)^(0,fp) = s * h
        self.point_conj: dict[tuple[str, str], tuple[Vec, str]] = {}
        for f in self.F:
            for fp in self.F:
                c = self.conj(Element(_ZERO, f), Element(_ZERO, fp))
                self.point_conj[(f, fp)] = (c.a, c.f)

    # -- group operations ----------------------------------------------------

    def mul(self, g: Element, h: Element) -> Element:
        c, lbl = self.fprod[(g.f, h.f)]
        m = self.act_inv[g.f]
        b = h.a
        return Element(
            (g.a[0] + m[0][0] * b[0] + m[0][1] * b[1] + c[0],
             g.a[1] + m[1][0] * b[0] + m[1][1] * b[1] + c[1]),
            lbl,
        )

    def inv(self, g: Element) -> Element:
        lbl, c = self.point_inv[g.f]
        m = self.act[g.f]
        u = (g.a[0] + c[0], g.a[1] + c[1])
        return Element((-(m[0][0] * u[0] + m[0][1] * u[1]), -(m[1][0] * u[0] + m[1][1] * u[1])), lbl)

    def conj(self, g: Element, h: Element) -> Element:
        """g^h = h^-1 g h."""
        return self.mul(self.inv(h), self.mul(g, h))

    def commutator(self, g: Element, h: Element) -> Element:
        """(g, h) = g^-1 h^-1 g h."""
        return self.mul(self.inv(g), self.mul(self.inv(h), self.mul(g, h)))

    def power(self, g: Element, n: int) -> Element:
        out = self.identity
        base = g if n >= 0 else self.inv(g)
        for _ in range(abs(n)):
            out = self.mul(out, base)
        return out

    # -- element helpers ------------------------------------------------------

    def element(self, i: int, j: int, f: str = "1") -> Element:
        if f not in self._part_of:
            raise ValueError(f"unknown transversal label {f!r} for {self.gid}")
        return Element((i, j), f)

    def check_element(self, g: Element) -> Element:
        if g.f not in self._part_of:
            raise ValueError(f"element {g} does not belong to {self.gid}")
        return g

    def ball(self, radius: int) -> list[Element]:
        """All a*f with max-norm(a) <= radius, ordered by norm then lexicographically."""
        cells = sorted(
            ((i, j) for i in range(-radius, radius + 1) for j in range(-radius, radius + 1)),
            key=lambda v: (max(abs(v[0]), abs(v[1])), v),
        )
        return [Element(v, f) for v in cells for f in self.F]

    def word(self, tokens: str) -> Element:
        """Evaluate a word over x, y, r, s, g (capital letter = inverse)."""
        out = self.identity
        for t in tokens:
            low = t.lower()
            if low not in self.generators:
                raise ValueError(f"generator {t!r} not available in {self.gid}")
            e = self.generators[low]
            out = self.mul(out, e if t == low else self.inv(e))
        return out

    # -- verification ----------------------------------------------------------

    def check_presentation(self) -> dict:
        results = []
        for name, lhs, rhs in self.relations:
            holds = self.word(lhs) == self.word(rhs)
            results.append({"relation": name, "holds": holds})
        return {
            "group": self.gid,
            "relations": results,
            "violations": [r["relation"] for r in results if not r["holds"]],
            "notes": list(self.notes),
        }


@lru_cache(maxsize=None)
def load_group(gid: str) -> GroupTable:
    return GroupTable(gid)


def all_groups() -> Iterator[GroupTable]:
    for gid in GROUP_IDS:
        yield load_group(gid)


_TOKEN_RE = re.compile(r"([xy])(?:\^(-?\d+))?$")


def parse_element(table: GroupTable, text: str) -> Element:
    """Parse a compact element like 'x^2 y^-1 rhogamma', 'gamma', or '1'.

    Tokens may be separated by whitespace or '*'; at most one transversal label,
    in trailing position.
    """
    toks = [t for t in re.split(r"[\s*]+", text.strip()) if t]
    vec = [0, 0]
    f = "1"
    for pos, tok in enumerate(toks):
        m = _TOKEN_RE.match(tok)
        if m:
            exp = int(m.group(2)) if m.group(2) is not None else 1
            vec[0 if m.group(1) == "x" else 1] += exp
            continue
        if tok in table._part_of:
            if pos != len(toks) - 1:
                raise ValueError(f"transversal label {tok!r} must come last in {text!r}")
            f = tok
            continue
        raise ValueError(f"cannot parse token {tok!r} in element {text!r}")
    return Element((vec[0], vec[1]), f)
