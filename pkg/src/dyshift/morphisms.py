"""Generator-level morphisms as letter assignments.

Every map here is a function ``letter -> FreeElem``; whole elements are
mapped with :func:`dyshift.freealg.substitute`.  The helpers accept either
a single letter ``(tag, i, r)`` together with an algebra, or any
FreeElem.
"""
from __future__ import annotations

from fractions import Fraction

from .cartan import CartanDatum
from .freealg import (
    DOUBLE,
    YANGIAN,
    FreeAlgebra,
    FreeElem,
    antibracket,
    binom,
    bracket,
    relation_template,
    substitute,
)
from .report import Report

__all__ = [
    "t_i1",
    "tau_assignment",
    "tau_c",
    "tau_z",
    "chi",
    "ti_letter",
    "translate_ti",
    "sigma_letter",
    "sigma",
    "iota",
    "gamma_gen",
    "verify_ti_identities",
]


def _check_side(e: FreeElem, side):
    if e.alg.side != side:
        raise ValueError(f"expected an element of the {side} side")


def t_i1(alg: FreeAlgebra, i) -> FreeElem:
    """t_{i1} = h_{i1} - (hbar/2) h_{i0}^2 on either side."""
    h0 = alg.h(i, 0)
    return alg.h(i, 1) - (h0 * h0).hbar_mul(1).scale(Fraction(1, 2))


def tau_assignment(alg: FreeAlgebra, c):
    """Letter images of the shift tau_c on the Yangian."""
    c = Fraction(c)

    def image(letter):
        tag, i, r = letter
        if tag in ("h", "d"):
            return alg.gen(letter)
        total = alg.zero()
        for k in range(r, -1, -1):
            total = total + alg.gen((tag, i, k)).scale(binom(r, k) * c ** (r - k))
        return total

    return image


def tau_c(e: FreeElem, c) -> FreeElem:
    """Shift automorphism x_{ir} -> sum_k binom(r,k) c^(r-k) x_{ik}."""
    _check_side(e, YANGIAN)
    return substitute(e, tau_assignment(e.alg, c))


def _poly_mul(p, q):
    out: dict = {}
    for a, x in p.items():
        for b, y in q.items():
            v = x * y
            out[a + b] = out[a + b] + v if a + b in out else v
    return {k: v for k, v in out.items() if v}


def tau_z(e: FreeElem) -> dict:
    """Polynomial form of the shift, ``{z power: FreeElem}``."""
    _check_side(e, YANGIAN)
    alg = e.alg

    def image(letter):
        tag, i, r = letter
        if tag in ("h", "d"):
            return {0: alg.gen(letter)}
        return {r - k: alg.gen((tag, i, k)).scale(binom(r, k)) for k in range(r, -1, -1)}

    total: dict = {}
    for (w, ex), c in e.terms.items():
        poly = {0: alg.scalar(c, ex)}
        for letter in w:
            poly = _poly_mul(poly, image(letter))
        for k, v in poly.items():
            total[k] = total[k] + v if k in total else v
    return {k: v for k, v in sorted(total.items()) if v}


def chi(a, e: FreeElem) -> FreeElem:
    """Scale the degree-k component by a^k."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("chi needs a nonzero scalar")
    out = {}
    for (w, ex), c in e.terms.items():
        k = ex + sum(letter[2] for letter in w)
        out[(w, ex)] = c * a**k
    return FreeElem(e.alg, out)


def ti_letter(i, n, letter):
    tag, j, r = letter
    if j == i and tag == "X+":
        return (tag, j, r + n)
    if j == i and tag == "X-":
        return (tag, j, r - n)
    return letter


def translate_ti(i, n, e: FreeElem) -> FreeElem:
    """Translation t_i^n of the double: X_{jr}^+- -> X_{j, r +- n delta_ij}^+-."""
    _check_side(e, DOUBLE)
    alg = e.alg
    return substitute(e, lambda letter: alg.gen(ti_letter(i, n, letter)))


def sigma_letter(i, sign, letter):
    tag, j, r = letter
    if tag in ("X+", "X-"):
        s = 1 if tag == "X+" else -1
        if s != sign:
            raise ValueError("sigma is only defined on the Borel part of its sign")
        if j == i:
            return (tag, j, r + 1)
    return letter


def sigma(i, sign, e: FreeElem) -> FreeElem:
    """Shift x_{ir}^sign -> x_{i,r+1}^sign, fixing h_{jr} and x_{jr}^sign for j != i."""
    _check_side(e, YANGIAN)
    alg = e.alg
    return substitute(e, lambda letter: alg.gen(sigma_letter(i, sign, letter)))


def iota(e: FreeElem) -> FreeElem:
    """Inclusion of the Yangian alphabet into the double."""
    _check_side(e, YANGIAN)
    target = FreeAlgebra(e.alg.datum, DOUBLE)
    return FreeElem(target, dict(e.terms))


def gamma_gen(e: FreeElem) -> FreeElem:
    """Gamma = iota o tau_{-1}."""
    return iota(tau_c(e, -1))


def _ad_t(alg, i, x: FreeElem) -> FreeElem:
    """Bracket with iota(t_{i1}) on combinations of X_{i,s}, by the rule [iota(t_i1), X_is] = +-2 d_i X_{i,s+1}."""
    d = alg.datum.di(i)
    out = alg.zero()
    for (w, ex), c in x.terms.items():
        (tag, j, s), = w
        if j != i or ex:
            raise ValueError("the t_i1 rewriting applies to X_{i,s} only")
        sg = 1 if tag == "X+" else -1
        out = out + alg.x(i, s + 1, sg).scale(c * 2 * d * sg)
    return out


def _ad_h0(alg, i, x: FreeElem) -> FreeElem:
    """Bracket with H_{i0} = d_i alpha_i^vee on combinations of X_{j,s}."""
    out = alg.zero()
    for (w, ex), c in x.terms.items():
        (tag, j, s), = w
        sg = 1 if tag == "X+" else -1
        out = out + alg.x(j, s, sg).scale(c * sg * alg.datum.di(i) * alg.datum.aij(i, j))
    return out


def tidy_certificate(datum: CartanDatum, i, s, sign) -> FreeElem:
    """Residual of the t_i1 translation rule against relation instances; zero when it holds.

    ``[t_{i1}, X_is] -+ 2 d_i X_{i,s+1}`` equals the (xh) instance
    ``(i, i, 0, s)`` plus ``d_i`` times the (h0x) instance for the coroot
    at mode s+1, minus ``(hbar d_i / 2)`` times ``H_i0 T + T H_i0`` with T
    the (h0x) instance at mode s.
    """
    alg = FreeAlgebra(datum, DOUBLE)
    d = datum.di(i)
    lhs = bracket(t_i1(alg, i), alg.x(i, s, sign)) - alg.x(i, s + 1, sign).scale(sign * 2 * d)
    txh = relation_template("xh", datum, (i, i, 0, s), DOUBLE, sign).elem
    ta1 = relation_template("h0x", datum, (("h", i), i, s + 1), DOUBLE, sign).elem
    ta0 = relation_template("h0x", datum, (("h", i), i, s), DOUBLE, sign).elem
    h0 = alg.h(i, 0)
    rhs = txh + ta1.scale(d) - antibracket(h0, ta0).hbar_mul(1).scale(Fraction(d, 2))
    return lhs - rhs


def verify_ti_identities(datum: CartanDatum, bound: int) -> Report:
    """Check the displayed generator identities behind (id - t_i) J^n in J^(n+1).

    For |r|, |s| <= bound:

    * ``(id - t_i)(X+_jr - X+_js) = delta_ij/(2 d_i) [iota(t_i1 - h_i0), X+_is - X+_ir]``
    * ``(id - t_i)(X-_jr - X-_js) = delta_ij/(2 d_i) [iota(t_i1 - h_i0), X-_{i,s-1} - X-_{i,r-1}]``

    where the bracket is expanded by the t_i1 translation rule and (h0x).  A second group of
    cells ``("tidy", i, s, sign)`` checks that the translation rule itself is a
    combination of relation instances, as a literal identity.
    """
    alg = FreeAlgebra(datum, DOUBLE)
    rep = Report("morph.ti", datum.label)
    modes = range(-bound, bound + 1)
    for i in datum.index:
        for s in range(-bound - 1, bound + 1):
            for sign in (1, -1):
                res = tidy_certificate(datum, i, s, sign)
                rep.add(("tidy", i, s, sign), res.is_zero(), res)
    for i in datum.index:
        d = datum.di(i)
        for j in datum.index:
            for r in modes:
                for s in modes:
                    for sign in (1, -1):
                        diff = alg.x(j, r, sign) - alg.x(j, s, sign)
                        lhs = diff - translate_ti(i, 1, diff)
                        if i == j:
                            if sign == 1:
                                y = alg.xp(i, s) - alg.xp(i, r)
                            else:
                                y = alg.xm(i, s - 1) - alg.xm(i, r - 1)
                            br = _ad_t(alg, i, y) - _ad_h0(alg, i, y)
                            rhs = br.scale(Fraction(1, 2 * d))
                        else:
                            rhs = alg.zero()
                        res = lhs - rhs
                        rep.add((i, j, r, s, sign), res.is_zero(), res)
    return rep
