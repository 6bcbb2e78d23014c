"""The classical limit of the shift operator.

``gamma: C[v^+-1, w^+-1] -> C[v^+-1][[t]]`` sends ``w`` to ``1 + t`` and
fixes ``v``.  It induces ``phi_gamma`` from Kassel's model over the w-ring
to the completed model over ``C[v^+-1, t]``; composing with the MRY
assignment gives the classical limit ``phi`` on generators.  Everything is
computed modulo ``t^M``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._linalg import Echelon, rank_and_kernel
from .cartan import CartanDatum
from .freealg import binom
from .liealg import (
    LAURENT_T,
    LAURENT_W,
    POLY_T,
    CentralElem,
    LieWord,
    LoopElem,
    SimpleLieAlg,
    UCEElem,
    build_simple,
    dt_coords,
    dv_coords,
    eval_lie_word,
    model_for,
    mry_psi,
    omega_reduce,
    random_uce,
    uce_bracket,
)
from .report import Report

__all__ = [
    "TruncSeries",
    "binomial_series",
    "log1p_series",
    "gamma_ring",
    "phi_gamma",
    "phi_gamma_form",
    "phi_limit_gen",
    "RankReport",
    "kernel_window",
    "injectivity_window",
    "upsilon_c",
    "gr_check",
    "check_phi_gamma_formulas",
    "check_phi_gamma_hom",
    "check_ext_limit",
]


def binomial_series(s, M):
    """Coefficients of ``(1 + t)^s`` below ``t^M``, by the ratio recurrence."""
    out = []
    c = Fraction(1)
    for k in range(M):
        out.append(c)
        c = c * (s - k) / (k + 1)
    return out


def log1p_series(M):
    """Coefficients of ``log(1 + t)`` below ``t^M``: integrate ``1/(1+t)`` termwise."""
    inv = binomial_series(-1, M)
    return [Fraction(0)] + [inv[k] / (k + 1) for k in range(M - 1)]


@dataclass
class TruncSeries:
    """Element of the completed model modulo ``t^M``.

    ``scalars`` holds a plain series ``{(r, s): q}`` for ``v^r t^s``; the
    Lie part is a loop element and a central element over ``C[v^+-1, t]``.
    """

    M: int
    loop: LoopElem = None
    central: CentralElem = None
    scalars: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("truncation order must be >= 1")
        if self.loop is None:
            self.loop = LoopElem(POLY_T)
        if self.central is None:
            self.central = CentralElem(POLY_T)
        M = self.M
        self.loop = LoopElem(POLY_T, {k: v for k, v in self.loop.terms.items() if k[2] < M})
        c = self.central
        self.central = CentralElem(POLY_T, {k: v for k, v in c.K.items() if k[1] < M}, c.cv, 0)
        self.scalars = {k: Fraction(v) for k, v in self.scalars.items() if v and k[1] < M}

    def coords(self) -> dict:
        out = {("x", b, r, s): c for (b, r, s), c in self.loop.terms.items()}
        out.update({("K", r, s): c for (r, s), c in self.central.K.items()})
        if self.central.cv:
            out[("cv",)] = self.central.cv
        out.update({("1", r, s): c for (r, s), c in self.scalars.items()})
        return out

    def slice(self, s) -> dict:
        """Coordinates of t-degree s."""
        out = {}
        for k, c in self.coords().items():
            deg = 0 if k[0] == "cv" else k[-1]
            if deg == s:
                out[k] = c
        return out

    def __add__(self, other):
        M = min(self.M, other.M)
        sc = dict(self.scalars)
        for k, v in other.scalars.items():
            sc[k] = sc.get(k, 0) + v
        return TruncSeries(M, self.loop + other.loop, self.central + other.central, sc)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return TruncSeries(self.M, self.loop.scale(c), self.central.scale(c),
                           {k: c * v for k, v in self.scalars.items()})

    def __mul__(self, other):
        """Product of scalar series."""
        out: dict = {}
        for (r, s), a in self.scalars.items():
            for (k, l), b in other.scalars.items():
                out[(r + k, s + l)] = out.get((r + k, s + l), 0) + a * b
        return TruncSeries(min(self.M, other.M), scalars=out)

    def bracket(self, other, model: SimpleLieAlg):
        x = UCEElem(self.loop, CentralElem(POLY_T))
        y = UCEElem(other.loop, CentralElem(POLY_T))
        b = uce_bracket(x, y, model)
        return TruncSeries(min(self.M, other.M), b.loop, b.central)

    def __eq__(self, other):
        return isinstance(other, TruncSeries) and self.M == other.M and self.coords() == other.coords()

    def is_zero(self):
        return not self.coords()

    def to_json_obj(self):
        def key(k):
            return [str(x) for x in k]

        return {"M": self.M, "coords": [[key(k), str(v)] for k, v in sorted(self.coords().items(), key=str)]}

    def __str__(self):
        return " + ".join(f"{v}*{k}" for k, v in sorted(self.coords().items(), key=str)) or "0"


def gamma_ring(p: dict, M: int) -> TruncSeries:
    """``gamma`` on a Laurent polynomial ``{(r, s): q}`` in ``v, w``."""
    out: dict = {}
    for (r, s), q in p.items():
        for k, b in enumerate(binomial_series(s, M)):
            if b:
                out[(r, k)] = out.get((r, k), 0) + q * b
    return TruncSeries(M, scalars=out)


def _gamma_loop(loop: LoopElem, M: int) -> LoopElem:
    out: dict = {}
    for (b, r, s), q in loop.terms.items():
        for k, c in enumerate(binomial_series(s, M)):
            if c:
                key = (b, r, k)
                out[key] = out.get(key, 0) + q * c
    return LoopElem(POLY_T, out)


def _central_closed_form(c: CentralElem, M: int) -> CentralElem:
    """Closed forms of ``phi_gamma`` on the basis of z(C[v^+-1, w^+-1]).

    ``K_{r,s} = (1/s) v^(r-1) w^s d(v)`` goes to ``(1/s) v^(r-1) (1+t)^s d(v)``;
    ``K_{r,0} = -(1/r) v^r w^-1 d(w)`` goes to ``v^(r-1) log(1+t) d(v)``;
    ``c_v`` is fixed and ``c_w`` is killed.
    """
    out = CentralElem(POLY_T, {}, c.cv, 0)
    logc = log1p_series(M)
    for (r, s), q in c.K.items():
        if s:
            for k, b in enumerate(binomial_series(s, M)):
                if b:
                    out = out + dv_coords(r - 1, k, POLY_T).scale(q * b / s)
        else:
            for k, b in enumerate(logc):
                if b:
                    out = out + dv_coords(r - 1, k, POLY_T).scale(q * b)
    return out


def phi_gamma(x: UCEElem, M: int) -> TruncSeries:
    """``phi_gamma`` on Kassel's model over the w-ring, modulo ``t^M``."""
    if x.ring != LAURENT_W:
        raise ValueError("phi_gamma acts on the w-ring model")
    return TruncSeries(M, _gamma_loop(x.loop, M), _central_closed_form(x.central, M))


def phi_gamma_form(b: dict, e: dict, M: int) -> TruncSeries:
    """``gamma(b) d(gamma(e))`` for Laurent polynomials ``b, e`` in ``v, w``.

    Computed directly from the truncated series and the module relations
    in z(C[v^+-1, t]); shares nothing with the closed forms.
    """
    gb = gamma_ring(b, M).scalars
    ge = gamma_ring(e, M).scalars
    out = CentralElem(POLY_T)
    for (a, k), x in gb.items():
        for (c, l), y in ge.items():
            if k + l < M:
                out = out + omega_reduce(a, k, c, l, POLY_T).scale(x * y)
    return TruncSeries(M, central=out)


def phi_limit_gen(gen, datum: CartanDatum, M: int, model=None) -> TruncSeries:
    """Classical limit ``phi`` on ``X_{ir}^+-``: the MRY image over the w-ring, then phi_gamma."""
    model = model or model_for(datum)
    return phi_gamma(mry_psi(gen, datum, model, ring=LAURENT_W), M)


# ---------------------------------------------------------------------------
# rank certificates


@dataclass
class RankReport:
    window: dict
    domain_dim: int
    rank: int
    nullity: int
    kernel_basis: list
    expected_kernel: list | None = None

    @property
    def passed(self):
        if self.expected_kernel is None:
            return self.nullity == 0
        return _same_span(self.kernel_basis, self.expected_kernel)

    def to_json_obj(self):
        def enc(v):
            return {_label_str(k): str(c) for k, c in sorted(v.items(), key=str)}

        return {
            "window": self.window,
            "domain_dim": self.domain_dim,
            "rank": self.rank,
            "nullity": self.nullity,
            "kernel_basis": [enc(v) for v in self.kernel_basis],
        }


def _label_str(k):
    if isinstance(k, tuple):
        return ":".join(str(x) for x in k)
    return str(k)


def _same_span(A, B):
    ea = Echelon()
    for v in A:
        ea.add(v)
    if len(ea) != len(A) or len(A) != len(B):
        return False
    return all(not ea.reduce(v)[0] for v in B)


def _window_columns(R, S, loop_basis=()):
    cols = []
    for r in range(-R, R + 1):
        for s in range(-S, S + 1):
            if s:
                cols.append(("dv", r, s))
    cols += [("dw", r) for r in range(-R, R + 1) if r]
    cols += [("cv",), ("cw",)]
    for b in loop_basis:
        for r in range(-R, R + 1):
            for s in range(-S, S + 1):
                cols.append(("x", b, r, s))
    return cols


def _column_elem(col) -> UCEElem:
    tag = col[0]
    if tag == "dv":
        return UCEElem.from_central(dv_coords(col[1], col[2], LAURENT_W))
    if tag == "dw":
        return UCEElem.from_central(dt_coords(col[1], -1, LAURENT_W))
    if tag == "cv":
        return UCEElem.from_central(CentralElem(LAURENT_W, cv=1))
    if tag == "cw":
        return UCEElem.from_central(CentralElem(LAURENT_W, ct=1))
    _, b, r, s = col
    return UCEElem(LoopElem(LAURENT_W, {(b, r, s): 1}), CentralElem(LAURENT_W))


def kernel_window(R: int, S: int, M: int, loop_basis=()) -> RankReport:
    """Matrix of ``phi_gamma`` on a window of z(C[v^+-1, w^+-1]), modulo ``t^M``.

    Columns: ``v^r w^s d(v)`` for ``|r| <= R``, ``0 < |s| <= S``;
    ``v^r w^-1 d(w)`` for ``0 < |r| <= R``; ``c_v``; ``c_w``; optionally loop
    columns ``e_b (x) v^r w^s``.  The expected kernel is ``span{c_w}``.
    The truncation must keep ``(1+t)^s - 1`` and ``log(1+t)`` independent,
    which needs ``M >= 2S + 2``; smaller M is reported as is.
    """
    if R < 0 or S < 0:
        raise ValueError("window radii must be >= 0")
    if M <= S:
        raise ValueError("truncation order must exceed the window's t-radius")
    cols = _window_columns(R, S, loop_basis)
    images = [phi_gamma(_column_elem(c), M).coords() for c in cols]
    rank, kernel = rank_and_kernel(images)
    kernel = [{cols[n]: c for n, c in v.items()} for v in kernel]
    return RankReport({"R": R, "S": S, "M": M}, len(cols), rank, len(cols) - rank, kernel,
                      expected_kernel=[{("cw",): Fraction(1)}])


def _uce_coords(x: UCEElem) -> dict:
    out = {("x", b, r, s): c for (b, r, s), c in x.loop.terms.items()}
    out.update({("K", r, s): c for (r, s), c in x.central.K.items()})
    if x.central.cv:
        out[("cv",)] = x.central.cv
    return out


def injectivity_window(datum: CartanDatum, R: int, M: int, brackets=True) -> RankReport:
    """Rank of ``phi`` on a window of the loop-type Lie algebra, modulo ``c_w``.

    The window is spanned by the MRY images of ``X_{ir}^+-`` with
    ``|r| <= R`` and, with ``brackets``, of the ``[X+_{ir}, X-_{js}]`` of
    degree ``|r + s| <= R``.  ``domain_dim`` is the dimension of that span
    and ``rank`` the dimension of its image; the certificate is
    ``nullity == 0``.  Degrees up to R stay separated modulo ``t^M`` once
    ``M >= 2R + 2``.
    """
    model = model_for(datum)
    modes = range(-R, R + 1)
    words = [LieWord.X(sg, i, r) for i in datum.index for r in modes for sg in (1, -1)]
    if brackets:
        words += [LieWord.X(1, i, r) @ LieWord.X(-1, j, s)
                  for i in datum.index for j in datum.index for r in modes for s in modes
                  if abs(r + s) <= R]
    dom = Echelon()
    img = Echelon()
    for w in words:
        x = eval_lie_word(w, datum, model, ring=LAURENT_W).drop_ct()
        if dom.add(_uce_coords(x), str(w)) is None:
            img.add(phi_gamma(x, M).coords(), str(w))
    d, r = len(dom), len(img)
    return RankReport({"R": R, "M": M, "datum": datum.label, "elements": len(words)},
                      d, r, d - r, [])


# ---------------------------------------------------------------------------
# finite type


def upsilon_c(f: LoopElem, c, M: int) -> TruncSeries:
    """``t -> t + c`` on a loop element in t, expanded in nonnegative powers below ``t^M``."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("evaluation point must be nonzero")
    out: dict = {}
    for (b, r, s), q in f.terms.items():
        if r:
            raise ValueError("upsilon_c acts on loop elements in t only")
        for k in range(M):
            coef = binom(s, k) * c ** (s - k)
            if coef:
                out[(b, 0, k)] = out.get((b, 0, k), 0) + q * coef
    return TruncSeries(M, LoopElem(POLY_T, out))


def _loop_bracket(x: LoopElem, y: LoopElem, model: SimpleLieAlg) -> LoopElem:
    out: dict = {}
    yb = y.by_exponent()
    for (r, s), vx in x.by_exponent().items():
        for (k, l), vy in yb.items():
            for b, c in model.bracket(vx, vy).items():
                key = (b, r + k, s + l)
                out[key] = out.get(key, 0) + c
    ring = POLY_T if x.ring == y.ring == POLY_T else LAURENT_T
    return LoopElem(ring, out)


def _poly_t_minus_c_power(n, c):
    """Coefficients of ``(t - c)^n``."""
    return {k: binom(n, k) * (-c) ** (n - k) for k in range(n + 1)}


def gr_check(datum: CartanDatum, c=1, n_max: int = 3, M: int = 8, k_radius: int = 3) -> Report:
    """Associated graded of ``Upsilon_c`` at window scale.

    For each ``n <= n_max`` the spanning set ``(t - c)^n t^k e_b`` with
    ``|k| <= k_radius`` is mapped by ``Upsilon_c``.  Cells:

    * ``("filtered", n)``: every image has vanishing slices of degree < n;
    * ``("rank", n)``: projecting to the ``t^n`` slice has rank dim g;
    * ``("quotient", n)``: the ``(t - c)^(n+1)`` multiples project to 0.
    """
    if n_max >= M:
        raise ValueError("need n_max < M")
    c = Fraction(c)
    model = build_simple(datum.kind, datum.rank) if not datum.affine else None
    if model is None:
        raise ValueError("gr_check needs a finite-type datum")
    rep = Report("limit.grcheck", datum.label)

    def images(n):
        for b in model.basis:
            for k in range(-k_radius, k_radius + 1):
                poly = _poly_t_minus_c_power(n, c)
                f = LoopElem(LAURENT_T, {(b, 0, k + j): q for j, q in poly.items()})
                yield upsilon_c(f, c, M)

    for n in range(n_max + 1):
        low_ok = True
        top = Echelon()
        for img in images(n):
            coords = img.coords()
            if any(key[3] < n for key in coords):
                low_ok = False
            top.add({key[1]: v for key, v in coords.items() if key[3] == n})
        rep.add(("filtered", n), low_ok)
        rep.add(("rank", n), len(top) == model.dim, None, rank=len(top), dim=model.dim)
        q_ok = all(not any(key[3] <= n for key in img.coords()) for img in images(n + 1))
        rep.add(("quotient", n), q_ok)
    return rep


# ---------------------------------------------------------------------------
# suites


def check_phi_gamma_formulas(R: int, S: int, M: int) -> Report:
    """Closed forms of ``phi_gamma`` against independent expansions.

    * ``("dv", r, s)``: ``v^r w^s d(v)`` versus ``gamma(v^r w^s) d(gamma(v))``;
    * ``("dw", r)``: ``v^r w^-1 d(w)`` versus ``-r v^(r-1) sum (-1)^k t^(k+1)/(k+1) d(v)``
      and versus ``gamma(v^r w^-1) d(gamma(w))``;
    * ``("cv",)`` and ``("cw",)``.
    """
    rep = Report("limit.phigamma", "-")
    for r in range(-R, R + 1):
        for s in range(-S, S + 1):
            lhs = phi_gamma(UCEElem.from_central(dv_coords(r, s, LAURENT_W)), M)
            rhs = phi_gamma_form({(r, s): 1}, {(1, 0): 1}, M)
            rep.add(("dv", r, s), lhs == rhs, lhs - rhs)
    for r in range(-R, R + 1):
        lhs = phi_gamma(UCEElem.from_central(dt_coords(r, -1, LAURENT_W)), M)
        series = CentralElem(POLY_T)
        for k in range(M - 1):
            series = series + dv_coords(r - 1, k + 1, POLY_T).scale(Fraction(-r * (-1) ** k, k + 1))
        rhs1 = TruncSeries(M, central=series)
        rhs2 = phi_gamma_form({(r, -1): 1}, {(0, 1): 1}, M)
        rep.add(("dw", r), lhs == rhs1 and lhs == rhs2, lhs - rhs1)
    cw = phi_gamma(UCEElem.from_central(CentralElem(LAURENT_W, ct=1)), M)
    rep.add(("cw",), cw.is_zero(), cw)
    cv = phi_gamma(UCEElem.from_central(CentralElem(LAURENT_W, cv=1)), M)
    rep.add(("cv",), cv == TruncSeries(M, central=CentralElem(POLY_T, cv=1)), cv)
    return rep


def check_phi_gamma_hom(model: SimpleLieAlg, M: int, trials=100, seed=0) -> Report:
    """``phi_gamma([x, y]) = [phi_gamma(x), phi_gamma(y)]`` modulo ``t^M`` on random pairs."""
    rep = Report("limit.hom", model.datum.label)
    rng = np.random.default_rng(seed)
    for n in range(trials):
        x = random_uce(rng, model, LAURENT_W)
        y = random_uce(rng, model, LAURENT_W)
        lhs = phi_gamma(uce_bracket(x, y, model), M)
        rhs = phi_gamma(x, M).bracket(phi_gamma(y, M), model)
        rep.add(("pair", n), lhs == rhs, lhs - rhs)
    return rep


def check_ext_limit(datum: CartanDatum, bound: int, M: int) -> Report:
    """Loop part of ``phi`` equals ``(id (x) gamma)`` of the loop projection.

    Checked on generators and on the brackets ``[X+_{ir}, X-_{js}]``;
    for brackets the image is also compared with the bracket of images.
    """
    model = model_for(datum)
    rep = Report("limit.square", datum.label)
    modes = range(-bound, bound + 1)
    for i in datum.index:
        for r in modes:
            for sg in (1, -1):
                x = eval_lie_word(LieWord.X(sg, i, r), datum, model, LAURENT_T)
                lhs = phi_limit_gen((sg, i, r), datum, M, model).loop
                rhs = _gamma_loop(LoopElem(LAURENT_W, x.loop.terms), M)
                rep.add(("gen", i, r, sg), lhs == rhs)
    for i, j in itertools.product(datum.index, datum.index):
        for r, s in itertools.product(modes, modes):
            w = LieWord.X(1, i, r) @ LieWord.X(-1, j, s)
            img = phi_gamma(eval_lie_word(w, datum, model, LAURENT_W), M)
            sq = _gamma_loop(LoopElem(LAURENT_W, eval_lie_word(w, datum, model, LAURENT_T).loop.terms), M)
            hom = phi_limit_gen((1, i, r), datum, M, model).bracket(
                phi_limit_gen((-1, j, s), datum, M, model), model)
            rep.add(("bracket", i, j, r, s), img.loop == sq and img == hom)
    return rep
