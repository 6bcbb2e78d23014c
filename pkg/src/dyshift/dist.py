"""Formal distributions built from divided-derivative delta functions.

Symbols
-------
``D1(n; x)``
    the series ``d_z^(n) (x^-1 delta(z/x)) = sum_q binom(q, n) z^(q-n) x^(-q-1)``.
``DSWAP(x, y)``
    the series ``x^-1 delta(y/x) = sum_r y^r x^(-r-1)``.

A term is a product of such symbols (one D1 per variable) with a Laurent
monomial prefactor.  Coefficients are FreeElems or rationals and are kept
in multiplication order; the symbols commute with them.

:func:`expand_window` expands terms into raw Laurent coefficients inside
a finite box.  It shares no code with the rewrite rules and is the oracle
they are tested against.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .freealg import binom

__all__ = [
    "Z",
    "DistTerm",
    "DistElem",
    "LaurentWindow",
    "d1",
    "dswap",
    "f",
    "monomial",
    "dist_mul",
    "mul_linear",
    "leibniz_fold",
    "expand_window",
    "window_equal",
    "window_mul_linear",
    "box",
    "check_dist_oracle",
]

Z = "z"


@dataclass(frozen=True, order=True)
class DistTerm:
    deltas: tuple = ()  # sorted ((var, n), ...)
    swap: tuple | None = None  # (x, y)
    mono: tuple = ()  # sorted ((var, exp), ...) with exp != 0

    def delta_vars(self):
        return {x for x, _ in self.deltas}

    def delta_order(self, x):
        for y, n in self.deltas:
            if y == x:
                return n
        return None

    def variables(self):
        vs = set(self.delta_vars()) | {x for x, _ in self.mono}
        if self.deltas:
            vs.add(Z)
        if self.swap:
            vs.update(self.swap)
        return vs

    def with_delta(self, x, n):
        ds = tuple(sorted([(y, m) for y, m in self.deltas if y != x] + [(x, n)]))
        return DistTerm(ds, self.swap, self.mono)

    def times_mono(self, var, k=1):
        acc = dict(self.mono)
        acc[var] = acc.get(var, 0) + k
        mono = tuple(sorted((v, e) for v, e in acc.items() if e))
        return DistTerm(self.deltas, self.swap, mono)

    def __str__(self):
        parts = [f"D1({n};{x})" for x, n in self.deltas]
        if self.swap:
            parts.append(f"DSWAP({self.swap[0]},{self.swap[1]})")
        parts += [f"{v}^{e}" if e != 1 else v for v, e in self.mono]
        return "*".join(parts) or "1"


class DistElem:
    """Finite sum ``coeff * term``; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for t, c in (terms or {}).items():
            if c:
                self.terms[t] = c

    @classmethod
    def single(cls, term, coeff=1):
        if not isinstance(coeff, Fraction) and isinstance(coeff, int):
            coeff = Fraction(coeff)
        return cls({term: coeff})

    def _acc(self, t, c):
        if t in self.terms:
            v = self.terms[t] + c
            if v:
                self.terms[t] = v
            else:
                del self.terms[t]
        elif c:
            self.terms[t] = c

    def __add__(self, other):
        out = DistElem(self.terms)
        for t, c in other.terms.items():
            out._acc(t, c)
        return out

    def __neg__(self):
        return DistElem({t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def lmul(self, x):
        """Multiply every coefficient on the left by x."""
        return DistElem({t: x * c for t, c in self.terms.items()})

    def rmul(self, x):
        return DistElem({t: c * x for t, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DistElem):
            return dist_mul(self, other)
        return self.rmul(other)

    def __rmul__(self, x):
        return self.lmul(x)

    def coefficient(self, term, default=0):
        return self.terms.get(term, default)

    def __eq__(self, other):
        if isinstance(other, DistElem):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "DistElem(0)"
        return "DistElem(" + " + ".join(f"({c})*{t}" for t, c in sorted(self.terms.items())) + ")"


def d1(n: int, x: str, coeff=1) -> DistElem:
    if n < 0:
        raise ValueError("derivative order must be >= 0")
    if x == Z:
        raise ValueError("delta symbols live in a variable other than z")
    return DistElem.single(DistTerm(((x, n),)), coeff)


def dswap(x: str, y: str, coeff=1) -> DistElem:
    if x == y or Z in (x, y):
        raise ValueError("swap needs two distinct non-z variables")
    return DistElem.single(DistTerm((), (x, y)), coeff)


def f(n: int, m: int, u="u", v="v", coeff=1) -> DistElem:
    """f_{n,m}(u, v, z) = D1(n; u) D1(m; v); zero if an index is negative."""
    if n < 0 or m < 0:
        return DistElem()
    return dist_mul(d1(n, u, coeff), d1(m, v))


def monomial(exps: dict, coeff=1) -> DistElem:
    mono = tuple(sorted((v, e) for v, e in exps.items() if e))
    return DistElem.single(DistTerm((), None, mono), coeff)


def _merge(s: DistTerm, t: DistTerm) -> DistTerm:
    if s.delta_vars() & t.delta_vars():
        raise ValueError("delta symbols on overlapping variables")
    if s.swap and t.swap:
        raise ValueError("at most one swap symbol per term")
    acc = dict(s.mono)
    for v, e in t.mono:
        acc[v] = acc.get(v, 0) + e
    return DistTerm(
        tuple(sorted(s.deltas + t.deltas)),
        s.swap or t.swap,
        tuple(sorted((v, e) for v, e in acc.items() if e)),
    )


def dist_mul(a: DistElem, b: DistElem) -> DistElem:
    """Product; coefficients multiply as ``coeff(a) * coeff(b)``."""
    out = DistElem()
    for s, c in a.terms.items():
        for t, e in b.terms.items():
            out._acc(_merge(s, t), c * e)
    return _normalize(out)


def _absorb_z(t: DistTerm, c, out: DistElem):
    """Rewrite positive z powers using z D1(n;w) = w D1(n;w) - D1(n-1;w)."""
    k = dict(t.mono).get(Z, 0)
    if k <= 0 or not t.deltas:
        out._acc(t, c)
        return
    w, n = t.deltas[0]
    base = t.times_mono(Z, -1)
    out_terms = DistElem()
    _absorb_z(base.times_mono(w, 1), c, out_terms)
    if n > 0:
        _absorb_z(base.with_delta(w, n - 1), -c, out_terms)
    for s, e in out_terms.terms.items():
        out._acc(s, e)


def _normalize(a: DistElem) -> DistElem:
    out = DistElem()
    for t, c in a.terms.items():
        _absorb_z(t, c, out)
    return out


def _times_var_minus_z(t: DistTerm, c, x, out: DistElem):
    """Accumulate (x - z) * c * t."""
    n = t.delta_order(x)
    if n is not None:
        if n > 0:
            out._acc(t.with_delta(x, n - 1), c)
        return
    tmp = DistElem()
    tmp._acc(t.times_mono(x, 1), c)
    tmp._acc(t.times_mono(Z, 1), -c)
    for s, e in _normalize(tmp).terms.items():
        out._acc(s, e)


def mul_linear(a: DistElem, x: str, y: str) -> DistElem:
    """Multiply by (x - y) and normalize with the delta rules.

    ``(u - z) D1(n;u) = D1(n-1;u)`` with ``D1(-1) = 0``; for two delta
    variables this gives ``(u - v) f_{n,m} = f_{n-1,m} - f_{n,m-1}``.  A
    swap symbol ``DSWAP(x, y)`` is killed by ``(x - y)``.
    """
    if x == y:
        raise ValueError("mul_linear needs x != y")
    out = DistElem()
    for t, c in a.terms.items():
        if t.swap and set(t.swap) == {x, y}:
            continue
        if y == Z:
            _times_var_minus_z(t, c, x, out)
        elif x == Z:
            _times_var_minus_z(t, -c, y, out)
        else:
            _times_var_minus_z(t, c, x, out)
            _times_var_minus_z(t, -c, y, out)
    return out


def leibniz_fold(a: DistElem) -> DistElem:
    """Fold blocks ``c * sum_k D1(k;u) D1(n-k;v)`` into ``c * DSWAP(u,v) D1(n;v)``."""
    blocks: dict = {}
    for t, c in a.terms.items():
        if len(t.deltas) != 2 or t.swap or t.mono:
            raise ValueError(f"term {t} is not of the form D1(k;u) D1(l;v)")
        (u, k), (v, m) = t.deltas
        blocks.setdefault((u, v, k + m), {})[k] = c
    out = DistElem()
    for (u, v, n), cs in sorted(blocks.items()):
        if set(cs) != set(range(n + 1)):
            raise ValueError(f"block of total order {n} in ({u},{v}) is incomplete")
        vals = [cs[k] for k in range(n + 1)]
        if any(val != vals[0] for val in vals[1:]):
            raise ValueError(f"block of total order {n} has unequal coefficients")
        out._acc(DistTerm(((v, n),), (u, v)), vals[0])
    return out


# ---------------------------------------------------------------------------
# raw expansion oracle


class LaurentWindow:
    """Raw coefficients of a distribution inside an exponent box.

    ``table`` maps exponent tuples (ordered like ``vars``) to nonzero
    coefficients; entries inside the box that are absent are zero.
    """

    def __init__(self, bounds: dict, table: dict):
        self.bounds = dict(bounds)
        self.vars = tuple(sorted(bounds))
        self.table = table

    @property
    def shape(self):
        return tuple(self.bounds[v][1] - self.bounds[v][0] + 1 for v in self.vars)

    def __getitem__(self, exps):
        if isinstance(exps, dict):
            exps = tuple(exps.get(v, 0) for v in self.vars)
        return self.table.get(tuple(exps), 0)

    def dense(self):
        ranges = [range(self.bounds[v][0], self.bounds[v][1] + 1) for v in self.vars]
        return {e: self.table.get(e, 0) for e in itertools.product(*ranges)}


def box(radius: int = 8, variables=("u", "v", Z)) -> dict:
    return {x: (-radius, radius) for x in variables}


def _expand_term(t: DistTerm, c, bounds: dict, table: dict):
    vars_ = tuple(sorted(bounds))
    for v in t.variables():
        if v not in bounds:
            raise ValueError(f"box misses variable {v}")
    base = {v: 0 for v in vars_}
    for v, e in t.mono:
        base[v] += e

    def slack(v, fixed):
        lo, hi = bounds[v]
        return lo - fixed, hi - fixed

    # swap index r first, ranging over the box of a variable it alone controls
    swap_choices = [None]
    if t.swap:
        x, y = t.swap
        dv = t.delta_vars()
        if x not in dv:
            lo, hi = slack(x, base[x])
            swap_choices = [(-e - 1) for e in range(lo, hi + 1)]
        elif y not in dv:
            lo, hi = slack(y, base[y])
            swap_choices = list(range(lo, hi + 1))
        else:
            width = sum(b[1] - b[0] + 1 for b in bounds.values())
            swap_choices = list(range(-width, width + 1))
    for r in swap_choices:
        exps = dict(base)
        if r is not None:
            x, y = t.swap
            exps[x] += -r - 1
            exps[y] += r
        idx_ranges = []
        for x, n in t.deltas:
            lo, hi = slack(x, exps[x])
            idx_ranges.append([(-e - 1) for e in range(lo, hi + 1)])
        for qs in itertools.product(*idx_ranges):
            e2 = dict(exps)
            coef = Fraction(1)
            for (x, n), q in zip(t.deltas, qs):
                e2[x] += -q - 1
                e2[Z] += q - n
                coef *= binom(q, n)
                if not coef:
                    break
            if not coef:
                continue
            key = tuple(e2[v] for v in vars_)
            if any(not (bounds[v][0] <= e2[v] <= bounds[v][1]) for v in vars_):
                continue
            val = c * coef
            if key in table:
                val = table[key] + val
                if val:
                    table[key] = val
                else:
                    del table[key]
            else:
                table[key] = val


def expand_window(a: DistElem, bounds: dict) -> LaurentWindow:
    """Exact raw Laurent coefficients of ``a`` inside ``bounds``."""
    table: dict = {}
    for t, c in a.terms.items():
        _expand_term(t, c, bounds, table)
    return LaurentWindow(bounds, table)


def window_equal(A: LaurentWindow, B: LaurentWindow) -> bool:
    if A.bounds != B.bounds:
        raise ValueError("windows over different boxes")
    keys = set(A.table) | set(B.table)
    return all(A.table.get(k, 0) == B.table.get(k, 0) for k in keys)


def window_mul_linear(A: LaurentWindow, x: str, y: str, bounds: dict) -> LaurentWindow:
    """Raw product ``(x - y) * A`` restricted to ``bounds``.

    ``A`` must cover ``bounds`` widened by one step in x and y.
    """
    vars_ = tuple(sorted(bounds))
    if tuple(sorted(A.bounds)) != vars_:
        raise ValueError("windows over different variables")
    for v in (x, y):
        if A.bounds[v][0] > bounds[v][0] - 1 or A.bounds[v][1] < bounds[v][1]:
            raise ValueError(f"source window too small in {v}")
    ix, iy = vars_.index(x), vars_.index(y)
    table = {}
    ranges = [range(bounds[v][0], bounds[v][1] + 1) for v in vars_]
    for e in itertools.product(*ranges):
        ex = list(e)
        ex[ix] -= 1
        ey = list(e)
        ey[iy] -= 1
        val = A[tuple(ex)] - A[tuple(ey)]
        if val:
            table[e] = val
    return LaurentWindow(bounds, table)


def check_dist_oracle(n_max: int = 8, radius: int = 10):
    """Compare the rewrite rules with raw window arithmetic.

    Cells: ``("delta_z", n)``, ``("delta_z'", n, m)``, ``("fold", n)`` and
    ``("swap", n)``.  Products by linear factors are formed on raw
    coefficients, never through :func:`mul_linear`.
    """
    from .report import Report

    rep = Report("dist.oracle", "-")
    inner = box(radius, ("u", Z))
    outer = box(radius + 1, ("u", Z))
    for n in range(n_max + 1):
        raw = window_mul_linear(expand_window(d1(n, "u"), outer), "u", Z, inner)
        rule = expand_window(mul_linear(d1(n, "u"), "u", Z), inner)
        rep.add(("delta_z", n), window_equal(raw, rule))
    inner = box(radius)
    outer = box(radius + 1)
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            raw = window_mul_linear(expand_window(f(n, m), outer), "u", "v", inner)
            rule = expand_window(mul_linear(f(n, m), "u", "v"), inner)
            rep.add(("delta_z'", n, m), window_equal(raw, rule))
    for n in range(n_max + 1):
        block = DistElem()
        for k in range(n + 1):
            block = block + f(k, n - k)
        folded = leibniz_fold(block)
        target = dist_mul(dswap("u", "v"), d1(n, "v"))
        ok = folded == target and window_equal(expand_window(block, inner), expand_window(folded, inner))
        rep.add(("fold", n), ok)
        left = expand_window(dist_mul(dswap("u", "v"), d1(n, "u")), inner)
        right = expand_window(target, inner)
        rep.add(("swap", n), window_equal(left, right) and bool(left.table))
    return rep
