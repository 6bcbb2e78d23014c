"""Free algebras on the generators of the Yangian and of its double.

Elements are finite sums of words with coefficients in Q[hbar].  The
``yangian`` alphabet has modes r >= 0 and the ``double`` alphabet allows
any integer mode.  Nothing is reduced modulo the defining relations;
membership of specific elements in the span of relation instances is
decided by :func:`reduce_modulo_templates`.

Letters are tuples ``(tag, i, r)``:

* ``("X+", i, r)``, ``("X-", i, r)`` and ``("H", i, r)`` with ``r != 0``
  for ``H``;
* ``("h", i, 0)`` the simple coroot of node i;
* ``("d", 0, 0)`` the scaling element (affine data only).

``H(i, 0)`` is never stored, it is the Cartan element ``d_i`` times the
coroot of node i.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from ._linalg import Echelon
from .cartan import CartanDatum, WeightVector

__all__ = [
    "YANGIAN",
    "DOUBLE",
    "FAMILIES",
    "FreeAlgebra",
    "FreeElem",
    "InhomogeneousError",
    "RelationTemplate",
    "Reduction",
    "antibracket",
    "bracket",
    "grade",
    "weight",
    "degree",
    "substitute",
    "relation_template",
    "reduce_modulo_templates",
]

YANGIAN = "yangian"
DOUBLE = "double"
FAMILIES = ("hh", "h0x", "xxh", "xh", "xx", "serre")
_XTAGS = {"X+": 1, "X-": -1}
_SIGNTAG = {1: "X+", -1: "X-"}


class InhomogeneousError(ValueError):
    pass


def _q(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


def _letter_degree(letter):
    return letter[2]


class FreeAlgebra:
    """Free Q[hbar]-algebra on the generators attached to a Cartan datum."""

    def __init__(self, datum: CartanDatum | None, side: str = YANGIAN):
        if side not in (YANGIAN, DOUBLE):
            raise ValueError(f"unknown side {side!r}")
        self.datum = datum
        self.side = side

    def __eq__(self, other):
        return (
            isinstance(other, FreeAlgebra)
            and self.side == other.side
            and self.datum == other.datum
        )

    def __hash__(self):
        return hash((self.side, self.datum))

    def __repr__(self):
        name = "Y" if self.side == YANGIAN else "DY"
        return f"FreeAlgebra({name}, {self.datum})"

    # construction -----------------------------------------------------
    def elem(self, terms=None):
        return FreeElem(self, terms or {})

    def zero(self):
        return FreeElem(self, {})

    def one(self):
        return FreeElem(self, {((), 0): Fraction(1)})

    def scalar(self, c, hbar_power=0):
        return FreeElem(self, {((), hbar_power): _q(c)})

    def hbar(self, k=1):
        return self.scalar(1, k)

    def check_letter(self, letter):
        tag, i, r = letter
        if tag == "d":
            if self.datum is None or not self.datum.affine:
                raise ValueError("scaling element needs affine data")
            return
        if self.datum is None:
            raise ValueError("scalar-only algebra has no generators")
        self.datum.pos(i)
        if tag == "h":
            if r != 0:
                raise ValueError("coroot letters carry mode 0")
        elif tag in ("X+", "X-", "H"):
            if int(r) != r:
                raise ValueError("modes are integers")
            if self.side == YANGIAN and r < 0:
                raise ValueError("yangian modes must be >= 0")
            if tag == "H" and r == 0:
                raise ValueError("H(i, 0) is stored as a Cartan element")
        else:
            raise ValueError(f"unknown tag {tag!r}")

    def gen(self, letter):
        """Element for a letter, applying the H(i,0) alias."""
        tag, i, r = letter
        if tag == "H" and r == 0:
            return self.coroot(i) * self.datum.di(i)
        self.check_letter(letter)
        return FreeElem(self, {((letter,), 0): Fraction(1)})

    def x(self, i, r, sign=1):
        return self.gen((_SIGNTAG[sign], i, r))

    def xp(self, i, r):
        return self.x(i, r, 1)

    def xm(self, i, r):
        return self.x(i, r, -1)

    def h(self, i, r):
        return self.gen(("H", i, r))

    def coroot(self, i):
        return self.gen(("h", i, 0))

    def cartan(self, vec):
        """Cartan element from a map ``hkey -> coefficient``.

        Keys are ``("h", i)`` for coroots and ``("d", 0)`` for the scaling
        element; a bare integer ``i`` is read as ``("h", i)``.
        """
        terms = {}
        for key, c in dict(vec).items():
            if not isinstance(key, tuple):
                key = ("h", key)
            letter = (key[0], key[1], 0)
            self.check_letter(letter)
            c = _q(c)
            if c:
                terms[((letter,), 0)] = terms.get(((letter,), 0), 0) + c
        return FreeElem(self, terms)

    def hgen(self, key, r=0):
        """``H(i, r)`` for an index, or the Cartan basis element for an hkey."""
        if isinstance(key, tuple):
            return self.cartan({key: 1})
        return self.h(key, r)

    def letters_h(self):
        return [k for k in self.datum.h_basis]

    def from_json(self, data):
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data["terms"]:
            word = tuple((str(a), int(b), int(c)) for a, b, c in t["word"])
            for letter in word:
                self.check_letter(letter)
            for e, c in t["coeff"].items():
                c = Fraction(c)
                if c:
                    terms[(word, int(e))] = c
        return FreeElem(self, terms)


class FreeElem:
    """Element of a :class:`FreeAlgebra`.

    ``terms`` maps ``(word, hbar_exponent)`` to a nonzero Fraction.
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    # arithmetic ---------------------------------------------------------
    def _same(self, other):
        if not isinstance(other, FreeElem):
            raise TypeError(f"expected FreeElem, got {type(other).__name__}")
        if other.alg.side != self.alg.side:
            raise ValueError("side mismatch")
        if (
            self.alg.datum is not None
            and other.alg.datum is not None
            and self.alg.datum != other.alg.datum
        ):
            raise ValueError("datum mismatch")

    def _pick_alg(self, other):
        return self.alg if self.alg.datum is not None else other.alg

    def __add__(self, other):
        if not isinstance(other, FreeElem) and other == 0:
            return self
        self._same(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            w = t.get(k, 0) + v
            if w:
                t[k] = w
            else:
                t.pop(k, None)
        return FreeElem(self._pick_alg(other), t)

    __radd__ = __add__

    def __neg__(self):
        return FreeElem(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FreeElem) and other == 0:
            return self
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _q(c)
        if not c:
            return FreeElem(self.alg, {})
        return FreeElem(self.alg, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FreeElem):
            return self.scale(other)
        self._same(other)
        out: dict = {}
        for (w1, e1), c1 in self.terms.items():
            for (w2, e2), c2 in other.terms.items():
                k = (w1 + w2, e1 + e2)
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return FreeElem(self._pick_alg(other), out)

    def __rmul__(self, other):
        return self.scale(other)

    def mul_trunc(self, other, bound):
        """Product keeping only monomials of degree < bound."""
        self._same(other)
        out: dict = {}
        d2 = {k: _mono_degree(k) for k in other.terms}
        for k1, c1 in self.terms.items():
            g1 = _mono_degree(k1)
            for k2, c2 in other.terms.items():
                if g1 + d2[k2] >= bound:
                    continue
                k = (k1[0] + k2[0], k1[1] + k2[1])
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return FreeElem(self._pick_alg(other), out)

    def hbar_mul(self, k=1):
        return FreeElem(self.alg, {(w, e + k): c for (w, e), c in self.terms.items()})

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FreeElem):
            return self.alg.side == other.alg.side and self.terms == other.terms
        if other == 0:
            return not self.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({((), 0): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # structure ------------------------------------------------------------
    def letters(self):
        out = set()
        for w, _ in self.terms:
            out.update(w)
        return out

    def canonical_items(self):
        return sorted(self.terms.items())

    def to_json_obj(self):
        words: dict = {}
        for (w, e), c in sorted(self.terms.items()):
            words.setdefault(w, {})[str(e)] = str(c)
        return {
            "terms": [
                {"word": [list(letter) for letter in w], "coeff": coeff}
                for w, coeff in words.items()
            ]
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    def to_text(self, compact_sign=True):
        return render(self, compact_sign=compact_sign)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"FreeElem({render(self, compact_sign=False)})"


def _mono_degree(key):
    w, e = key
    return e + sum(letter[2] for letter in w)


def _mono_weight(word):
    acc: dict = {}
    for tag, i, _ in word:
        s = _XTAGS.get(tag)
        if s:
            acc[i] = acc.get(i, 0) + s
    return WeightVector(acc)


def bracket(a: FreeElem, b: FreeElem) -> FreeElem:
    """Commutator ab - ba."""
    return a * b - b * a


def antibracket(a: FreeElem, b: FreeElem) -> FreeElem:
    """Anticommutator ab + ba."""
    return a * b + b * a


def grade(e: FreeElem) -> dict:
    """Split into homogeneous components ``{degree: FreeElem}``."""
    parts: dict = {}
    for k, c in e.terms.items():
        parts.setdefault(_mono_degree(k), {})[k] = c
    return {g: FreeElem(e.alg, t) for g, t in sorted(parts.items())}


def degree(e: FreeElem):
    """Degree of a nonzero homogeneous element (None for zero)."""
    degs = {_mono_degree(k) for k in e.terms}
    if not degs:
        return None
    if len(degs) > 1:
        raise InhomogeneousError(f"degrees {sorted(degs)}")
    return degs.pop()


def weight(e: FreeElem) -> WeightVector:
    ws = {_mono_weight(w) for w, _ in e.terms}
    if not ws:
        return WeightVector()
    if len(ws) > 1:
        raise InhomogeneousError("element is not weight homogeneous")
    return ws.pop()


def substitute(e: FreeElem, assignment, target: FreeAlgebra | None = None) -> FreeElem:
    """Extend a letter assignment to an algebra map and apply it to e.

    ``assignment`` is a dict or a callable sending a letter to a FreeElem.
    hbar is left fixed.
    """
    cache: dict = {}

    def image(letter):
        if letter not in cache:
            try:
                if callable(assignment):
                    val = assignment(letter)
                else:
                    val = assignment[letter]
            except KeyError:
                raise KeyError(f"assignment misses letter {letter}") from None
            if val is None:
                raise KeyError(f"assignment misses letter {letter}")
            cache[letter] = val
        return cache[letter]

    if target is None:
        target = e.alg
    total = target.zero()
    for (w, ex), c in e.terms.items():
        term = target.scalar(c, ex)
        for letter in w:
            term = term * image(letter)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# text rendering


def _fmt_q(c: Fraction):
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c})"


def _letter_text(alg, letter, show_sign):
    tag, i, r = letter
    big = alg.side == DOUBLE
    if tag in _XTAGS:
        base = "X" if big else "x"
        mark = ("^+" if tag == "X+" else "^-") if show_sign else ""
        return f"{base}{mark}_{{{i},{r}}}"
    if tag == "H":
        return f"{'H' if big else 'h'}_{{{i},{r}}}"
    if tag == "h":
        return f"{'H' if big else 'h'}_{{{i},0}}"
    return "d"


def render(e: FreeElem, compact_sign=True) -> str:
    """Human readable form, terms in insertion order.

    Coroot letters are printed as ``H_{i,0}`` (or ``h_{i,0}``) with the
    coefficient divided by d_i, since ``H_{i,0} = d_i`` times the coroot.
    With ``compact_sign`` the ``^+``/``^-`` marks are dropped when all X
    letters carry the same sign.
    """
    if not e.terms:
        return "0"
    alg = e.alg
    signs = {letter[0] for w, _ in e.terms for letter in w if letter[0] in _XTAGS}
    show = not (compact_sign and len(signs) <= 1)
    out = []
    for (w, ex), c in e.terms.items():
        for letter in w:
            if letter[0] == "h":
                c = c / alg.datum.di(letter[1])
        word = "".join(_letter_text(alg, letter, show) for letter in w)
        hb = "" if ex == 0 else ("hbar" if ex == 1 else f"hbar^{ex}")
        if hb and word:
            hb += "*"
        body = hb + word
        if not body:
            piece = _fmt_q(abs(c))
        elif abs(c) == 1:
            piece = body
        else:
            piece = _fmt_q(abs(c)) + body
        sign = "-" if c < 0 else "+"
        out.append((sign, piece))
    text = "".join(s + p for s, p in out)
    return text[1:] if text.startswith("+") else text


# ---------------------------------------------------------------------------
# relation templates


@dataclass(frozen=True)
class RelationTemplate:
    family: str
    side: str
    indices: tuple
    sign: int
    elem: FreeElem = field(compare=False, hash=False, repr=False)

    @property
    def label(self):
        s = "" if self.family in ("hh", "xxh") else ("+" if self.sign > 0 else "-")
        return f"{self.family}{s}{self.indices}"

    def to_json_obj(self):
        def enc(x):
            if isinstance(x, tuple):
                return [enc(y) for y in x]
            return x

        return {"family": self.family, "side": self.side, "sign": self.sign,
                "indices": enc(self.indices)}


def _serre_nested(alg, i, j, modes, s, sign):
    total = alg.zero()
    inner0 = alg.x(j, s, sign)
    for perm in itertools.permutations(modes):
        inner = inner0
        for r in reversed(perm):
            inner = bracket(alg.x(i, r, sign), inner)
        total = total + inner
    return total


def relation_template(family, datum: CartanDatum, indices, side=YANGIAN, sign=1):
    """Realize one instance of a defining relation as a FreeElem.

    Index conventions
    -----------------
    ``hh``     ``(i, j, r, s)``: ``[H_ir, H_js]``; i or j may be an hkey
               tuple such as ``("h", 1)`` standing for a Cartan basis element.
    ``h0x``    ``(hkey, j, s)``: ``[h, X_js] -/+ alpha_j(h) X_js``.
    ``xxh``    ``(i, j, r, s)``: ``[X+_ir, X-_js] - delta_ij H_{i,r+s}``.
    ``xh``     ``(i, j, r, s)``: ``[H_{i,r+1}, X_js] - [H_ir, X_{j,s+1}]
               -/+ hbar d_ij {H_ir, X_js}``.
    ``xx``     same shape with ``X_i`` in place of ``H_i``.
    ``serre``  ``(i, j, modes, s)`` with ``len(modes) = 1 - a_ij``.
    """
    return _template(family, datum, _freeze(indices), side, sign)


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(y) for y in x)
    if isinstance(x, tuple):
        return tuple(_freeze(y) for y in x)
    return x


@lru_cache(maxsize=None)
def _template(family, datum, indices, side, sign):
    alg = FreeAlgebra(datum, side)
    if family not in FAMILIES:
        raise ValueError(f"unknown relation family {family!r}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if family in ("hh", "xxh"):
        sign = 1
    try:
        if family == "hh":
            i, j, r, s = indices
            e = bracket(alg.hgen(i, r), alg.hgen(j, s))
        elif family == "h0x":
            hk, j, s = indices
            if not isinstance(hk, tuple):
                hk = ("h", hk)
            h = alg.cartan({hk: 1})
            x = alg.x(j, s, sign)
            e = bracket(h, x) - x.scale(sign * datum.alpha(j, hk))
        elif family == "xxh":
            i, j, r, s = indices
            e = bracket(alg.xp(i, r), alg.xm(j, s))
            if i == j:
                e = e - alg.h(i, r + s)
        elif family in ("xh", "xx"):
            i, j, r, s = indices
            if family == "xh":
                y0, y1 = alg.h(i, r), alg.h(i, r + 1)
            else:
                y0, y1 = alg.x(i, r, sign), alg.x(i, r + 1, sign)
            x0, x1 = alg.x(j, s, sign), alg.x(j, s + 1, sign)
            e = bracket(y1, x0) - bracket(y0, x1)
            e = e - antibracket(y0, x0).hbar_mul(1).scale(sign * datum.dij(i, j))
        else:
            i, j, modes, s = indices
            if i == j:
                raise ValueError("Serre relation needs i != j")
            m = 1 - datum.aij(i, j)
            if len(modes) != m:
                raise ValueError(f"Serre relation for ({i},{j}) needs {m} modes")
            e = _serre_nested(alg, i, j, tuple(modes), s, sign)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"invalid indices {indices} for family {family}: {exc}") from None
    return RelationTemplate(family, side, indices, sign, e)


def _template_shape(family, datum, indices, sign):
    """Degree and weight of an instance, computed from its indices alone."""
    if family == "hh":
        i, j, r, s = indices
        deg = (0 if isinstance(i, tuple) else r) + (0 if isinstance(j, tuple) else s)
        return deg, WeightVector()
    if family == "h0x":
        _, j, s = indices
        return s, WeightVector.simple(j, sign)
    if family == "xxh":
        i, j, r, s = indices
        return r + s, WeightVector(((i, 1), (j, -1)))
    if family == "xh":
        i, j, r, s = indices
        return r + s + 1, WeightVector.simple(j, sign)
    if family == "xx":
        i, j, r, s = indices
        return r + s + 1, WeightVector(((i, sign), (j, sign)))
    i, j, modes, s = indices
    return sum(modes) + s, WeightVector(((i, sign * len(modes)), (j, sign)))


def _enumerate_indices(family, datum, modes):
    idx = datum.index
    modes = list(modes)
    if family == "hh":
        hk = list(datum.h_basis)
        for i, j in itertools.product(idx, idx):
            for r, s in itertools.product(modes, modes):
                yield (i, j, r, s), 1
        for i in idx:
            for r in modes:
                for k in hk:
                    yield (i, k, r, 0), 1
        for k1, k2 in itertools.product(hk, hk):
            yield (k1, k2, 0, 0), 1
    elif family == "h0x":
        for k in datum.h_basis:
            for j in idx:
                for s in modes:
                    for sg in (1, -1):
                        yield (k, j, s), sg
    elif family == "xxh":
        for i, j in itertools.product(idx, idx):
            for r, s in itertools.product(modes, modes):
                yield (i, j, r, s), 1
    elif family in ("xh", "xx"):
        for i, j in itertools.product(idx, idx):
            for r, s in itertools.product(modes, modes):
                for sg in (1, -1):
                    yield (i, j, r, s), sg
    elif family == "serre":
        for i, j in itertools.product(idx, idx):
            if i == j:
                continue
            m = 1 - datum.aij(i, j)
            for ms in itertools.combinations_with_replacement(modes, m):
                for s in modes:
                    for sg in (1, -1):
                        yield (i, j, ms, s), sg


@dataclass
class Reduction:
    residual: FreeElem
    certificate: list

    @property
    def certified(self):
        return self.residual.is_zero()


@lru_cache(maxsize=256)
def _span(datum, side, families, bound, deg, wt):
    """Echelon basis of all hbar^k * template instances of the given degree and weight."""
    modes = range(0, bound + 1) if side == YANGIAN else range(-bound, bound + 1)
    cands = []
    for fam in families:
        for ind, sg in _enumerate_indices(fam, datum, modes):
            d0, w0 = _template_shape(fam, datum, ind, sg)
            if w0 != wt or d0 > deg:
                continue
            t = _template(fam, datum, ind, side, sg)
            if t.elem.is_zero():
                continue
            cands.append((t, deg - d0))
    ech = Echelon()
    exact = {}
    for n, (t, k) in enumerate(cands):
        vec = t.elem.hbar_mul(k).terms
        ech.add(vec, n)
        exact.setdefault(frozenset(vec.items()), n)
    return cands, ech, exact


def reduce_modulo_templates(e: FreeElem, families=FAMILIES, bound: int = 4) -> Reduction:
    """Certify membership of e in the span of relation instances.

    Instances are enumerated with every mode index bounded by ``bound`` in
    absolute value and multiplied by the power of hbar that matches the
    degree of e.  Returns the residual left after exact elimination and
    the list of ``(template, scalar)`` pairs used.  A zero residual is a
    membership certificate.
    """
    alg = e.alg
    if e.is_zero():
        return Reduction(alg.zero(), [])
    deg = degree(e)
    wt = weight(e)
    if isinstance(families, str):
        families = (families,)
    cands, ech, exact = _span(alg.datum, alg.side, tuple(families), bound, deg, wt)
    key = frozenset(e.terms.items())
    if key in exact:
        t, k = cands[exact[key]]
        return Reduction(alg.zero(), [(t, alg.hbar(k))])
    residual, combo = ech.reduce(e.terms)
    cert = []
    for n, c in sorted(combo.items()):
        t, k = cands[n]
        cert.append((t, alg.scalar(c, k)))
    return Reduction(FreeElem(alg, residual), cert)


def binom(r: int, k: int) -> Fraction:
    """Generalized binomial r(r-1)...(r-k+1)/k! for any integer r and k >= 0."""
    if k < 0:
        return Fraction(0)
    num = 1
    for n in range(k):
        num *= r - n
    return Fraction(num, factorial(k))
