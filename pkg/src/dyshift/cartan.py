"""Cartan data for finite and untwisted affine Kac-Moody algebras.

A datum carries the generalized Cartan matrix, the symmetrizers ``d_i``
and the pairings ``d_ij = d_i a_ij / 2``.  Affine data are indexed by
``0..l`` with node 0 attached as ``-theta``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CartanDatum",
    "WeightVector",
    "build_cartan",
    "parse_label",
    "sym_pair",
]


class WeightVector(tuple):
    """Integer vector over the index set, i.e. an element of the root lattice.

    Stored as a sorted tuple of ``(i, n)`` pairs with ``n != 0``.
    """

    def __new__(cls, data=()):
        if isinstance(data, dict):
            items = data.items()
        else:
            items = data
        acc: dict[int, int] = {}
        for i, n in items:
            if int(n) != n:
                raise ValueError("weight coordinates must be integers")
            acc[i] = acc.get(i, 0) + int(n)
        return super().__new__(cls, sorted((i, n) for i, n in acc.items() if n))

    @classmethod
    def simple(cls, i, n=1):
        return cls(((i, n),))

    def as_dict(self):
        return dict(self)

    def __add__(self, other):
        return WeightVector(list(self) + list(other))

    def __neg__(self):
        return WeightVector((i, -n) for i, n in self)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return WeightVector((i, k * n) for i, n in self)

    __rmul__ = __mul__

    def __getitem__(self, i):
        if isinstance(i, slice):
            return tuple.__getitem__(self, i)
        return dict(self).get(i, 0)

    def __repr__(self):
        if not self:
            return "0"
        parts = []
        for i, n in self:
            if n == 1:
                parts.append(f"a{i}")
            elif n == -1:
                parts.append(f"-a{i}")
            else:
                parts.append(f"{n}a{i}")
        return " + ".join(parts).replace("+ -", "- ")


# highest root coefficients (Bourbaki numbering) for the finite types
def _marks(kind, rank):
    if kind == "A":
        return [1] * rank
    if kind == "B":
        return [1] + [2] * (rank - 1)
    if kind == "C":
        return [2] * (rank - 1) + [1]
    if kind == "D":
        return [1] + [2] * (rank - 3) + [1, 1]
    table = {
        ("E", 6): [1, 2, 2, 3, 2, 1],
        ("E", 7): [2, 2, 3, 4, 3, 2, 1],
        ("E", 8): [2, 3, 4, 6, 5, 4, 3, 2],
        ("F", 4): [2, 3, 4, 2],
        ("G", 2): [3, 2],
    }
    return table[(kind, rank)]


_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _finite_gcm(kind, n):
    """Kac convention a_ij = 2(a_i, a_j)/(a_i, a_i), nodes numbered 1..n."""
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def link(i, j, aij=-1, aji=-1):
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if kind in "ABCD":
        for i in range(1, n):
            link(i, i + 1)
        if kind == "B":
            link(n - 1, n, -1, -2)
        elif kind == "C":
            link(n - 1, n, -2, -1)
        elif kind == "D":
            a[n - 2][n - 1] = a[n - 1][n - 2] = 0
            link(n - 2, n)
    elif kind == "E":
        link(1, 3)
        link(3, 4)
        link(2, 4)
        for i in range(4, n):
            link(i, i + 1)
    elif kind == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif kind == "G":
        link(1, 2, -3, -1)
    return a


def _symmetrizers(a):
    """Positive coprime integers d with d_i a_ij = d_j a_ji (connected diagram)."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    if any(x is None for x in d):
        raise ValueError("Dynkin diagram is not connected")
    den = 1
    for x in d:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in d]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class CartanDatum:
    label: str
    kind: str
    rank: int
    affine: bool
    index: tuple
    a: tuple
    d: tuple
    marks: tuple = field(default=())

    def __post_init__(self):
        n = len(self.index)
        for p in range(n):
            if self.a[p][p] != 2:
                raise ValueError("diagonal entries must be 2")
            for q in range(n):
                if p != q:
                    if self.a[p][q] > 0:
                        raise ValueError("off-diagonal entries must be <= 0")
                    if (self.a[p][q] == 0) != (self.a[q][p] == 0):
                        raise ValueError("a_ij = 0 must imply a_ji = 0")
                    if self.d[p] * self.a[p][q] != self.d[q] * self.a[q][p]:
                        raise ValueError("matrix is not symmetrized by d")

    def pos(self, i):
        try:
            return self.index.index(i)
        except ValueError:
            raise IndexError(f"index {i} not in {self.index}") from None

    def aij(self, i, j):
        return self.a[self.pos(i)][self.pos(j)]

    def di(self, i):
        return self.d[self.pos(i)]

    def dij(self, i, j):
        return Fraction(self.di(i) * self.aij(i, j), 2)

    @property
    def finite_index(self):
        return tuple(i for i in self.index if i != 0)

    # Cartan subalgebra: coroots plus the scaling element "d" when affine
    @property
    def h_basis(self):
        keys = [("h", i) for i in self.index]
        if self.affine:
            keys.append(("d", 0))
        return tuple(keys)

    def alpha(self, j, hkey):
        """Value alpha_j(h) on an h-basis key."""
        tag, i = hkey
        if tag == "h":
            return self.aij(i, j)
        if tag == "d":
            return 1 if j == 0 else 0
        raise KeyError(hkey)

    def pairing(self, weight_i, weight_j):
        """Symmetric form (x, y) on the root lattice with (a_i, a_j) = 2 d_ij."""
        return sum(
            m * n * 2 * self.dij(i, j)
            for i, m in WeightVector(weight_i)
            for j, n in WeightVector(weight_j)
        )

    def marks_vector(self):
        return self.marks

    def __str__(self):
        return self.label


def sym_pair(datum: CartanDatum, i, j) -> Fraction:
    """Return d_ij = d_i a_ij / 2."""
    return datum.dij(i, j)


_LABEL = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*(~|\^?\(1\))?\s*$")


def parse_label(label: str):
    m = _LABEL.match(label)
    if not m:
        raise ValueError(f"unknown type label {label!r}")
    return m.group(1).upper(), int(m.group(2)), bool(m.group(3))


@lru_cache(maxsize=None)
def build_cartan(kind, rank=None, affine=False) -> CartanDatum:
    """Build a Cartan datum.

    Parameters
    ----------
    kind : str
        Either a full label such as ``"A2"``, ``"B2"``, ``"A2~"`` or a
        single type letter, in which case ``rank`` is required.
    rank : int, optional
    affine : bool
        Untwisted affinization, adds node 0.

    Returns
    -------
    CartanDatum
    """
    if rank is None:
        kind, rank, tilde = parse_label(kind)
        affine = affine or tilde
    kind = kind.upper()
    if kind not in _RANKS:
        raise ValueError(f"unknown type {kind!r}")
    if not _RANKS[kind](rank):
        raise ValueError(f"rank {rank} out of range for type {kind}")
    fin = _finite_gcm(kind, rank)
    if not affine:
        d = _symmetrizers(fin)
        return CartanDatum(
            label=f"{kind}{rank}",
            kind=kind,
            rank=rank,
            affine=False,
            index=tuple(range(1, rank + 1)),
            a=tuple(tuple(r) for r in fin),
            d=d,
        )
    # node 0 = delta - theta; the finite form is (a_i, a_j) = d_i a_ij
    dfin = _symmetrizers(fin)
    th = _marks(kind, rank)
    form = [[dfin[i] * fin[i][j] for j in range(rank)] for i in range(rank)]
    th_al = [sum(th[p] * form[p][j] for p in range(rank)) for j in range(rank)]
    th_th = sum(th[j] * th_al[j] for j in range(rank))
    n = rank + 1
    a = [[0] * n for _ in range(n)]
    a[0][0] = 2
    for i in range(rank):
        for j in range(rank):
            a[i + 1][j + 1] = fin[i][j]
        a[0][i + 1] = Fraction(-2 * th_al[i], th_th)
        a[i + 1][0] = Fraction(-2 * th_al[i], 2 * dfin[i])
    a = [[int(x) for x in row] for row in a]
    return CartanDatum(
        label=f"{kind}{rank}~",
        kind=kind,
        rank=rank,
        affine=True,
        index=tuple(range(0, rank + 1)),
        a=tuple(tuple(r) for r in a),
        d=_symmetrizers(a),
        marks=tuple([1] + th),
    )
