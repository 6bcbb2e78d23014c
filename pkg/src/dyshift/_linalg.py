"""Exact sparse row reduction over the rationals.

Vectors are dicts ``key -> Fraction`` with no zero entries.  Keys only
need to be mutually comparable.
"""
from __future__ import annotations

from fractions import Fraction


def axpy(y: dict, a, x: dict):
    """In place ``y += a * x`` dropping zeros."""
    if not a:
        return y
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)
    return y


class Echelon:
    """Incremental echelon basis that remembers how rows were built.

    Every stored row is a combination of the inputs handed to :meth:`add`,
    recorded as ``label -> coefficient``.
    """

    def __init__(self):
        self.rows: dict = {}
        self.labels: list = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return ``(residual, combo)`` with ``vec - sum combo[l] * input_l == residual``."""
        res = {k: Fraction(v) for k, v in vec.items() if v}
        combo: dict = {}
        rows = self.rows
        while True:
            hits = [k for k in res if k in rows]
            if not hits:
                return res, combo
            k = min(hits)
            row, rcombo = rows[k]
            a = res[k]
            axpy(res, -a, row)
            axpy(combo, a, rcombo)

    def add(self, vec, label=None):
        """Insert a vector; returns the dependency combo if it was dependent, else None."""
        if label is None:
            label = len(self.labels)
        self.labels.append(label)
        res, combo = self.reduce(vec)
        if not res:
            # vec - sum combo * inputs = 0
            rel = {label: Fraction(1)}
            axpy(rel, -1, combo)
            return rel
        piv = min(res)
        a = res[piv]
        row = {k: v / a for k, v in res.items()}
        rcombo = {label: 1 / a}
        axpy(rcombo, -1 / a, combo)
        self.rows[piv] = (row, rcombo)
        return None


def rank_and_kernel(columns):
    """Rank of a list of sparse column vectors and a kernel basis.

    Returns
    -------
    rank : int
    kernel : list of dict
        Each dict maps column position to a coefficient; the combination of
        columns vanishes.
    """
    ech = Echelon()
    kernel = []
    for n, col in enumerate(columns):
        rel = ech.add(col, n)
        if rel is not None:
            kernel.append(rel)
    return len(ech), kernel
