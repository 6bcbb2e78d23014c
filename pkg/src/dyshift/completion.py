"""Graded completions on concrete samples.

A sample is an N-graded algebra with finite-dimensional components, given
by a basis of each degree and a multiplication of basis elements.  An
element truncated at level n lives in ``A / A_+^n``, which for the samples
here is ``A_0 + ... + A_{n-1}``.  Two samples are built in:

* :func:`free_sample` -- the free algebra over ``Q[hbar]`` on degree-1
  generators ``b1, b2`` (hbar central, also of degree 1);
* :func:`current_sample` -- ``gl_2 (x) Q[t, hbar]`` as an associative
  algebra of 2x2 matrices, ``deg t = deg hbar = 1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._linalg import Echelon
from .report import Report

__all__ = [
    "GradedSample",
    "free_sample",
    "current_sample",
    "SAMPLES",
    "truncate",
    "project",
    "mul_trunc",
    "aplus_power_check",
    "inverse_limit_consistency",
    "torsion_check",
    "run_appendix",
]


@dataclass(frozen=True)
class GradedSample:
    name: str
    basis: object  # degree -> list of basis labels
    mul_basis: object  # (label, label) -> {label: coeff}
    degree: object  # label -> int
    hbar: object  # label of hbar
    unit: object

    def mul(self, x: dict, y: dict, level=None) -> dict:
        out: dict = {}
        for a, p in x.items():
            for b, q in y.items():
                if level is not None and self.degree(a) + self.degree(b) >= level:
                    continue
                for c, r in self.mul_basis(a, b).items():
                    v = out.get(c, 0) + p * q * r
                    if v:
                        out[c] = v
                    else:
                        out.pop(c, None)
        return out

    def positive_basis(self, top):
        return [b for k in range(1, top + 1) for b in self.basis(k)]


def _free_basis(k):
    # words in b1, b2 of length j times hbar^(k-j)
    return [(w, k - j) for j in range(k + 1) for w in itertools.product((1, 2), repeat=j)]


def free_sample() -> GradedSample:
    return GradedSample(
        name="free",
        basis=_free_basis,
        mul_basis=lambda a, b: {(a[0] + b[0], a[1] + b[1]): Fraction(1)},
        degree=lambda a: len(a[0]) + a[1],
        hbar=((), 1),
        unit=((), 0),
    )


def _current_basis(k):
    # E_ab t^j hbar^(k-j)
    return [(a, b, j, k - j) for j in range(k + 1) for a in (1, 2) for b in (1, 2)]


def _current_mul(x, y):
    a, b, j, h = x
    c, d, k, g = y
    if b != c:
        return {}
    return {(a, d, j + k, h + g): Fraction(1)}


def current_sample() -> GradedSample:
    return GradedSample(
        name="current",
        basis=_current_basis,
        mul_basis=_current_mul,
        degree=lambda x: x[2] + x[3],
        hbar=None,
        unit=None,
    )


def _unit(sample: GradedSample) -> dict:
    if sample.unit is not None:
        return {sample.unit: Fraction(1)}
    return {(1, 1, 0, 0): Fraction(1), (2, 2, 0, 0): Fraction(1)}


def _hbar(sample: GradedSample) -> dict:
    if sample.hbar is not None:
        return {sample.hbar: Fraction(1)}
    return {(1, 1, 0, 1): Fraction(1), (2, 2, 0, 1): Fraction(1)}


SAMPLES = {"free": free_sample, "current": current_sample}


def truncate(sample: GradedSample, x: dict, level: int) -> dict:
    """Image in ``A / A_+^level``."""
    return {b: c for b, c in x.items() if sample.degree(b) < level}


def project(sample: GradedSample, x: dict, level: int) -> dict:
    """The transition map ``A / A_+^(level+1) -> A / A_+^level``."""
    if any(sample.degree(b) > level for b in x):
        raise ValueError("element is not truncated at level + 1")
    return truncate(sample, x, level)


def mul_trunc(sample: GradedSample, x: dict, y: dict, level: int) -> dict:
    return sample.mul(x, y, level)


def _random_elem(rng, sample: GradedSample, top: int, density=0.5) -> dict:
    out = {}
    for k in range(top + 1):
        for b in sample.basis(k):
            if rng.random() < density:
                c = int(rng.integers(-4, 5))
                if c:
                    out[b] = Fraction(c)
    return out


def aplus_power_check(sample: GradedSample, n_max: int) -> Report:
    """``A_+^n`` contains every component of degree >= n.

    For ``n <= n_max`` and each degree ``k`` with ``n <= k <= n_max + 1``, the
    span ``P(n, k)`` of n-fold products of positive-degree elements of total
    degree k is built from ``P(n, k) = sum_d P(n-1, k-d) A_d`` by exact
    elimination and compared with ``A_k``.
    """
    rep = Report("appendix.aplus", sample.name)
    rep.add((0, "all"), True, None, note="A_+^0 = A")
    top = n_max + 1
    spans = {(1, k): [{b: Fraction(1)} for b in sample.basis(k)] for k in range(1, top + 1)}
    for n in range(1, n_max + 1):
        for k in range(n, top + 1):
            if n > 1:
                ech = Echelon()
                for d in range(1, k - n + 2):
                    for v in spans.get((n - 1, k - d), []):
                        for b in sample.basis(d):
                            prod = sample.mul(v, {b: Fraction(1)})
                            if prod:
                                ech.add(prod)
                spans[(n, k)] = [row for row, _ in ech.rows.values()]
            rows = spans[(n, k)]
            dim = len(sample.basis(k))
            ech = Echelon()
            for row in rows:
                ech.add(row)
            ok = len(ech) == dim and all(not ech.reduce({b: Fraction(1)})[0] for b in sample.basis(k))
            rep.add((n, k), ok, None, rank=len(ech), dim=dim)
    return rep


def inverse_limit_consistency(sample: GradedSample, n_max: int, trials=20, seed=0) -> Report:
    """Cone consistency of the truncated products.

    Cells ``("const", n)``: the unit is fixed by every projection;
    ``("product", n, trial)``: multiplying at level n+1 then projecting
    equals multiplying the projections at level n; ``("hbar", n, trial)``:
    ``hbar^n x`` vanishes at level n; ``("assoc", n, trial)``: truncated
    products are associative and degree-additive.
    """
    rep = Report("appendix.limit", sample.name)
    rng = np.random.default_rng(seed)
    one = _unit(sample)
    hb = _hbar(sample)
    for n in range(1, n_max + 1):
        rep.add(("const", n), project(sample, truncate(sample, one, n + 1), n) == one)
        for t in range(trials):
            x = _random_elem(rng, sample, n)
            y = _random_elem(rng, sample, n)
            z = _random_elem(rng, sample, n)
            hi = mul_trunc(sample, x, y, n + 1)
            lo = mul_trunc(sample, truncate(sample, x, n), truncate(sample, y, n), n)
            rep.add(("product", n, t), project(sample, hi, n) == lo)
            p = dict(x)
            for _ in range(n):
                p = sample.mul(hb, p)
            rep.add(("hbar", n, t), not truncate(sample, p, n))
            a1 = mul_trunc(sample, mul_trunc(sample, x, y, n + 1), z, n + 1)
            a2 = mul_trunc(sample, x, mul_trunc(sample, y, z, n + 1), n + 1)
            additive = all(
                sample.degree(c) == sample.degree(a) + sample.degree(b)
                for a in x for b in y for c in sample.mul_basis(a, b)
            )
            rep.add(("assoc", n, t), a1 == a2 and additive)
    return rep


def torsion_check(sample: GradedSample, trials=100, seed=0, top=4) -> Report:
    """``hbar x != 0`` at every level that keeps the lowest component of ``hbar x``.

    The zero element is included as a vacuous cell.
    """
    rep = Report("appendix.torsion", sample.name)
    rng = np.random.default_rng(seed)
    hb = _hbar(sample)
    rep.add(("zero",), not sample.mul(hb, {}))
    one = _unit(sample)
    hx = sample.mul(hb, one)
    rep.add(("unit",), truncate(sample, hx, 2) == hb)
    for t in range(trials):
        x = {}
        while not x:
            x = _random_elem(rng, sample, top, density=0.3)
        low = min(sample.degree(b) for b in x)
        hx = sample.mul(hb, x)
        ok = all(truncate(sample, hx, level) for level in range(low + 2, top + 3))
        xlow = {b: c for b, c in x.items() if sample.degree(b) == low}
        ok = ok and {b: c for b, c in hx.items() if sample.degree(b) == low + 1} == sample.mul(hb, xlow)
        rep.add(("trial", t), ok)
    return rep


def run_appendix(n_max=6, trials=100, seed=0) -> Report:
    """All completion suites on both built-in samples."""
    rep = Report("appendix.all", "-")
    for name, make in SAMPLES.items():
        s = make()
        for sub in (
            aplus_power_check(s, n_max),
            inverse_limit_consistency(s, n_max, trials=max(1, trials // 10), seed=seed),
            torsion_check(s, trials, seed),
        ):
            for e in sub.entries:
                rep.add((name, sub.suite) + e.cell, e.ok, e.residual, **e.info)
    return rep
