"""Command line entry point.

Three commands::

    dyshift run SUITE [--type A2] [--affine] [--bound N] [--trunc M]
                      [--window R,S] [--seed S] [--json]
    dyshift image MORPHISM GEN [--type A2] [--c C] [--i I] [--n N]
                      [--sign +|-] [--trunc M] [--json]
    dyshift bracket GEN GEN [--type A2~] [--json]

Exit status is 0 when every cell passes, 1 on a failing cell and 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction

from .cartan import build_cartan
from .freealg import DOUBLE, YANGIAN, FreeAlgebra, render
from .report import Report

AFFINE_SUITES = {"mry.relations", "limit.kernel"}
FINITE_DEFAULT = {"limit.grcheck": "A1"}

SUITES = (
    "phi.relations",
    "phi.xxh",
    "phi.serre",
    "phi.form",
    "phi.gamma",
    "phi.grtw",
    "phi.jgen",
    "morph.ti",
    "mry.relations",
    "uce.jacobi",
    "limit.kernel",
    "limit.grcheck",
    "appendix.all",
    "dist.oracle",
)

MORPHISMS = ("tau", "tauz", "chi", "ti", "sigma", "gamma", "phi_c", "phi_z")


class UsageError(ValueError):
    pass


def _merge(name, label, parts):
    rep = Report(name, label)
    for p in parts:
        for e in p.entries:
            cell = e.cell if p.suite == name else (p.suite,) + e.cell
            rep.add(cell, e.ok, e.residual, **e.info)
    return rep


def default_trunc(name, window=(4, 4)):
    """M = 8, raised for limit.kernel to the smallest order that separates the window."""
    if name == "limit.kernel":
        return max(8, 2 * max(window) + 2)
    return 8


def run_suite(name, datum=None, bound=4, trunc=None, window=(4, 4), seed=0, c=1):
    """Run a named suite and return ``(Report, extra)``.

    ``extra`` holds additional JSON objects (rank certificates) emitted
    ahead of the report lines.
    """
    from . import completion, dist, limitphi, liealg, morphisms, phi

    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}")
    if datum is None:
        label = "A2~" if name in AFFINE_SUITES else FINITE_DEFAULT.get(name, "A2")
        datum = build_cartan(label)
    N, M = bound, trunc if trunc is not None else default_trunc(name, window)
    R, S = window
    extra = []
    lab = datum.label

    if name == "phi.relations":
        parts = [phi.check_phi_relations(datum, fam, N) for fam in ("hh", "h0x", "xh", "xx")]
        return _merge(name, lab, parts), extra
    if name == "phi.xxh":
        return phi.check_phi_xxh(datum, N), extra
    if name == "phi.serre":
        return phi.check_phi_serre(datum, N), extra
    if name == "phi.form":
        parts = [phi.check_vertex_consistency(N, datum=datum)]
        parts += [phi.check_phi_form(i, N, datum=datum) for i in datum.index]
        return _merge(name, lab, parts), extra
    if name == "phi.gamma":
        return phi.check_phi_gamma_identity(datum), extra
    if name == "phi.grtw":
        return phi.check_gr_tw(datum, [(1, 2), (2, 3), (-1, 1)], M, mode_bound=N), extra
    if name == "phi.jgen":
        return phi.check_J_generators(datum, M, mode_bound=N), extra
    if name == "morph.ti":
        return morphisms.verify_ti_identities(datum, N), extra
    if name == "mry.relations":
        return liealg.verify_t_relations_in_uce(datum, N), extra
    if name == "uce.jacobi":
        model = liealg.build_simple(datum.kind, datum.rank)
        return liealg.check_uce_jacobi(model, trials=100, seed=seed), extra
    if name == "limit.kernel":
        rep = Report(name, lab)
        kern = limitphi.kernel_window(R, S, M)
        inj = limitphi.injectivity_window(datum, R, M)
        extra += [kern.to_json_obj(), inj.to_json_obj()]
        rep.add(("kernel", R, S, M), kern.passed, None, nullity=kern.nullity, rank=kern.rank)
        rep.add(("injectivity", R, M), inj.passed, None, nullity=inj.nullity, rank=inj.rank)
        parts = [limitphi.check_phi_gamma_formulas(R, S, M),
                 limitphi.check_phi_gamma_hom(liealg.model_for(datum), M, trials=50, seed=seed)]
        return rep.extend(_merge(name, lab, parts)), extra
    if name == "limit.grcheck":
        return limitphi.gr_check(datum, c, min(N, M - 1), M), extra
    if name == "appendix.all":
        return completion.run_appendix(n_max=N, trials=100, seed=seed), extra
    # dist.oracle
    return dist.check_dist_oracle(n_max=N, radius=N + 2), extra


# ---------------------------------------------------------------------------
# generator specs

_GEN = re.compile(
    r"^\s*([xXhH])\s*([+-])?\s*\(\s*(\d+)\s*,\s*(?:([+-])\s*,\s*)?(-?\d+)\s*\)\s*$"
)


def _normalize(text: str) -> str:
    return text.replace("−", "-").replace("⁺", "+").replace("⁻", "-")


def parse_gen(text: str, datum):
    """``x(i,+,r)``/``X(i,-,r)``/``h(i,r)``; lowercase is the Yangian, uppercase the double.

    ``X+(i,r)`` is accepted as well.
    """
    m = _GEN.match(_normalize(text))
    if not m:
        raise UsageError(f"malformed generator {text!r}")
    letter, s1, i, s2, r = m.groups()
    if s1 and s2:
        raise UsageError(f"sign given twice in {text!r}")
    sign = s1 or s2
    i, r = int(i), int(r)
    side = YANGIAN if letter.islower() else DOUBLE
    alg = FreeAlgebra(datum, side)
    try:
        if letter in "hH":
            if sign:
                raise UsageError(f"Cartan generators carry no sign: {text!r}")
            return alg.h(i, r)
        if not sign:
            raise UsageError(f"missing sign in {text!r}")
        return alg.x(i, r, 1 if sign == "+" else -1)
    except UsageError:
        raise
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from exc


def image(morphism, gen, *, c=1, i=1, n=1, sign=1, trunc=None):
    """Apply a morphism to a generator; returns a FreeElem or ``{z power: FreeElem}``."""
    from . import morphisms, phi

    side = gen.alg.side
    need = {"tau": YANGIAN, "tauz": YANGIAN, "sigma": YANGIAN, "gamma": YANGIAN,
            "ti": DOUBLE, "phi_c": DOUBLE, "phi_z": DOUBLE}
    if morphism not in MORPHISMS:
        raise UsageError(f"unknown morphism {morphism!r}")
    if morphism in need and need[morphism] != side:
        want = "lowercase (Yangian)" if need[morphism] == YANGIAN else "uppercase (double)"
        raise UsageError(f"{morphism} takes a {want} generator")
    try:
        if morphism == "tau":
            return morphisms.tau_c(gen, c)
        if morphism == "tauz":
            return morphisms.tau_z(gen)
        if morphism == "chi":
            return morphisms.chi(c, gen)
        if morphism == "ti":
            return morphisms.translate_ti(i, n, gen)
        if morphism == "sigma":
            return morphisms.sigma(i, sign, gen)
        if morphism == "gamma":
            return morphisms.gamma_gen(gen)
        if morphism == "phi_c":
            return phi.phi_c(gen, c, trunc)
        img = phi.phi_z_gen(gen, depth=trunc or 10)
        return img.data
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _zpow(k):
    return "1" if k == 0 else ("z" if k == 1 else f"z^{k}")


def format_image(result) -> str:
    if isinstance(result, dict):
        if not result:
            return "0"
        return "\n".join(f"{_zpow(k)}: {render(v)}" for k, v in sorted(result.items(), reverse=True))
    return render(result)


def image_json(result):
    if isinstance(result, dict):
        return {str(k): v.to_json_obj() for k, v in sorted(result.items())}
    return result.to_json_obj()


# ---------------------------------------------------------------------------
# argument handling


def _fraction(text):
    try:
        return Fraction(_normalize(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _window(text):
    try:
        r, s = (int(x) for x in _normalize(text).split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("window must be R,S") from exc
    if r < 0 or s < 0:
        raise argparse.ArgumentTypeError("window radii must be >= 0")
    return r, s


def _sign(text):
    text = _normalize(text)
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError("sign must be + or -")


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _datum(args, default=None):
    if args.type is None and not args.affine:
        return default
    label = args.type or "A2"
    try:
        return build_cartan(label, affine=args.affine)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def build_parser():
    p = argparse.ArgumentParser(prog="dyshift", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="Cartan type label such as A2, B2, A2~")
    common.add_argument("--affine", action="store_true", help="use the untwisted affinization")
    common.add_argument("--json", action="store_true", help="emit JSON lines")

    run = sub.add_parser("run", parents=[common], help="run a verification suite")
    run.add_argument("suite", choices=SUITES, metavar="SUITE", help=", ".join(SUITES))
    run.add_argument("--bound", type=_nonneg, default=4, metavar="N")
    run.add_argument("--trunc", type=_nonneg, default=None, metavar="M",
                     help="truncation order (default 8; limit.kernel: max(8, 2max(R,S)+2))")
    run.add_argument("--window", type=_window, default=(4, 4), metavar="R,S")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--c", type=_fraction, default=Fraction(1), help="evaluation point")

    img = sub.add_parser("image", parents=[common], help="print the image of a generator")
    img.add_argument("morphism", choices=MORPHISMS)
    img.add_argument("gen", help="x(i,+,r), X(i,-,r), h(i,r) or H(i,r)")
    img.add_argument("--c", type=_fraction, default=Fraction(1))
    img.add_argument("--i", type=int, default=1)
    img.add_argument("--n", type=int, default=1)
    img.add_argument("--sign", type=_sign, default=1)
    img.add_argument("--trunc", type=_nonneg, default=None, metavar="M")

    br = sub.add_parser("bracket", parents=[common], help="bracket of two MRY images")
    br.add_argument("left", help="X(i,+,r)")
    br.add_argument("right", help="X(j,-,s)")
    return p


def _cmd_run(args, out):
    datum = _datum(args)
    t0 = time.perf_counter()
    rep, extra = run_suite(args.suite, datum, args.bound, args.trunc, args.window, args.seed, args.c)
    dt = time.perf_counter() - t0
    if args.json:
        for obj in extra:
            print(json.dumps(obj, separators=(",", ":")), file=out)
        for line in rep.lines():
            print(line, file=out)
        print(f"{rep.summary()} {dt:.2f}s", file=sys.stderr)
    else:
        for e in rep.failures:
            print(f"fail {e.cell} residual={e.residual}", file=out)
        print(f"{rep.summary()} {dt:.2f}s", file=out)
    return 0 if rep.passed else 1


def _cmd_image(args, out):
    datum = _datum(args, build_cartan("A2"))
    gen = parse_gen(args.gen, datum)
    res = image(args.morphism, gen, c=args.c, i=args.i, n=args.n, sign=args.sign, trunc=args.trunc)
    if args.json:
        rec = {"morphism": args.morphism, "gen": _normalize(args.gen), "image": image_json(res)}
        print(json.dumps(rec, separators=(",", ":")), file=out)
    else:
        print(format_image(res), file=out)
    return 0


def _mry_gen(text):
    m = _GEN.match(_normalize(text))
    if not m or m.group(1) != "X":
        raise UsageError(f"expected X(i,+-,r), got {text!r}")
    _, s1, i, s2, r = m.groups()
    sign = s1 or s2
    if not sign:
        raise UsageError(f"missing sign in {text!r}")
    return (1 if sign == "+" else -1, int(i), int(r))


def _cmd_bracket(args, out):
    from .liealg import model_for, mry_psi, uce_bracket

    datum = _datum(args, build_cartan("A2~"))
    try:
        model = model_for(datum)
        a = mry_psi(_mry_gen(args.left), datum, model)
        b = mry_psi(_mry_gen(args.right), datum, model)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = uce_bracket(a, b, model)
    if args.json:
        print(json.dumps(res.to_json_obj(model), separators=(",", ":")), file=out)
    else:
        print(res, file=out)
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"run": _cmd_run, "image": _cmd_image, "bracket": _cmd_bracket}[args.command]
    try:
        return handler(args, out)
    except UsageError as exc:
        print(f"dyshift: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
