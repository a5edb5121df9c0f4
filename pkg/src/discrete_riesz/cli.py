"""Command-line entry point: ``driesz {op,norm,weight,whitney,verify,bench}``.

Exit codes: 0 success, 1 domain error or bad input, 2 I/O error.
Results go to ``--out`` or stdout; diagnostics go to stderr.
The thread count for case fan-out is read from ``DRIESZ_THREADS``.
"""

from __future__ import annotations

import argparse
import sys

from . import io as dio
from .bench import bench_csv, run_bench
from .core import DomainError, ProfileKind, make_profile
from .norms import layer_cake, lp_norm, weak_lp_norm, weighted_morrey_norm
from .operators import CapacityError, EvalWindow, fractional_maximal, riesz_fast, riesz_naive
from .trend import Verdict
from .verify import experiments as ex
from .verify.families import DEFAULT_SEED, TestFamily
from .weights import Weight, constant_growth_profile
from .whitney import decompose

VERIFY_TAGS = ("t3.7", "t3.7(i)", "t3.7(ii)", "t3.1", "t3.8", "c3.5", "c3.5(i)", "c3.5(ii)",
               "t1.1", "l3.12", "l3.16", "t3.10", "t3.11", "m2.13")
MEMBERSHIP_BETAS = (-0.4, -0.2, 0.0, 0.2, 0.4, 0.8, 1.2)


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message if self.prog == "driesz" else f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _window(text: str) -> EvalWindow:
    try:
        return EvalWindow.parse(text)
    except (DomainError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="driesz", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    op = sub.add_parser("op", help="evaluate M_alpha or I_alpha on a window")
    op.add_argument("--kind", choices=("maximal", "riesz"), required=True)
    op.add_argument("--alpha", type=float, required=True)
    op.add_argument("--fast", action="store_true", help="transform-based potential")
    op.add_argument("--window", type=_window, required=True, metavar="LO:HI")
    op.add_argument("--in", dest="inp", required=True, help="sequence JSON or CSV")
    op.add_argument("--out", help="output sequence JSON (default stdout)")

    nm = sub.add_parser("norm", help="sequence norms")
    nm.add_argument("--family", choices=("lp", "weak", "layercake", "morrey", "wmorrey"), required=True)
    nm.add_argument("--p", type=float, required=True)
    nm.add_argument("--q", type=float)
    nm.add_argument("--weight", help="weight JSON (omega)")
    nm.add_argument("--vweight", help="size weight JSON (v), wmorrey only")
    nm.add_argument("--in", dest="inp", required=True)
    nm.add_argument("--out")

    wt = sub.add_parser("weight", help="truncated A_p or A(p,q) constants at growing caps")
    wt.add_argument("--spec", required=True, help="weight JSON")
    wt.add_argument("--p", type=float, required=True)
    wt.add_argument("--q", type=float, help="gives A(p,q) instead of A_p")
    wt.add_argument("--caps", type=_int_list, required=True)
    wt.add_argument("--out", help="CSV (cap, constant, witnessStart, witnessEnd)")

    wh = sub.add_parser("whitney", help="Whitney decomposition of an integer set")
    wh.add_argument("--in", dest="inp", required=True, help="set JSON")
    wh.add_argument("--ray-depth", type=int, default=12)
    wh.add_argument("--out")

    vf = sub.add_parser("verify", help="empirical constant of an inequality")
    vf.add_argument("--tag", choices=VERIFY_TAGS, required=True)
    vf.add_argument("--alpha", type=float, required=True)
    vf.add_argument("--p", type=float)
    vf.add_argument("--q", type=float)
    vf.add_argument("--beta", type=float, help="power weight exponent")
    vf.add_argument("--betas", type=_float_list, help="m2.13 only: exponent grid")
    vf.add_argument("--caps", type=_int_list, default=[256, 512, 1024, 2048])
    vf.add_argument("--seed", type=int, default=DEFAULT_SEED,
                    help=f"family seed (default {DEFAULT_SEED})")
    vf.add_argument("--out", help="report JSON (default stdout)")
    vf.add_argument("--csv", help="per-case CSV")

    bn = sub.add_parser("bench", help="time direct vs transform potential")
    bn.add_argument("--sizes", type=_int_list, default=[1 << 10, 1 << 12, 1 << 15, 1 << 20])
    bn.add_argument("--alpha", type=float, default=0.5)
    bn.add_argument("--reps", type=int, default=3)
    bn.add_argument("--seed", type=int, default=DEFAULT_SEED)
    bn.add_argument("--out", help="CSV (default stdout)")
    return top


def _emit(text: str, path: str | None) -> None:
    if path:
        dio.write_text(path, text)
    else:
        sys.stdout.write(text)


def _op(a) -> None:
    x = dio.read_sequence(a.inp)
    if a.kind == "maximal":
        y = fractional_maximal(x, a.alpha, a.window)
    else:
        y = (riesz_fast if a.fast else riesz_naive)(x, a.alpha, a.window)
    # keep the window as the frame so positions are explicit
    vals = y.on(a.window.lo, a.window.hi).tolist()
    _emit(dio.dumps({"offset": a.window.lo, "values": vals}), a.out)


def _norm(a) -> None:
    x = dio.read_sequence(a.inp)
    omega = dio.read_weight(a.weight) if a.weight else None
    if a.family in ("lp", "weak", "layercake"):
        fn = {"lp": lp_norm, "weak": weak_lp_norm, "layercake": layer_cake}[a.family]
        out = {"value": fn(x, a.p, omega), "witness": None}
    else:
        q = a.q if a.q is not None else a.p
        v = None
        if a.family == "wmorrey":
            v = dio.read_weight(a.vweight) if a.vweight else None
        elif a.vweight or a.weight:
            raise UsageError("morrey takes no weights; use wmorrey")
        out = weighted_morrey_norm(x, a.p, q, omega, v).to_dict()
    _emit(dio.dumps(out), a.out)


def _weight(a) -> None:
    w = dio.read_weight(a.spec)
    g = constant_growth_profile(w, a.caps, a.p, a.q)
    lines = ["cap,constant,witnessStart,witnessEnd"]
    lines += [f"{c},{v!r},{s},{e}" for c, v, s, e in g.csv_rows()]
    _emit("\n".join(lines) + "\n", a.out)
    print(f"verdict: {g.verdict.value}", file=sys.stderr)


def _whitney(a) -> None:
    e = dio.read_integer_set(a.inp)
    _emit(dio.dumps(decompose(e, a.ray_depth).to_list()), a.out)


def _profile(tag: str, a):
    if a.p is None:
        raise UsageError(f"verify --tag {tag} needs --p")
    if tag in ("t3.7(i)", "c3.5(i)"):
        if a.q is None:
            raise UsageError(f"verify --tag {tag} needs --q (Morrey scale)")
        return make_profile(ProfileKind.MORREY, a.alpha, a.p, a.q)
    kind = ProfileKind.WEIGHTED_MORREY if tag in ("t3.10", "t3.11") else ProfileKind.SOBOLEV
    return make_profile(kind, a.alpha, a.p, a.q)


def _verify(a) -> None:
    tag = ex.canonical_tag(a.tag)
    if not a.caps:
        raise UsageError("--caps must not be empty")
    fam = TestFamily(sizes=tuple(sorted(set(a.caps))), seed=a.seed)
    weight = None if a.beta is None else Weight.power(a.beta)
    if tag == "m2.13":
        prof = _profile(tag, a)
        rows = ex.membership_phase_scan(a.betas or MEMBERSHIP_BETAS, prof, a.caps)
        _emit(dio.dumps({"tag": tag, "params": {"alpha": prof.alpha, "p": prof.p, "q": prof.q,
                                                 "caps": a.caps},
                         "rows": [r.to_dict() for r in rows]}), a.out)
        return
    if tag == "l3.16":
        rep = ex.good_set_family_experiment(a.alpha, a.seed)
    elif tag == "l3.12":
        prof = _profile(tag, a)
        if weight is not None:
            ex.required_profile("t3.1", prof, weight)
        rep = ex.good_lambda_experiment(prof.alpha, prof.q, None if weight is None else weight.pow(prof.q),
                                        fam, a.caps)
    elif tag == "c3.5(i)":
        rep = ex.hedberg_experiment(_profile(tag, a), fam, a.caps)
    elif tag in ex.STRONG_TAGS:
        rep = ex.strong_type_experiment(_profile(tag, a), weight, fam, tag, a.caps)
    else:
        rep = ex.weak_type_experiment(_profile(tag, a), weight, fam, tag, a.caps)
    _emit(rep.to_json(), a.out)
    if a.csv:
        dio.write_text(a.csv, rep.to_csv())
    if rep.verdict is not Verdict.BOUNDED:
        print(f"{tag}: verdict {rep.verdict.value}", file=sys.stderr)


def _bench(a) -> None:
    if a.reps < 1:
        raise UsageError("--reps must be positive")
    rows = run_bench(a.sizes, a.alpha, a.reps, a.seed)
    for r in rows:
        if r.error:
            print(f"n={r.n}: {r.error}", file=sys.stderr)
        elif r.max_rel_dev is not None and r.max_rel_dev > 1e-10:
            print(f"n={r.n}: fast/direct deviation {r.max_rel_dev:.3g}", file=sys.stderr)
    _emit(bench_csv(rows), a.out)


_COMMANDS = {"op": _op, "norm": _norm, "weight": _weight, "whitney": _whitney,
             "verify": _verify, "bench": _bench}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"driesz: I/O error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, CapacityError, ValueError) as exc:
        print(f"driesz: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
