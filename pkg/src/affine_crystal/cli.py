"""Command-line interface: ``affine-crystal <subcommand> ...``.

Results are printed to stdout as JSON (or DOT for ``crystal-graph --format
dot``); diagnostics go to stderr.  Exit status is 0 on success, 1 on a
domain error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from typing import Callable

from . import coefficients as coeffs
from .affine_weyl import (
    AffinePermutation,
    elements_of_length,
    from_reduced_word,
    from_window,
    grassmannian_level,
    identity,
    parse_partition,
    parse_window,
    parse_word,
    partition_key,
    partitions_of,
    w_lambda,
)
from .crystal import (
    build_crystal,
    to_dot,
    verify_stembridge,
)
from .errors import AffineCrystalError, DegreeLimitExceeded, HypothesisNotMet, NoMissingResidue
from .factorization import all_factorizations, count_factorizations, enumerate_factorizations
from .involution import verify_involution

DEFAULT_MAX_DEGREE = 12


def max_degree() -> int:
    raw = os.environ.get("CRYSTAL_MAX_DEGREE", "")
    try:
        return int(raw) if raw.strip() else DEFAULT_MAX_DEGREE
    except ValueError:
        return DEFAULT_MAX_DEGREE


def check_degree(w: AffinePermutation):
    limit = max_degree()
    if w.length() > limit:
        raise DegreeLimitExceeded(f"length {w.length()} exceeds CRYSTAL_MAX_DEGREE={limit}")


# --- argument types ---------------------------------------------------------

def _window_arg(text: str) -> AffinePermutation:
    try:
        return parse_window(text)
    except (ValueError, AffineCrystalError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _partition_arg(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list_arg(text: str) -> tuple[int, ...]:
    try:
        return parse_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rect_list_arg(text: str) -> list[tuple[int, int]]:
    """``"4:1,2:-1"`` -> [(4, 1), (2, -1)]."""
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        i, _, e = chunk.partition(":")
        try:
            out.append((int(i), int(e or 1)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad rectangle term {chunk!r}") from None
    return out


def add_element_args(p: argparse.ArgumentParser):
    p.add_argument("--window", type=_window_arg, help="window, e.g. 2,3,1 or [-1,4,5,2]")
    p.add_argument("--word", type=_int_list_arg, help="reduced word, e.g. 3,4,1,2 (needs --n)")
    p.add_argument("--n", type=int, help="rank for --word")


def element_from(args, parser: argparse.ArgumentParser) -> AffinePermutation:
    if (args.window is None) == (args.word is None):
        parser.error("give exactly one of --window and --word")
    if args.window is not None:
        return args.window
    if args.n is None:
        parser.error("--word needs --n")
    return from_reduced_word(args.word, args.n)


def emit(data) -> None:
    sys.stdout.write(json.dumps(data) + "\n")


# --- subcommands ------------------------------------------------------------

def cmd_expand_stanley(args, parser):
    w = element_from(args, parser)
    check_degree(w)
    if args.basis == "m":
        emit(coeffs.stanley_monomial_expansion(w, args.max_parts).to_json())
        return
    try:
        exp = coeffs.stanley_schur_expansion(w, args.method, max_parts=args.max_parts)
    except NoMissingResidue as exc:
        print(f"note: {exc}; using the alternating sum", file=sys.stderr)
        exp = coeffs.stanley_schur_expansion(w, "alternating", max_parts=args.max_parts)
        exp.hypotheses_met = False
    emit(exp.to_json())


def cmd_crystal_graph(args, parser):
    w = element_from(args, parser)
    check_degree(w)
    g = build_crystal(w, args.factors, args.x)
    if args.format == "dot":
        sys.stdout.write(to_dot(g))
    else:
        emit(g.to_json())


def cmd_highest_weights(args, parser):
    w = element_from(args, parser)
    check_degree(w)
    g = build_crystal(w, args.factors, args.x)
    emit({
        "highest_weights": {partition_key(k): v for k, v in g.highest_weights().items()},
        "vertices": [g.label(i) for i in g.highest_weight_vertices()],
    })


def _grassmannian_arg(args, name):
    window = getattr(args, name)
    shape = getattr(args, f"{name}_shape")
    if (window is None) == (shape is None):
        raise argparse.ArgumentTypeError(f"give exactly one of --{name} and --{name}-shape")
    if window is not None:
        return window
    if args.n is None:
        raise argparse.ArgumentTypeError(f"--{name}-shape needs --n")
    return w_lambda(shape, args.n)


def _with_fallback(compute: Callable[[str], int], method: str) -> dict:
    try:
        return {"value": compute(method), "method": method, "hypotheses_met": True}
    except HypothesisNotMet as exc:
        print(f"note: {exc}; using the k-Pieri oracle", file=sys.stderr)
        return {"value": compute("oracle"), "method": "oracle", "hypotheses_met": False}


def cmd_lr_coeff(args, parser):
    try:
        w = _grassmannian_arg(args, "w")
        v = _grassmannian_arg(args, "v")
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    check_degree(v)
    result = _with_fallback(lambda m: coeffs.affine_lr(args.mu, w, v, args.R, method=m), args.method)
    emit({"mu": partition_key(args.mu), "w": str(w), "v": str(v), **result})


def cmd_gw_invariant(args, parser):
    u, w, v = args.u, args.w, args.v
    data = coeffs.gw_setup(u, w, v, args.d, args.r)
    result = _with_fallback(lambda m: coeffs.gw_invariant(u, w, v, args.d, method=m, r=args.r), args.method)
    emit({
        **result,
        "r": data.r,
        "mu": partition_key(data.mu),
        "sigma": None if data.sigma is None else str(data.sigma),
        "sigma_word": None if data.sigma is None else list(data.sigma.reduced_word()),
    })


def cmd_fusion(args, parser):
    mu_t, w, v = coeffs.fusion_setup(args.lam, args.mu, args.nu, args.ell, args.n)
    met = coeffs.crystal_hypotheses(coeffs.multiply(v, coeffs.inverse(w)), mu_t)
    value, method = coeffs.fusion_coefficient(args.lam, args.mu, args.nu, args.ell, args.n, args.method)
    emit({"value": value, "method": method, "hypotheses_met": met, "level": args.n - args.ell})


def cmd_positroid(args, parser):
    check_degree(args.window)
    emit(coeffs.positroid_schubert_decomposition(args.window, args.r, args.n).to_json())


def cmd_verify_stembridge(args, parser):
    w = element_from(args, parser)
    check_degree(w)
    g = build_crystal(w, args.factors, args.x)
    emit({"vertices": len(g.vertices), "edges": len(g.edges), **verify_stembridge(g).to_json()})


def cmd_verify_involution(args, parser):
    w = element_from(args, parser)
    check_degree(w)
    emit(verify_involution(w, args.mu, m=args.m, rule=args.rule, x=args.x).to_json())


def cmd_count_factorizations(args, parser):
    w = element_from(args, parser)
    check_degree(w)
    if args.weight is not None:
        facts = enumerate_factorizations(w, args.weight)
        out = {"weight": list(args.weight), "count": len(facts)}
    else:
        if args.factors is None:
            parser.error("give --weight or --factors")
        facts = all_factorizations(w, args.factors)
        out = {"factors": args.factors, "count": len(facts)}
    if args.list:
        out["factorizations"] = [str(f) for f in facts]
    emit(out)


# --- self tests -------------------------------------------------------------

def _sample_elements(n: int, max_len: int, need_missing: bool = True) -> list[AffinePermutation]:
    return [
        w for k in range(max_len + 1) for w in elements_of_length(n, k)
        if w.missing_residues() or not need_missing
    ]


def selftest_stanley() -> int:
    checks = 0
    for w in _sample_elements(4, 5):
        a = coeffs.stanley_schur_expansion(w, "crystal").terms
        b = coeffs.stanley_schur_expansion(w, "alternating").terms
        assert a == b, (w, a, b)
        checks += 1
    return checks


def selftest_crystal() -> int:
    checks = 0
    for w in _sample_elements(4, 4):
        for num in (2, 3):
            assert verify_stembridge(build_crystal(w, num)).passed, w
            checks += 1
    return checks


def selftest_lr() -> int:
    checks = 0
    n = 4
    for dv in range(6):
        for v in grassmannian_level(n, dv).values():
            for dw in range(dv + 1):
                for w in grassmannian_level(n, dw).values():
                    for mu in partitions_of(dv - dw):
                        if not coeffs.fits_some_rectangle(mu, n):
                            continue
                        oracle = coeffs.affine_lr(mu, w, v, method="oracle")
                        assert oracle == coeffs.affine_lr(mu, w, v, method="alternating")
                        try:
                            assert oracle == coeffs.affine_lr(mu, w, v, method="crystal")
                        except HypothesisNotMet:
                            pass
                        checks += 1
    return checks


def selftest_gw() -> int:
    u = from_window([1, 2, 4, 7, 3, 5, 6])
    w = from_window([3, 1, 5, 4, 2, 6, 7])
    v = from_window([4, 2, 5, 7, 1, 3, 6])
    assert coeffs.gw_invariant(u, w, v, [0] * 6) == 1
    assert coeffs.gw_invariant(u, w, w, [0] * 6) == 0
    assert coeffs.gw_invariant(u, identity(7), u, [0] * 6) == 1
    return 3


def selftest_fusion() -> int:
    checks = 0
    for method in ("crystal", "oracle"):
        assert coeffs.fusion_coefficient((1,), (1,), (2,), 2, 4, method)[0] == 1
        assert coeffs.fusion_coefficient((1,), (1,), (), 2, 4, method)[0] == 1
        checks += 2
    for la in partitions_of(2, 2, 2):
        assert coeffs.fusion_coefficient(la, (), la, 3, 5)[0] == 1
        checks += 1
    return checks


def selftest_positroid() -> int:
    n, r = 4, 2
    checks = 0
    for window in itertools.product(*[range(i, i + n + 1) for i in range(1, n + 1)]):
        try:
            w = from_window(window)
        except AffineCrystalError:
            continue
        if w.shift != r:
            continue
        exp = coeffs.positroid_schubert_decomposition(w, r, n)
        if exp.hypotheses_met:
            assert all(c > 0 for c in exp.terms.values()), (w, exp.terms)
        checks += 1
    return checks


def selftest_involution() -> int:
    checks = 0
    for w in _sample_elements(4, 5):
        for mu in partitions_of(w.length(), 3):
            for rule in ("max", "min"):
                assert verify_involution(w, mu, m=max(len(mu), 1) + 1, rule=rule).passed, (w, mu)
                checks += 1
    return checks


def selftest_count() -> int:
    checks = 0
    for w in _sample_elements(4, 5):
        for alpha in itertools.product(range(4), repeat=3):
            if sum(alpha) == w.length():
                sorted_alpha = tuple(sorted(alpha, reverse=True))
                assert count_factorizations(w, alpha) == count_factorizations(w, sorted_alpha)
                checks += 1
    return checks


SELFTESTS: dict[str, Callable[[], int]] = {
    "expand-stanley": selftest_stanley,
    "crystal-graph": selftest_crystal,
    "highest-weights": selftest_crystal,
    "lr-coeff": selftest_lr,
    "gw-invariant": selftest_gw,
    "fusion": selftest_fusion,
    "positroid": selftest_positroid,
    "verify-stembridge": selftest_crystal,
    "verify-involution": selftest_involution,
    "count-factorizations": selftest_count,
}


def run_selftest(name: str) -> int:
    try:
        checks = SELFTESTS[name]()
    except AssertionError as exc:
        emit({"selftest": name, "passed": False, "failure": repr(exc.args)})
        return 1
    emit({"selftest": name, "passed": True, "checks": checks})
    return 0


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affine-crystal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, element=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--selftest", action="store_true", help="run the built-in checks and exit")
        if element:
            add_element_args(p)
        p.set_defaults(func=func, parser=p)
        return p

    p = add("expand-stanley", cmd_expand_stanley, "Schur or monomial expansion of F_w")
    p.add_argument("--method", choices=["crystal", "alternating"], default="crystal")
    p.add_argument("--basis", choices=["schur", "m"], default="schur")
    p.add_argument("--max-parts", type=int)

    for name, func, help_text in (
        ("crystal-graph", cmd_crystal_graph, "the crystal on factorizations of w"),
        ("highest-weights", cmd_highest_weights, "highest weight factorizations of w"),
        ("verify-stembridge", cmd_verify_stembridge, "check Stembridge's local axioms"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--factors", type=int, default=3)
        p.add_argument("--x", type=int)
        if name == "crystal-graph":
            p.add_argument("--format", choices=["dot", "json"], default="json")

    p = add("lr-coeff", cmd_lr_coeff, "affine Littlewood-Richardson coefficient", element=False)
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.add_argument("--w", type=_window_arg)
    p.add_argument("--v", type=_window_arg)
    p.add_argument("--w-shape", type=_partition_arg)
    p.add_argument("--v-shape", type=_partition_arg)
    p.add_argument("--n", type=int)
    p.add_argument("--R", type=_rect_list_arg, default=[], help='k-rectangles, e.g. "2:1,3:1"')
    p.add_argument("--method", choices=["crystal", "oracle", "alternating"], default="crystal")

    p = add("gw-invariant", cmd_gw_invariant, "flag Gromov-Witten invariant <u, w, w0 v>_d", element=False)
    p.add_argument("--u", type=_window_arg, required=True)
    p.add_argument("--w", type=_window_arg, required=True)
    p.add_argument("--v", type=_window_arg, required=True)
    p.add_argument("--d", type=_int_list_arg, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--method", choices=["crystal", "alternating"], default="crystal")

    p = add("fusion", cmd_fusion, "su(ell) fusion coefficient at level n - ell", element=False)
    p.add_argument("--lam", type=_partition_arg, required=True)
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.add_argument("--nu", type=_partition_arg, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["crystal", "oracle"])

    p = add("positroid", cmd_positroid, "Schubert expansion of a positroid class", element=False)
    p.add_argument("--window", type=_window_arg, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("verify-involution", cmd_verify_involution, "check the sign-reversing involution")
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--rule", choices=["max", "min"], default="max")

    p = add("count-factorizations", cmd_count_factorizations, "count affine factorizations")
    p.add_argument("--weight", type=_int_list_arg)
    p.add_argument("--factors", type=int)
    p.add_argument("--list", action="store_true", help="also list the factorizations")
    return parser


def _strip_required(parser: argparse.ArgumentParser):
    # --selftest needs no other arguments
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sub in action.choices.values():
                for a in sub._actions:
                    a.required = False


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    if "--selftest" in argv:
        _strip_required(parser)
    args = parser.parse_args(argv)
    if args.selftest:
        return run_selftest(args.command)
    try:
        args.func(args, args.parser)
    except ValueError as exc:  # AffineCrystalError and malformed values
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
