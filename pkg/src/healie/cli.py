"""Command-line front end: ``healie {bracket|check|dims|canon|reflect|twist|act} -c CONFIG``.

Exit codes: 0 success, 1 check or load failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .checks import DEFAULT_SAMPLES, SUITES, run_suite
from .config import AlgebraConfig, ConfigError, load_config
from .lattice import bar
from .parser import ParseError, parse_element, parse_scalar
from .representations import JetGenerator, JetModule, JetModuleVector, SpModule
from .serialize import (
    SerializationError,
    element_to_json,
    render,
    root_from_json,
    root_to_json,
    scalar_to_json,
    toroidal_to_json,
    weight_from_json,
    weight_to_json,
)
from .simple_lie import ValidationError
from .structure import (
    TwistCompatibilityError,
    TwistMatrix,
    bnn,
    is_root,
    random_unimodular,
    reflect,
    root_of,
    root_weight,
    twist,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        print(text)


def _ints(text: str) -> tuple[int, ...]:
    body = text.strip().strip("()[]")
    if not body:
        return ()
    try:
        return tuple(int(x) for x in re.split(r"[,\s]+", body.replace("−", "-")) if x)
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _degree(cfg: AlgebraConfig, text: str) -> tuple[int, ...]:
    r = _ints(text)
    if len(r) != cfg.lattice.n:
        raise UsageError(f"degree {text!r} has {len(r)} entries, expected {cfg.lattice.n}")
    return r


def _scalars(cfg: AlgebraConfig, text: str | None):
    n = cfg.lattice.n
    if text is None:
        return [cfg.field.zero] * n
    vals = [parse_scalar(cfg.field, part) for part in text.split(",")]
    if len(vals) != n:
        raise UsageError(f"expected {n} comma-separated scalars, got {len(vals)}")
    return vals


def _element(cfg: AlgebraConfig, text: str):
    named = cfg.elements.get(text)
    return parse_element(cfg.tau, named if named is not None else text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_bracket(cfg: AlgebraConfig, args) -> int:
    a, b = _element(cfg, args.a), _element(cfg, args.b)
    res = cfg.tau.bracket(a, b)
    _emit(args, {"command": "bracket", "result": element_to_json(cfg.tau, res)}, render(cfg.tau, res))
    return EXIT_OK


def cmd_check(cfg: AlgebraConfig, args) -> int:
    reports = run_suite(cfg.tau, args.suite, args.samples, args.seed, cfg.name)
    if not isinstance(reports, list):
        reports = [reports]
    ok = True
    for rep in reports:
        ok &= rep.ok
        if args.json:
            _emit(args, {"command": "check", **rep.to_json()}, "")
            continue
        print(rep.line())
        for note in rep.notes:
            print(f"  note: {note}")
        if rep.first_failure is not None:
            print("  first failure: " + json.dumps(rep.first_failure, sort_keys=True))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dims(cfg: AlgebraConfig, args) -> int:
    tau, lat = cfg.tau, cfg.lattice
    rows = []
    for text in args.degrees:
        r = _degree(cfg, text)
        row = {"degree": list(r), "class": list(lat.residue(r)), "loop_dim": cfg.auts.dimension(r)}
        if lat.in_gamma_bar(r):
            row["central_dim"] = tau.central_dimension(r)
        else:
            row["central_dim"] = None
            row["error"] = "degree not in Gamma_bar"
        rows.append(row)
    if args.json:
        for row in rows:
            _emit(args, {"command": "dims", **row}, "")
    else:
        print(f"{'degree':>20} {'class':>16} {'dim g(r)':>9} {'dim Z_r':>8}")
        for row in rows:
            cen = row["central_dim"] if row["central_dim"] is not None else "error: not in Gamma_bar"
            print(f"{str(tuple(row['degree'])):>20} {str(tuple(row['class'])):>16} {row['loop_dim']:>9} {cen!s:>8}")
    return EXIT_OK


def cmd_canon(cfg: AlgebraConfig, args) -> int:
    u = _scalars(cfg, args.u)
    r = _degree(cfg, args.r)
    try:
        canon = cfg.tau.central_canonicalize(u, r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if any(r):
        payload = {"degree": list(r), "basis": [list(bar(r)), list(r)], "coeff": scalar_to_json(canon)}
        text = f"{canon} * K[{bar(r)},{r}]"
    else:
        payload = {"degree": list(r), "K": [scalar_to_json(c) for c in canon]}
        text = " + ".join(f"{c}*K{i + 1}" for i, c in enumerate(canon) if c) or "0"
    _emit(args, {"command": "canon", **payload}, text)
    return EXIT_OK


def _root_arg(cfg: AlgebraConfig, text: str):
    if text.lstrip().startswith("{"):
        return root_from_json(cfg.tau, json.loads(text))
    return root_of(cfg.tau, _element(cfg, text))


def _weight_arg(cfg: AlgebraConfig, text: str):
    if text.lstrip().startswith("{"):
        return weight_from_json(cfg.tau, json.loads(text))
    return root_weight(cfg.tau, root_of(cfg.tau, _element(cfg, text)))


def cmd_reflect(cfg: AlgebraConfig, args) -> int:
    gamma = _root_arg(cfg, args.root)
    lam = _weight_arg(cfg, args.weight)
    out = reflect(cfg.tau, gamma, lam)
    payload = {
        "command": "reflect",
        "root": root_to_json(gamma),
        "weight": weight_to_json(lam),
        "result": weight_to_json(out),
        "result_is_root": is_root(cfg.tau, out),
    }
    text = (
        f"finite={[str(c) for c in out.finite]} K={[str(c) for c in out.K]} "
        f"d={[str(c) for c in out.d]} root={payload['result_is_root']}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_twist(cfg: AlgebraConfig, args) -> int:
    n = cfg.lattice.n
    if args.matrix is not None:
        B = TwistMatrix(json.loads(args.matrix))
    elif args.bnn is not None:
        B = bnn(n, args.bnn)
    else:
        import random

        B = random_unimodular(cfg.tau, random.Random(f"{args.seed}:twist:matrix"))
    if B.n != n:
        raise UsageError(f"twist matrix must be {n}x{n}")
    x = _element(cfg, args.expr)
    y = twist(cfg.tau, B, x)
    payload = {"command": "twist", "matrix": [list(r) for r in B.B], "result": toroidal_to_json(cfg.tau, y)}
    _emit(args, payload, json.dumps(payload["result"], sort_keys=True))
    return EXIT_OK


_MONO = re.compile(r"\s*t\s*\[(.*)\]\s*$")


def _generator(cfg: AlgebraConfig, text: str) -> JetGenerator:
    m = _MONO.match(text)
    if m:
        return JetGenerator.mono(_degree(cfg, m.group(1)))
    x = _element(cfg, text)
    if x.loop or x.c0 or x.cen:
        raise UsageError("a jet generator must be t[r], or a combination of d_i and h[r]")
    terms = [("ham", r, c) for r, c in sorted(x.ham.items())]
    if x.d0:
        u = tuple(x.d0.get(i, cfg.field.zero) for i in range(cfg.lattice.n))
        terms.append(("deriv", u, cfg.field.one))
    return JetGenerator(terms)


def cmd_act(cfg: AlgebraConfig, args) -> int:
    n, f = cfg.lattice.n, cfg.field
    W = SpModule.trivial(n, f) if args.module == "trivial" else SpModule.natural(n, f)
    L = JetModule(W, cfg.lattice, _scalars(cfg, args.alpha), _scalars(cfg, args.beta), _scalars(cfg, args.zeta))
    gen = _generator(cfg, args.generator)
    if args.vector is None:
        vec = JetModuleVector({(0,) * n: W.basis()[0]})
    else:
        parts = {}
        for key, comps in json.loads(args.vector).items():
            k = _degree(cfg, key)
            if not cfg.lattice.in_gamma_bar(k):
                raise UsageError(f"jet degree {k} is not in Gamma_bar")
            if len(comps) != W.dim:
                raise UsageError(f"vector components must have length {W.dim}")
            parts[k] = [parse_scalar(f, str(c)) for c in comps]
        vec = JetModuleVector(parts)
    out = L.act(gen, vec)
    result = {",".join(map(str, k)): [scalar_to_json(c) for c in v] for k, v in sorted(out.parts.items())}
    text = "; ".join(f"({','.join(map(str, k))}): [{', '.join(str(c) for c in v)}]" for k, v in sorted(out.parts.items()))
    _emit(args, {"command": "act", "module": W.name, "result": result}, text or "0")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get("HEALIE_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="healie", description="Exact computations in twisted Hamiltonian EALAs.")
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", required=True, help="config path or built-in name (e.g. sl2_untwisted)")
    common.add_argument("--json", action="store_true", help="line-delimited JSON output")

    p = sub.add_parser("bracket", parents=[common], help="bracket two elements")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("check", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("-n", "--samples", type=int, default=None, help=f"samples per suite (defaults: {DEFAULT_SAMPLES})")
    p.add_argument("--seed", type=int, default=_default_seed(), help="master seed (default: $HEALIE_SEED or 0)")

    p = sub.add_parser("dims", parents=[common], help="dimensions of g(r) and (Z/K(m))_r")
    p.add_argument("degrees", nargs="+", help="degrees such as 1,0 or (-1,0)")

    p = sub.add_parser("canon", parents=[common], help="canonical form of K(u, r)")
    p.add_argument("u", help="comma-separated scalars")
    p.add_argument("r", help="degree in Gamma_bar")

    p = sub.add_parser("reflect", parents=[common], help="apply the reflection r_gamma to a weight")
    p.add_argument("root", help="element spanning a real root space, or a root as JSON")
    p.add_argument("weight", help="weight as JSON, or an element whose root is used")

    p = sub.add_parser("twist", parents=[common], help="apply a GL(n,Z) twist")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--matrix", help="integer matrix as JSON")
    g.add_argument("--bnn", type=int, metavar="A", help="the B_{n,n} matrix with parameter a")
    p.add_argument("--seed", type=int, default=_default_seed(), help="seed for a random compatible matrix")
    p.add_argument("expr")

    p = sub.add_parser("act", parents=[common], help="act on the jet module W (x) A_n(m)")
    p.add_argument("--module", choices=("trivial", "natural"), default="natural")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--zeta")
    p.add_argument("--vector", help='JSON map {"k1,...,kn": [w_1, ...]}')
    p.add_argument("generator", help="t[r], h[r], d_i or a combination of the last two")
    return ap


COMMANDS = {
    "bracket": cmd_bracket,
    "check": cmd_check,
    "dims": cmd_dims,
    "canon": cmd_canon,
    "reflect": cmd_reflect,
    "twist": cmd_twist,
    "act": cmd_act,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (ConfigError, ValidationError, ValueError) as exc:
        print(f"healie: failed to load config: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        return COMMANDS[args.command](cfg, args)
    except ParseError as exc:
        print(exc.caret(), file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, SerializationError, json.JSONDecodeError) as exc:
        print(f"healie: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TwistCompatibilityError as exc:
        print(f"healie: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"healie: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
