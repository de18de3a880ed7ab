"""Command-line interface.

Exit codes: 0 success, 1 honest negative (no path, no cycle, witness found,
failed verification, ...), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .absorb import AbsorberConstraint, count_absorbers, find_absorber
from .connect import ConnectorParams, connect_pair
from .density import (
    DensityParams,
    estimate_rho_hat,
    falsify_cherry,
    falsify_edge,
    falsify_points,
)
from .errors import (
    BadEnds,
    CoverTooSparse,
    FormatError,
    NoPath,
    NotFound,
    PipelineError,
    PreconditionFailed,
    BoundViolation,
    TightHamError,
    TooLarge,
)
from .generators import KINDS, generate
from .io import (
    check_certificate,
    format_certificate,
    format_edge_list,
    parse_certificate,
    parse_edge_list,
    window_digest,
)
from .oracle import DEFAULT_CAP, dp_hamilton
from .pathcover import CoverParams, greedy_cover
from .paths import PathEnd
from .pipeline import PipelineParams, find_tight_hamilton
from .rng import stage_rng
from .shave import shave_graph

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str):
    return parse_edge_list(_read_text(path).splitlines())


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


# -- commands -----------------------------------------------------------------
def cmd_gen(args) -> int:
    g = generate(args.kind, args.n, args.p, args.seed)
    _emit(args, format_edge_list(g))
    return OK
    return OK


def cmd_density(args) -> int:
    g = _load_graph(args.graph)
    p = DensityParams(args.d, args.rho)
    falsifier = {"cherry": falsify_cherry, "points": falsify_points, "edge": falsify_edge}[args.kind]
    w = falsifier(g, p, restarts=args.restarts, iterations=args.iterations, seed=args.seed)
    payload = {"kind": args.kind, "n": g.n, "d": args.d, "rho": args.rho, "witness": None}
    if args.estimate:
        payload["rho_hat"] = estimate_rho_hat(g, args.d, seed=args.seed)
    if w is None:
        _report(args, payload, f"no {args.kind} violation found within the budget (not a proof)")
        return OK
    payload["witness"] = {"observed": w.observed, "bound": w.bound, "deficit": w.deficit}
    _report(args, payload,
            f"{args.kind} violation: observed {w.observed} < bound {w.bound:.4f} (deficit {w.deficit:.4f})")
    return NEGATIVE


def cmd_shave(args) -> int:
    g = _load_graph(args.graph)
    try:
        res = shave_graph(g, args.d, args.rho)
    except (PreconditionFailed, BoundViolation) as exc:
        _report(args, {"error": str(exc), **_jsonable(exc.diagnostics)}, f"shave failed: {exc}")
        return NEGATIVE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(format_edge_list(res.subgraph))
    payload = {
        "removed_edges": res.removed_edges,
        "zeroed_pairs": len(res.zeroed_pairs),
        "threshold": res.threshold_used,
        "edges": res.subgraph.num_edges(),
    }
    _report(args, payload,
            f"removed {res.removed_edges} edges; {len(res.zeroed_pairs)} zero pairs; threshold {res.threshold_used:.4f}")
    return OK


def cmd_absorbers(args) -> int:
    g = _load_graph(args.graph)
    v = args.vertex
    if not 0 <= v < g.n:
        raise UsageError(f"vertex {v} outside [0, {g.n})")
    payload = {"vertex": v, "count": count_absorbers(g, v)}
    human = f"{payload['count']} absorbers for vertex {v}"
    if args.find:
        c = AbsorberConstraint(forbidden=frozenset(args.forbid or ()))
        try:
            a = find_absorber(g, v, c, stage_rng(args.seed, "absorbers"))
        except NotFound as exc:
            _report(args, {**payload, "absorber": None}, f"{human}; none admissible: {exc}")
            return NEGATIVE
        payload["absorber"] = list(a.quad)
        human += f"; found {a.x} {a.y} {a.z} {a.w}"
    _report(args, payload, human)
    return OK


def cmd_connect(args) -> int:
    g = _load_graph(args.graph)
    a = PathEnd(args.ends[0], args.ends[1])
    b = PathEnd(args.ends[2], args.ends[3])
    for v in args.ends:
        if not 0 <= v < g.n:
            raise UsageError(f"vertex {v} outside [0, {g.n})")
    if len(set(args.ends)) != 4:
        raise UsageError("the four end vertices must be distinct")
    hp = g
    if args.d is not None:
        try:
            hp = shave_graph(g, args.d, args.rho).subgraph
        except (PreconditionFailed, BoundViolation) as exc:
            _report(args, {"error": str(exc)}, f"shave failed: {exc}")
            return NEGATIVE
    beta = 1.0 if args.beta is None else max(args.beta * g.n, 1e-9)
    p = ConnectorParams(internal_len=args.internal_len, beta_threshold=beta)
    try:
        path = connect_pair(g, hp, a, b, args.forbid or (), p, stage_rng(args.seed, "connect"))
    except (NoPath, BadEnds) as exc:
        _report(args, {"path": None, "error": str(exc)}, f"no connector: {exc}")
        return NEGATIVE
    _report(args, {"path": list(path.seq)}, " ".join(map(str, path.seq)))
    return OK


def cmd_cover(args) -> int:
    g = _load_graph(args.graph)
    p = CoverParams(zeta=args.zeta, l0=args.l0, restarts=args.restarts, seed=args.seed)
    try:
        res = greedy_cover(g, p)
        code = OK
    except CoverTooSparse as exc:
        res = exc.best
        code = NEGATIVE
    payload = {"paths": [list(q.seq) for q in res.paths], "leftover": sorted(res.leftover), "ok": code == OK}
    human = "\n".join(" ".join(map(str, q.seq)) for q in res.paths)
    human += f"\nleftover: {' '.join(map(str, sorted(res.leftover))) or '-'}"
    if code:
        human += f"\ncover misses the target zeta*n = {args.zeta * g.n:.2f}"
    _report(args, payload, human)
    return code


def cmd_hamilton(args) -> int:
    g = _load_graph(args.graph)
    params = PipelineParams(
        d=args.d, rho=args.rho, alpha=args.alpha, sigma=args.sigma, zeta=args.zeta,
        l0=args.l0, beta_connect=args.beta, internal_len=args.internal_len,
        reservoir_tries=args.reservoir_tries, strict_reservoir=args.strict,
        cover_restarts=args.restarts, global_retries=args.retries, seed=args.seed,
    )
    try:
        cert = find_tight_hamilton(g, params)
    except PipelineError as exc:
        msg = {"stage": exc.stage, "error": str(exc), "diagnostics": _jsonable(exc.diagnostics)}
        print(json.dumps(msg, sort_keys=True) if args.json else f"{exc.stage} stage failed: {exc}",
              file=sys.stderr)
        return NEGATIVE
    _emit(args, format_certificate(cert, None if args.no_graph else g))
    return OK


def cmd_verify(args) -> int:
    cert, embedded, digest = parse_certificate(_read_text(args.certificate))
    g = _load_graph(args.graph) if args.graph else embedded
    if g is None:
        raise UsageError("certificate has no graph section; pass --graph")
    problems = check_certificate(cert, g)
    if digest != window_digest(cert.order):
        problems.append("digest does not match the recorded order")
    payload = {"valid": not problems, "n": cert.n, "problems": problems}
    _report(args, payload, "valid tight Hamilton cycle" if not problems else "INVALID\n" + "\n".join(problems))
    return OK if not problems else NEGATIVE


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    try:
        cyc = dp_hamilton(g, cap=args.cap)
    except TooLarge as exc:
        raise UsageError(str(exc)) from None
    if cyc is None:
        _report(args, {"cycle": None}, "no tight Hamilton cycle")
        return NEGATIVE
    _report(args, {"cycle": list(cyc.order)}, " ".join(map(str, cyc.order)))
    return OK


def _jsonable(d: dict) -> dict:
    return json.loads(json.dumps(d, default=str))


# -- parser -------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tightham", description="Find and certify tight Hamilton cycles in dense 3-graphs."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log stage progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", nargs="?", default="-", help="edge-list file ('-' for stdin)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=0)
        return p

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", type=float, default=None, help="edge probability (random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = graph_cmd("density", "search for denseness violations")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--kind", choices=("cherry", "points", "edge"), default="cherry")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--iterations", type=int, default=50)
    p.add_argument("--estimate", action="store_true", help="also report the empirical rho")
    p.set_defaults(func=cmd_density)

    p = graph_cmd("shave", "codegree shaving at dn/3")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--out", help="write the shaved edge list here")
    p.set_defaults(func=cmd_shave)

    p = graph_cmd("absorbers", "count (and optionally find) absorbers of a vertex")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--find", action="store_true")
    p.add_argument("--forbid", type=int, nargs="*")
    p.set_defaults(func=cmd_absorbers)

    p = graph_cmd("connect", "connect two path ends")
    p.add_argument("--ends", type=int, nargs=4, required=True, metavar=("A_IN", "A_OUT", "B_OUT", "B_IN"),
                   help="connector runs A_IN A_OUT ... B_OUT B_IN")
    p.add_argument("--internal-len", type=int, default=6)
    p.add_argument("--beta", type=float, default=None, help="waypoint codegree threshold as a fraction of n")
    p.add_argument("--d", type=float, default=None, help="shave first with this d")
    p.add_argument("--rho", type=float, default=0.02)
    p.add_argument("--forbid", type=int, nargs="*")
    p.set_defaults(func=cmd_connect)

    p = graph_cmd("cover", "greedy tight path cover")
    p.add_argument("--zeta", type=float, default=0.05)
    p.add_argument("--l0", type=int, default=20)
    p.add_argument("--restarts", type=int, default=5)
    p.set_defaults(func=cmd_cover)

    p = graph_cmd("hamilton", "run the absorption pipeline and emit a certificate")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--rho", type=float, default=0.02)
    p.add_argument("--alpha", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--zeta", type=float)
    p.add_argument("--l0", type=int, default=20)
    p.add_argument("--beta", type=float, help="assembly waypoint threshold (default d/20)")
    p.add_argument("--internal-len", type=int, default=6)
    p.add_argument("--reservoir-tries", type=int, default=200)
    p.add_argument("--strict", action="store_true", help="require all reservoir checks to pass")
    p.add_argument("--restarts", type=int, default=5, help="cover restarts")
    p.add_argument("--retries", type=int, default=3, help="global retries with seed+1")
    p.add_argument("--no-graph", action="store_true", help="omit the embedded edge list")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hamilton)

    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("certificate", nargs="?", default="-")
    p.add_argument("--graph", help="edge-list file; overrides the embedded graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = graph_cmd("oracle", "exact tight Hamiltonicity for small n")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except TightHamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
