"""Command-line front end.

Exit codes: 0 on success, 1 on a parse or domain error, 2 on a usage error.
With no subcommand a line-oriented REPL reads commands from stdin; lines
of the form ``name = expr`` bind ordinals for later expressions.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path
from typing import Mapping, TextIO

from . import __version__
from .arithmetic import (
    cofinality,
    decompose_base,
    is_regular_uncountable,
)
from .cshp import (
    DecisionError,
    decide_coproduct,
    decide_ordinal,
    decide_product,
    explain,
    headline,
    verdict_to_json,
)
from .finitetop import (
    PosetError,
    cofinal_thin,
    colimit_topology,
    enumerate_topologies,
    index_monotone,
    load_poset,
    load_space,
    notcolim_witness,
    subtau_topology,
    tau_discrete_sides,
)
from .homeo import (
    DomainError,
    FDeltaSpec,
    FiniteSupportPermutation,
    f_delta_eval,
    probe_image,
    probe_point,
)
from .notation import Order, Ordinal, ParseError, classify, compare, parse, render


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")

    def exit(self, status=0, message=None):
        if message:
            raise UsageError(message)
        raise _HelpExit(status)


class _HelpExit(Exception):
    def __init__(self, status):
        self.status = status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON record")
    common.add_argument("--explain", action="store_true", help="add the proof sketch / details")
    common.add_argument("--trace", action="store_true", help="show intermediate values")

    p = _Parser(prog="ordinal-cshp", description="Ordinal arithmetic and CSHP decisions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("eval", parents=[common], help="normalize ordinal expressions")
    s.add_argument("exprs", nargs="+")
    s = sub.add_parser("cmp", parents=[common], help="compare two ordinals")
    s.add_argument("a")
    s.add_argument("b")
    s = sub.add_parser("cnf", parents=[common], help="list Cantor normal form summands")
    s.add_argument("expr")
    s = sub.add_parser("cf", parents=[common], help="cofinality and kind")
    s.add_argument("expr")

    cshp = sub.add_parser("cshp", help="decide CSHP")
    csub = cshp.add_subparsers(dest="mode", parser_class=_Parser, required=True)
    s = csub.add_parser("ordinal", parents=[common])
    s.add_argument("expr")
    s = csub.add_parser("product", parents=[common])
    s.add_argument("exprs", nargs="+")
    s = csub.add_parser("coproduct", parents=[common])
    s.add_argument("exprs", nargs="+", metavar="expr")

    homeo = sub.add_parser("homeo", help="evaluate f_delta maps")
    hsub = homeo.add_subparsers(dest="mode", parser_class=_Parser, required=True)
    for name in ("eval", "probe"):
        s = hsub.add_parser(name, parents=[common])
        s.add_argument("--beta", required=True, help="infinite limit ordinal; alpha = w^beta")
        s.add_argument("--delta", default="0", help="index into the fundamental sequence of beta")
        s.add_argument("--beta-delta", help="override beta_delta (default: beta[delta])")
        s.add_argument("--phi", default="(0 1)", help="finite-support bijection in cycle notation")
        if name == "eval":
            s.add_argument("--inverse", action="store_true")
            s.add_argument("points", nargs="+")
        else:
            s.add_argument("--beta-gamma", required=True)

    ft = sub.add_parser("finitetop", help="finite topology tools")
    fsub = ft.add_subparsers(dest="mode", parser_class=_Parser, required=True)
    s = fsub.add_parser("thin", parents=[common], help="thin a cofinal enumeration")
    s.add_argument("file")
    s = fsub.add_parser("colimit", parents=[common], help="final topology of a cover")
    s.add_argument("file")
    s.add_argument("--undirected", action="store_true", help="skip the directedness check")
    s = fsub.add_parser("prop21-scan", parents=[common], help="exhaustive tau-discreteness scan")
    s.add_argument("--max-points", type=int, default=4)
    s.add_argument("--max-tau", type=int, default=5)
    return p


class Session:
    def __init__(self, out: TextIO, env: Mapping[str, Ordinal] | None = None):
        self.out = out
        self.env = dict(env or {})

    def write(self, text: str = "") -> None:
        self.out.write(text + "\n")

    def emit_json(self, data) -> None:
        self.write(json.dumps(data, ensure_ascii=False, sort_keys=True))

    def parse(self, text: str) -> Ordinal:
        return parse(text, self.env)

    # -- handlers --------------------------------------------------------------

    def cmd_eval(self, args):
        values = [self.parse(e) for e in args.exprs]
        if args.json:
            self.emit_json([{"input": e, "value": render(v)} for e, v in zip(args.exprs, values)])
            return
        for v in values:
            self.write(render(v))
            if args.trace:
                self._trace_cnf(v)

    def _trace_cnf(self, v: Ordinal):
        for e, c in v.cnf:
            self.write(f"  exponent {render(e)}, coefficient {c}")

    def cmd_cmp(self, args):
        a, b = self.parse(args.a), self.parse(args.b)
        r = compare(a, b)
        sym = {Order.LT: "<", Order.EQ: "=", Order.GT: ">"}[r]
        if args.json:
            self.emit_json({"a": render(a), "b": render(b), "order": r.name})
        else:
            self.write(f"{render(a)} {sym} {render(b)}")

    def cmd_cnf(self, args):
        v = self.parse(args.expr)
        if args.json:
            self.emit_json({"value": render(v), "cnf": [[render(e), c] for e, c in v.cnf]})
            return
        if v.is_zero:
            self.write("0 (no summands)")
        for e, c in v.cnf:
            self.write(f"w^({render(e)}) * {c}")

    def cmd_cf(self, args):
        v = self.parse(args.expr)
        cf = cofinality(v)
        record = {
            "value": render(v),
            "kind": classify(v).value,
            "cofinality": render(cf),
            "regular_uncountable": is_regular_uncountable(v),
        }
        if args.json:
            self.emit_json(record)
        else:
            self.write(f"cf({render(v)}) = {render(cf)}  [{record['kind']}"
                       + (", uncountable regular cardinal]" if record["regular_uncountable"] else "]"))

    def cmd_cshp(self, args):
        if args.mode == "ordinal":
            v = decide_ordinal(self.parse(args.expr))
        elif args.mode == "product":
            v = decide_product([self.parse(e) for e in args.exprs])
        else:
            if len(args.exprs) != 2:
                raise UsageError(
                    "cshp coproduct takes exactly two summands; n-ary coproducts are not decided "
                    "(whether they follow from the binary rule is an open question)"
                )
            v = decide_coproduct(self.parse(args.exprs[0]), self.parse(args.exprs[1]))
        if args.json:
            self.emit_json(verdict_to_json(v))
            return
        text = explain(v).splitlines()
        self.write(headline(v))
        if args.explain or args.trace or not v.has_cshp:
            for line in text[1:]:
                self.write(line)

    def _spec(self, args) -> FDeltaSpec:
        beta_delta = self.parse(args.beta_delta) if args.beta_delta else None
        phi = FiniteSupportPermutation.parse(args.phi)
        return FDeltaSpec(self.parse(args.beta), self.parse(args.delta), phi, beta_delta)

    def cmd_homeo(self, args):
        spec = self._spec(args)
        header = {
            "alpha": render(spec.alpha),
            "beta": render(spec.beta),
            "beta_delta": render(spec.beta_delta),
            "phi": str(spec.phi),
        }
        if args.mode == "eval":
            direction = "inverse" if args.inverse else "forward"
            rows = []
            for text in args.points:
                x = self.parse(text)
                y = f_delta_eval(spec, x, direction)
                row = {"x": render(x), "image": render(y)}
                if x != spec.alpha:
                    eps, m, eta = decompose_base(x, spec.beta_delta)
                    row.update(eps=render(eps), m=m, eta=render(eta))
                rows.append(row)
            if args.json:
                self.emit_json({**header, "direction": direction, "points": rows})
                return
            if args.explain or args.trace:
                self.write(f"alpha = {header['alpha']}, beta_delta = {header['beta_delta']}, phi = {header['phi']}")
            for row in rows:
                self.write(f"{row['x']} -> {row['image']}")
                if args.trace and "eps" in row:
                    self.write(f"  eps = {row['eps']}, m = {row['m']}, eta = {row['eta']}")
        else:
            gamma = self.parse(args.beta_gamma)
            x = probe_point(gamma)
            y = probe_image(spec, gamma)
            if args.json:
                self.emit_json({**header, "beta_gamma": render(gamma), "probe": render(x), "image": render(y)})
            else:
                self.write(f"{render(x)} -> {render(y)}")

    def cmd_finitetop(self, args):
        if args.mode == "thin":
            P = load_poset(Path(args.file).read_text())
            J = cofinal_thin(P)
            if args.json:
                self.emit_json({"enumeration": [str(c) for c in P.enumeration],
                                "thinned": [str(c) for c in J],
                                "cofinal": P.is_cofinal(J),
                                "index_monotone": index_monotone(P, J)})
            else:
                self.write(" ".join(str(c) for c in J))
                if args.explain:
                    self.write(f"cofinal: {P.is_cofinal(J)}; no later pick below an earlier one: "
                               f"{index_monotone(P, J)}")
        elif args.mode == "colimit":
            X, cover = load_space(Path(args.file).read_text())
            if not cover:
                cover = [frozenset(range(X.n))]
            directed = not args.undirected
            colim = colimit_topology(X, cover, directed)
            cert = notcolim_witness(X, cover, directed)
            if args.json:
                self.emit_json({
                    "points": X.n,
                    "base_opens": _sets(X.opens),
                    "colimit_opens": _sets(colim.opens),
                    "equal": colim == X,
                    "certificate": None if cert is None else {
                        "witness": sorted(cert.witness),
                        "closure": sorted(cert.closure),
                        "closed_in_piece": list(cert.closed_in_piece),
                    },
                })
                return
            self.write(f"base:     {_fmt_sets(X.opens)}")
            self.write(f"colimit:  {_fmt_sets(colim.opens)}")
            if cert is None:
                self.write("colimit topology equals the base topology")
            else:
                self.write(f"differs: {_fmt_set(cert.witness)} is closed in every piece, "
                           f"but its closure in the base space is {_fmt_set(cert.closure)}")
        else:
            self._tau_discrete_scan(args)

    def _tau_discrete_scan(self, args):
        rows = []
        for n in range(args.max_points + 1):
            for X in enumerate_topologies(n):
                for tau in range(1, args.max_tau + 1):
                    T = subtau_topology(X, tau)
                    refines = X.opens <= T.opens
                    for s in range(1 << n):
                        S = [i for i in range(n) if s >> i & 1]
                        lhs, rhs = tau_discrete_sides(X, S, tau)
                        rows.append((n, tau, lhs, rhs, refines))
        by_tau = {}
        for n, tau, lhs, rhs, refines in rows:
            d = by_tau.setdefault(tau, {"instances": 0, "counterexamples": 0, "forward_failures": 0,
                                        "refinement_failures": 0})
            d["instances"] += 1
            d["counterexamples"] += lhs != rhs
            d["forward_failures"] += lhs and not rhs
            d["refinement_failures"] += not refines
        total = sum(d["counterexamples"] for d in by_tau.values())
        if args.json:
            self.emit_json({"max_points": args.max_points, "max_tau": args.max_tau,
                            "by_tau": {str(k): v for k, v in sorted(by_tau.items())},
                            "counterexamples": total})
            return
        self.write("tau\tinstances\tcounterexamples\tforward_failures\trefinement_failures")
        for tau, d in sorted(by_tau.items()):
            self.write(f"{tau}\t{d['instances']}\t{d['counterexamples']}\t{d['forward_failures']}"
                       f"\t{d['refinement_failures']}")
        self.write(f"total counterexamples: {total}")

    # -- dispatch -------------------------------------------------------------

    def dispatch(self, args) -> None:
        handler = getattr(self, f"cmd_{args.command}")
        handler(args)


def _fmt_set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def _sets(family) -> list[list[int]]:
    return sorted((sorted(s) for s in family), key=lambda s: (len(s), s))


def _fmt_sets(family) -> str:
    return " ".join(_fmt_set(s) for s in _sets(family))


_DOMAIN_ERRORS = (ParseError, DecisionError, DomainError, PosetError, ValueError, OSError)


def _run_one(argv: list[str], session: Session, err: TextIO) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(str(exc).rstrip() + "\n")
        return 2
    except _HelpExit as exc:
        return exc.status
    if args.command is None:
        err.write(parser.format_usage())
        return 2
    try:
        session.dispatch(args)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except ParseError as exc:
        err.write(f"parse error: {exc}\n{exc.caret()}\n")
        return 1
    except _DOMAIN_ERRORS as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 0


def repl(session: Session, inp: TextIO, err: TextIO) -> int:
    interactive = inp.isatty()
    status = 0
    while True:
        if interactive:
            session.out.write("ord> ")
            session.out.flush()
        line = inp.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in (":q", ":quit", "quit", "exit"):
            break
        if "=" in line and not line.split("=", 1)[0].strip().startswith(("eval", "cmp", "cnf", "cf", "cshp", "homeo", "finitetop")):
            name, expr = (part.strip() for part in line.split("=", 1))
            if not name.isidentifier() or name == "w" or name.startswith("w_"):
                err.write(f"error: cannot bind {name!r}\n")
                status = 1
                continue
            try:
                session.env[name] = session.parse(expr)
            except ParseError as exc:
                err.write(f"parse error: {exc}\n")
                status = 1
                continue
            session.write(f"{name} = {render(session.env[name])}")
            continue
        try:
            argv = shlex.split(line)
        except ValueError as exc:
            err.write(f"usage error: {exc}\n")
            status = 2
            continue
        if argv and argv[0] not in ("eval", "cmp", "cnf", "cf", "cshp", "homeo", "finitetop"):
            argv = ["eval", line]
        status = _run_one(argv, session, err)
    return status


def run(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None,
        inp: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    session = Session(out)
    if not argv:
        return repl(session, inp or sys.stdin, err)
    return _run_one(argv, session, err)


def main() -> None:
    sys.exit(run())
