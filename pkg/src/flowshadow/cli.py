"""Command line front end.

Exit status: 0 when a verdict was computed, 1 for a negative verdict under
``--strict``, 2 on usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import textio
from .branchmerge import branching_space, germ_counts, merging_space
from .errors import FlowShadowError, ParseError, ValidationError
from .flow import Flow, FlowMorphism, final_states, flow_from_poset, initial_states
from .poset import Poset, PosetMorphism, class_T_check
from .presentation import FlowPresentation, realize, subdivide_edge
from .thomotopy import (
    generalized_generator,
    is_full_directed_ball,
    subdivision_factorization,
    tdi_shadow,
)
from .zigzag import DEFAULT_DEPTH, DEFAULT_SIZE, bfs_equivalent, pasiso_check

VERBS = (
    "check-flow",
    "branch",
    "merge",
    "tdi",
    "ball",
    "subdivide",
    "realize",
    "zigzag",
    "pasiso",
    "class-t",
)


@dataclass
class Command:
    verb: str
    inputs: list = field(default_factory=list)
    options: dict = field(default_factory=dict)


def _b(v: bool) -> str:
    return "true" if v else "false"


def _load(path, kinds):
    obj = textio.parse_input(path)
    if not isinstance(obj, kinds):
        names = "/".join(k.__name__ for k in kinds)
        raise ParseError(f"expected a {names} file, got {type(obj).__name__}", str(path))
    return obj


def _load_flow(path) -> tuple:
    """Any of poset, flow or presentation, as a flow; also returns the
    parsed object for ``--emit``."""
    obj = _load(path, (Poset, Flow, FlowPresentation))
    if isinstance(obj, Poset):
        return flow_from_poset(obj), obj
    if isinstance(obj, FlowPresentation):
        return realize(obj), obj
    return obj, obj


def _wrap(path, fn, *args):
    try:
        return fn(*args)
    except FlowShadowError as exc:
        raise ValidationError(exc, str(path)) from exc


def _cmd_check_flow(cmd, out, emitted):
    X, obj = _load_flow(cmd.inputs[0])
    emitted.append(obj)
    out.append(
        f"flow {X.name or '-'}: states={len(X.states)} paths={len(X.paths)} "
        f"composites={len(X.compose)} loopless={_b(X.is_loopless())}"
    )
    out.append("initial: " + " ".join(sorted(initial_states(X))))
    out.append("final: " + " ".join(sorted(final_states(X))))
    return True


def _germ_report(cmd, out, emitted, side):
    X, obj = _load_flow(cmd.inputs[0])
    emitted.append(obj)
    for a, (b, m) in germ_counts(X).items():
        out.append(f"state {a}: branch={b} merge={m}")
    q = branching_space(X) if side == "branching" else merging_space(X)
    for rep, members in q.classes.items():
        out.append(f"{side} class {rep}: " + " ".join(sorted(members)))
    return True


def _load_morphism(cmd):
    src, a = _load_flow(cmd.inputs[0])
    tgt, b = _load_flow(cmd.inputs[1])
    spec = _load(cmd.inputs[2], (textio.MorphismSpec,))
    f = _wrap(cmd.inputs[2], FlowMorphism, src, tgt, spec.state_map, spec.path_map)
    return f, [a, b, spec]


def _cmd_tdi(cmd, out, emitted):
    f, objs = _load_morphism(cmd)
    emitted.extend(objs)
    report = tdi_shadow(f)
    out.append(report.format())
    for z, (b, m) in report.singleton_germs.items():
        out.append(f"new state {z}: branch={b} merge={m}")
    data = subdivision_factorization(f)
    if data is None:
        out.append("subdivision: none")
    else:
        form, g, h = data
        parts = " ".join(f"{p}={n}" for p, n in sorted(form.subdivided_edges.items()))
        out.append(f"subdivision: {parts}".rstrip())
        composite_ok = g.then(h).path_map == f.path_map
        out.append(f"factorization: composite_ok={_b(composite_ok)} h_bijective=true")
    return report.verdict


def _cmd_ball(cmd, out, emitted):
    X, obj = _load_flow(cmd.inputs[0])
    emitted.append(obj)
    verdict = is_full_directed_ball(X)
    out.append(f"full_directed_ball: {_b(verdict)}")
    return verdict


def _cmd_subdivide(cmd, out, emitted):
    pr = _load(cmd.inputs[0], (FlowPresentation,))
    emitted.append(pr)
    new, f = _wrap(cmd.inputs[0], subdivide_edge, pr, cmd.options["edge"], cmd.options["n"])
    out.append(textio.emit_presentation(new).rstrip("\n"))
    out.append(textio.emit_morphism(f.state_map, f.path_map, "induced").rstrip("\n"))
    return True


def _cmd_realize(cmd, out, emitted):
    pr = _load(cmd.inputs[0], (FlowPresentation,))
    emitted.append(pr)
    out.append(textio.emit_flow(realize(pr)).rstrip("\n"))
    return True


def _cmd_zigzag(cmd, out, emitted):
    P = _load(cmd.options["from"], (Poset,))
    Q = _load(cmd.options["to"], (Poset,))
    emitted.extend([P, Q])
    cert = _wrap(cmd.options["from"], bfs_equivalent, P, Q, cmd.options["depth"], cmd.options["size"])
    out.append(cert.format())
    return cert.verdict == "reachable"


def _cmd_pasiso(cmd, out, emitted):
    cert = _wrap(None, pasiso_check, cmd.options["n"], cmd.options["depth"], cmd.options["size"])
    out.append(cert.format())
    return True


def _cmd_class_t(cmd, out, emitted):
    P1 = _load(cmd.inputs[0], (Poset,))
    P2 = _load(cmd.inputs[1], (Poset,))
    spec = _load(cmd.inputs[2], (textio.MorphismSpec,))
    emitted.extend([P1, P2, spec])
    f = _wrap(cmd.inputs[2], PosetMorphism, P1, P2, spec.state_map)
    verdict = class_T_check(f)
    out.append(f"class_t: {_b(verdict)}")
    if verdict:
        g = generalized_generator(f)
        out.append(f"generator: states={len(g.source.states)}->{len(g.target.states)} "
                   f"paths={len(g.source.paths)}->{len(g.target.paths)}")
        out.append(textio.emit_morphism(g.state_map, g.path_map, "generator").rstrip("\n"))
    return verdict


_DISPATCH = {
    "check-flow": _cmd_check_flow,
    "branch": lambda c, o, e: _germ_report(c, o, e, "branching"),
    "merge": lambda c, o, e: _germ_report(c, o, e, "merging"),
    "tdi": _cmd_tdi,
    "ball": _cmd_ball,
    "subdivide": _cmd_subdivide,
    "realize": _cmd_realize,
    "zigzag": _cmd_zigzag,
    "pasiso": _cmd_pasiso,
    "class-t": _cmd_class_t,
}


def run(cmd: Command) -> tuple:
    """Execute a command; returns ``(exit_status, report_text)``."""
    out: list = []
    emitted: list = []
    try:
        verdict = _DISPATCH[cmd.verb](cmd, out, emitted)
    except (ParseError, ValidationError) as exc:
        return 2, f"error: {exc}\n"
    except FlowShadowError as exc:
        return 2, f"error: {type(exc).__name__}: {exc}\n"
    text = ""
    if cmd.options.get("emit"):
        text += "".join(textio.emit(o) + "---\n" for o in emitted)
    text += "\n".join(out) + "\n"
    status = 1 if cmd.options.get("strict") and not verdict else 0
    return status, text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true", help="exit 1 on negative verdicts")
    common.add_argument("--emit", action="store_true", help="print parsed inputs before the report")
    common.add_argument("--format", choices=["text"], default="text")

    parser = argparse.ArgumentParser(
        prog="flowshadow", description="Finite flows, T-homotopy checks and zig-zag search."
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, help_ in [
        ("check-flow", "validate a flow, presentation or poset file"),
        ("branch", "branching germ counts per state"),
        ("merge", "merging germ counts per state"),
        ("ball", "full directed ball test"),
    ]:
        p = sub.add_parser(verb, parents=[common], help=help_)
        p.add_argument("file")
    p = sub.add_parser("tdi", parents=[common], help="T-homotopy conditions of a morphism")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("morphism")
    p = sub.add_parser("subdivide", parents=[common], help="subdivide an edge of a presentation")
    p.add_argument("file")
    p.add_argument("--edge", required=True)
    p.add_argument("--n", type=int, default=2)
    p = sub.add_parser("realize", parents=[common], help="realize a presentation as a flow")
    p.add_argument("file")
    p = sub.add_parser("zigzag", parents=[common], help="bounded zig-zag search between posets")
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p = sub.add_parser("pasiso", parents=[common], help="cube versus segment certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p = sub.add_parser("class-t", parents=[common], help="class-T membership of a poset map")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("morphism")
    return parser


def command_from_args(ns: argparse.Namespace) -> Command:
    opts = {"strict": ns.strict, "emit": ns.emit, "format": ns.format}
    inputs = []
    if ns.verb in ("check-flow", "branch", "merge", "ball", "realize"):
        inputs = [ns.file]
    elif ns.verb in ("tdi", "class-t"):
        inputs = [ns.source, ns.target, ns.morphism]
    elif ns.verb == "subdivide":
        inputs = [ns.file]
        opts.update(edge=ns.edge, n=ns.n)
    elif ns.verb == "zigzag":
        opts.update({"from": ns.from_, "to": ns.to, "depth": ns.depth, "size": ns.size})
    elif ns.verb == "pasiso":
        opts.update(n=ns.n, depth=ns.depth, size=ns.size)
    return Command(ns.verb, inputs, opts)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    status, text = run(command_from_args(ns))
    stream = sys.stderr if status == 2 else sys.stdout
    stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
