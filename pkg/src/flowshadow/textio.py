"""Line-oriented text formats for posets, flows, presentations and morphisms.

Every file starts with a header line naming its kind::

    poset <name>            flow <name>                 presentation <name>
    elements a b c          states 0 1                  states 0 a 1
    rel a < b               path U : 0 -> 1             edge e : 0 -> a
                            compose p q = r             relation e.f = g.h

    morphism <name>
    state <a> -> <b>
    path <p> -> <q>

Tokens are whitespace separated.  A token starting with ``#`` begins a
comment that runs to the end of the line (so ``#`` may appear inside a
label, e.g. ``e#1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FlowShadowError, ParseError, ValidationError
from .flow import Flow
from .poset import Poset, make_poset
from .presentation import FlowPresentation, word_id

__all__ = [
    "MorphismSpec",
    "parse_text",
    "parse_input",
    "emit",
    "emit_poset",
    "emit_flow",
    "emit_presentation",
    "emit_morphism",
]

_TOKEN = re.compile(r"\S+")


@dataclass
class MorphismSpec:
    """A state map and path map as read from a morphism file; the flows it
    connects are supplied separately."""

    name: str = ""
    state_map: dict = field(default_factory=dict)
    path_map: dict = field(default_factory=dict)


def _tokens(line):
    out = []
    for m in _TOKEN.finditer(line):
        if m.group().startswith("#"):
            break
        out.append((m.group(), m.start() + 1))
    return out


class _Reader:
    def __init__(self, text, path):
        self.path = path
        self.lines = []
        for no, raw in enumerate(text.splitlines(), start=1):
            toks = _tokens(raw)
            if toks:
                self.lines.append((no, toks))

    def error(self, msg, no=None, col=None):
        return ParseError(msg, self.path, no, col)


def _expect(reader, no, toks, shape):
    """``shape`` is a list where str entries are literal tokens and None a
    free token; returns the free tokens."""
    if len(toks) != len(shape):
        raise reader.error(f"expected {len(shape)} tokens, got {len(toks)}", no, toks[0][1])
    free = []
    for (tok, col), want in zip(toks, shape):
        if want is None:
            free.append(tok)
        elif tok != want:
            raise reader.error(f"expected {want!r}, got {tok!r}", no, col)
    return free


def _parse_poset(reader, name, body):
    elements, pairs = [], []
    for no, toks in body:
        kw = toks[0][0]
        if kw == "elements":
            elements.extend(t for t, _ in toks[1:])
        elif kw == "rel":
            a, b = _expect(reader, no, toks, ["rel", None, "<", None])
            pairs.append((a, b))
        else:
            raise reader.error(f"unknown poset declaration {kw!r}", no, toks[0][1])
    return make_poset(elements, pairs, name=name)


def _parse_flow(reader, name, body):
    states, paths, comp = [], {}, {}
    for no, toks in body:
        kw = toks[0][0]
        if kw == "states":
            states.extend(t for t, _ in toks[1:])
        elif kw == "path":
            p, a, b = _expect(reader, no, toks, ["path", None, ":", None, "->", None])
            if p in paths:
                raise reader.error(f"duplicate path id {p!r}", no, toks[1][1])
            paths[p] = (a, b)
        elif kw == "compose":
            p, q, r = _expect(reader, no, toks, ["compose", None, None, "=", None])
            if (p, q) in comp and comp[(p, q)] != r:
                raise reader.error(f"conflicting composite for {p} {q}", no, toks[1][1])
            comp[(p, q)] = r
        else:
            raise reader.error(f"unknown flow declaration {kw!r}", no, toks[0][1])
    return Flow(frozenset(states), paths, comp, name)


def _parse_presentation(reader, name, body):
    states, edges, rels = [], {}, set()
    for no, toks in body:
        kw = toks[0][0]
        if kw == "states":
            states.extend(t for t, _ in toks[1:])
        elif kw == "edge":
            e, a, b = _expect(reader, no, toks, ["edge", None, ":", None, "->", None])
            if "." in e:
                raise reader.error(f"edge id {e!r} may not contain '.'", no, toks[1][1])
            if e in edges:
                raise reader.error(f"duplicate edge id {e!r}", no, toks[1][1])
            edges[e] = (a, b)
        elif kw == "relation":
            w1, w2 = _expect(reader, no, toks, ["relation", None, "=", None])
            rels.add((tuple(w1.split(".")), tuple(w2.split("."))))
        else:
            raise reader.error(f"unknown presentation declaration {kw!r}", no, toks[0][1])
    return FlowPresentation(frozenset(states), edges, frozenset(rels), name)


def _parse_morphism(reader, name, body):
    spec = MorphismSpec(name)
    for no, toks in body:
        kw = toks[0][0]
        if kw in ("state", "path"):
            a, b = _expect(reader, no, toks, [kw, None, "->", None])
            target = spec.state_map if kw == "state" else spec.path_map
            if a in target:
                raise reader.error(f"{kw} {a!r} mapped twice", no, toks[1][1])
            target[a] = b
        else:
            raise reader.error(f"unknown morphism declaration {kw!r}", no, toks[0][1])
    return spec


_PARSERS = {
    "poset": _parse_poset,
    "flow": _parse_flow,
    "presentation": _parse_presentation,
    "morphism": _parse_morphism,
}


def parse_text(text: str, path=None):
    reader = _Reader(text, path)
    if not reader.lines:
        raise reader.error("empty input")
    no, toks = reader.lines[0]
    kind = toks[0][0]
    if kind not in _PARSERS:
        raise reader.error(f"unknown header {kind!r}", no, toks[0][1])
    if len(toks) > 2:
        raise reader.error("header takes at most one name", no, toks[2][1])
    name = toks[1][0] if len(toks) == 2 else ""
    try:
        return _PARSERS[kind](reader, name, reader.lines[1:])
    except ParseError:
        raise
    except FlowShadowError as exc:
        raise ValidationError(exc, path) from exc


def parse_input(path):
    """Read a poset, flow, presentation or morphism file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from exc
    return parse_text(text, str(path))


# -- emitters -----------------------------------------------------------------


def emit_poset(P: Poset) -> str:
    lines = [f"poset {P.name}".rstrip(), "elements " + " ".join(P.labels)]
    lines += [f"rel {a} < {b}" for a, b in P.covers]
    return "\n".join(lines) + "\n"


def emit_flow(X: Flow) -> str:
    lines = [f"flow {X.name}".rstrip(), ("states " + " ".join(X.labels)).rstrip()]
    lines += [f"path {p} : {X.source(p)} -> {X.target(p)}" for p in X.path_ids]
    lines += [f"compose {p} {q} = {r}" for (p, q), r in sorted(X.compose.items())]
    return "\n".join(lines) + "\n"


def emit_presentation(pr: FlowPresentation) -> str:
    lines = [f"presentation {pr.name}".rstrip(), ("states " + " ".join(sorted(pr.states))).rstrip()]
    lines += [f"edge {e} : {s} -> {t}" for e, (s, t) in sorted(pr.edges.items())]
    lines += [f"relation {word_id(a)} = {word_id(b)}" for a, b in pr.sorted_relations()]
    return "\n".join(lines) + "\n"


def emit_morphism(state_map, path_map, name="") -> str:
    lines = [f"morphism {name}".rstrip()]
    lines += [f"state {a} -> {b}" for a, b in sorted(state_map.items())]
    lines += [f"path {p} -> {q}" for p, q in sorted(path_map.items())]
    return "\n".join(lines) + "\n"


def emit(obj) -> str:
    if isinstance(obj, Poset):
        return emit_poset(obj)
    if isinstance(obj, Flow):
        return emit_flow(obj)
    if isinstance(obj, FlowPresentation):
        return emit_presentation(obj)
    if isinstance(obj, MorphismSpec):
        return emit_morphism(obj.state_map, obj.path_map, obj.name)
    if hasattr(obj, "state_map") and hasattr(obj, "path_map"):
        return emit_morphism(obj.state_map, obj.path_map)
    raise TypeError(f"cannot emit {type(obj).__name__}")
