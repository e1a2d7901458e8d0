"""Reading and writing instances.

Native format, one statement per line, whitespace-separated tokens::

    vertex <name>
    edge <src> <dst> <+|-|?>      # ? = unlabeled edge
    obs <name> <+|->
    input <name>

A token starting with ``#`` starts a comment that runs to the end of the line.
Vertices referenced by ``edge``/``obs``/``input`` are declared implicitly.
"""

from __future__ import annotations

from typing import Iterable

from .model import (
    ConflictingObservation,
    DuplicateEdge,
    Instance,
    Mic,
    Sign,
    ValidatedInstance,
    validate,
)

_ARITY = {"vertex": 1, "edge": 3, "obs": 2, "input": 1}


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class BadSign(ParseError):
    pass


def _tokens(line: str) -> list[str]:
    out = []
    for tok in line.split():
        if tok.startswith("#"):
            break
        out.append(tok)
    return out


def _check_name(name: str, lineno: int) -> str:
    if '"' in name:
        raise ParseError(f"vertex names may not contain '\"': {name}", lineno)
    return name


def parse_instance(text: str) -> ValidatedInstance:
    """Parse native-format text; errors carry the offending line number."""
    raw = Instance()
    edges_seen: dict[tuple[str, str], int] = {}
    obs_seen: dict[str, tuple[Sign, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        kw, args = toks[0], toks[1:]
        if kw not in _ARITY:
            raise ParseError(f"unknown statement {kw!r}", lineno)
        if len(args) != _ARITY[kw]:
            raise ParseError(f"{kw} expects {_ARITY[kw]} argument(s), got {len(args)}", lineno)
        for name in args[: 2 if kw == "edge" else 1]:
            _check_name(name, lineno)
        if kw == "vertex":
            raw.declare(args[0])
        elif kw == "edge":
            src, dst, tok = args
            if tok == "?":
                sign = None
            elif tok in ("+", "-"):
                sign = Sign.parse(tok)
            else:
                raise BadSign(f"bad edge sign {tok!r} (expected +, - or ?)", lineno)
            if (src, dst) in edges_seen:
                raise DuplicateEdge(
                    f"line {lineno}: duplicate edge {src} -> {dst} "
                    f"(first on line {edges_seen[src, dst]})",
                    (src, dst),
                )
            edges_seen[src, dst] = lineno
            raw.add_edge(src, dst, sign)
        elif kw == "obs":
            name, tok = args
            if tok not in ("+", "-"):
                raise BadSign(f"bad observation sign {tok!r} (expected + or -)", lineno)
            sign = Sign.parse(tok)
            prev = obs_seen.get(name)
            if prev is not None and prev[0] is not sign:
                raise ConflictingObservation(
                    f"line {lineno}: conflicting observation for {name} (line {prev[1]})", name
                )
            obs_seen[name] = (sign, lineno)
            raw.observe(name, sign)
        else:
            raw.add_input(args[0])
    return validate(raw)


def read_instance(path) -> ValidatedInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(inst) -> str:
    """Serialize in canonical order: vertices, edges, observations, inputs."""
    inst = validate(inst)
    names = inst.names
    lines = [f"vertex {name}" for name in names]
    for s, d, sign in inst.edges:
        tok = "?" if not sign else Sign(sign).symbol
        lines.append(f"edge {names[s]} {names[d]} {tok}")
    lines += [f"obs {names[v]} {Sign(s).symbol}" for v, s in enumerate(inst.obs) if s]
    lines += [f"input {names[v]}" for v in range(inst.n) if inst.is_input[v]]
    return "".join(line + "\n" for line in lines)


def export_asp_facts(inst) -> str:
    """Ground facts for the vertex/edge/observedV/observedE/input predicates.

    Signs are rendered as 1 and -1, constants as double-quoted vertex names.
    """
    inst = validate(inst)
    q = [f'"{name}"' for name in inst.names]
    lines = [f"vertex({q[v]})." for v in range(inst.n)]
    lines += [f"edge({q[s]},{q[d]})." for s, d, _ in inst.edges]
    lines += [f"observedV({q[v]},{s})." for v, s in enumerate(inst.obs) if s]
    lines += [f"observedE({q[s]},{q[d]},{sign})." for s, d, sign in inst.edges if sign]
    lines += [f"input({q[v]})." for v in range(inst.n) if inst.is_input[v]]
    return "".join(line + "\n" for line in lines)


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\") + '"'


def export_dot(inst, mics: Iterable[Mic] = (), merged=None) -> str:
    """Graphviz rendering of the instance, highlighting MIC members.

    Activations get normal arrowheads, inhibitions tee heads, unlabeled edges
    are dashed. Observed increases are light gray, decreases black. When
    `merged` (a `MicGraph`) is given, its vertices are grouped in a cluster.
    """
    inst = validate(inst)
    mics = list(mics)
    members = {name for mic in mics for name in mic.members}
    if inst.n == 0 and not mics:
        return "digraph {\n}\n"
    names = inst.names
    out = ["digraph {", "  node [shape=ellipse];"]
    for v, name in enumerate(names):
        styles = []
        attrs = []
        if inst.obs[v] == 1:
            styles.append("filled")
            attrs.append("fillcolor=lightgray")
        elif inst.obs[v] == -1:
            styles.append("filled")
            attrs += ["fillcolor=black", "fontcolor=white"]
        if name in members:
            styles.append("bold")
            attrs.append("penwidth=2")
        elif inst.is_input[v]:
            styles.append("dotted")
        if styles:
            attrs.insert(0, f'style="{",".join(styles)}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        out.append(f"  {_dot_id(name)}{suffix};")
    for s, d, sign in inst.edges:
        if sign == 1:
            attr = "arrowhead=normal"
        elif sign == -1:
            attr = "arrowhead=tee"
        else:
            attr = "arrowhead=normal, style=dashed"
        out.append(f"  {_dot_id(names[s])} -> {_dot_id(names[d])} [{attr}];")
    if merged is not None and merged.vertices:
        out.append("  subgraph cluster_mics {")
        out.append('    label="merged MICs";')
        out.append("    style=rounded;")
        for name in merged.vertices:
            out.append(f"    {_dot_id(name)};")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"
