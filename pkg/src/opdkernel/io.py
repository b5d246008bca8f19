"""Text format for instances and kernels.

    c comment
    p opd <n> <m>
    k <budget>            (optional)
    e <u> <v>             (m lines, labels 1..n)

Written kernels are relabeled to 1..n'; `c label <new> <old>` lines record
the mapping. Trace lines (`c trace dv u`, `c trace de u v`,
`c trace ce u v -> w`) use the labels of the input graph.
"""

from __future__ import annotations

from .errors import InputFormatError
from .graph import ContractEdge, DeleteEdge, DeleteVertex, Graph, MinorTrace


def parse_instance(text: str) -> tuple[Graph, int | None]:
    g = None
    k = None
    expected = 0
    seen_edges = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "p":
                if g is not None or len(parts) != 4 or parts[1] != "opd":
                    raise InputFormatError("expected a single header 'p opd <n> <m>'")
                n, expected = int(parts[2]), int(parts[3])
                if n < 0 or expected < 0:
                    raise InputFormatError("negative size in header")
                g = Graph(vertices=range(1, n + 1))
            elif parts[0] == "k":
                if len(parts) != 2 or k is not None:
                    raise InputFormatError("expected a single line 'k <budget>'")
                k = int(parts[1])
                if k < 0:
                    raise InputFormatError("budget must be non-negative")
            elif parts[0] == "e":
                if g is None:
                    raise InputFormatError("edge before header")
                if len(parts) != 3:
                    raise InputFormatError("expected 'e <u> <v>'")
                u, v = int(parts[1]), int(parts[2])
                if u not in g or v not in g:
                    raise InputFormatError(f"edge label out of range 1..{g.n}")
                if u == v:
                    raise InputFormatError("self-loop")
                if g.has_edge(u, v):
                    raise InputFormatError(f"duplicate edge {u} {v}")
                g.add_edge(u, v)
                seen_edges += 1
            else:
                raise InputFormatError(f"unknown line type {parts[0]!r}")
        except ValueError as exc:
            raise InputFormatError(f"line {lineno}: {exc}") from None
    if g is None:
        raise InputFormatError("missing header 'p opd <n> <m>'")
    if seen_edges != expected:
        raise InputFormatError(f"header announces {expected} edges, found {seen_edges}")
    return g, k


def read_instance(path: str) -> tuple[Graph, int | None]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputFormatError(str(exc)) from None
    return parse_instance(text)


def format_step(step) -> str:
    if isinstance(step, DeleteVertex):
        return f"dv {step.v}"
    if isinstance(step, DeleteEdge):
        return f"de {step.u} {step.v}"
    return f"ce {step.u} {step.v} -> {step.into}"


def parse_step(text: str):
    parts = text.split()
    try:
        if parts[0] == "dv" and len(parts) == 2:
            return DeleteVertex(int(parts[1]))
        if parts[0] == "de" and len(parts) == 3:
            return DeleteEdge(int(parts[1]), int(parts[2]))
        if parts[0] == "ce" and len(parts) == 5 and parts[3] == "->":
            return ContractEdge(int(parts[1]), int(parts[2]), int(parts[4]))
    except (ValueError, IndexError):
        pass
    raise InputFormatError(f"bad trace step {text!r}")


def parse_trace(text: str) -> MinorTrace:
    trace = MinorTrace()
    for raw in text.splitlines():
        parts = raw.split(maxsplit=2)
        if len(parts) == 3 and parts[:2] == ["c", "trace"]:
            trace.steps.append(parse_step(parts[2]))
    return trace


def parse_labels(text: str) -> dict[int, int]:
    """Map from written labels back to the original ones."""
    out = {}
    for raw in text.splitlines():
        parts = raw.split()
        if len(parts) == 4 and parts[:2] == ["c", "label"]:
            out[int(parts[2])] = int(parts[3])
    return out


def format_instance(g: Graph, k: int | None = None, comments=(), trace: MinorTrace | None = None) -> str:
    order = g.vertices()
    new = {v: i for i, v in enumerate(order, 1)}
    lines = [f"c {c}" for c in comments]
    if any(new[v] != v for v in order):
        lines.extend(f"c label {new[v]} {v}" for v in order)
    if trace is not None:
        lines.extend(f"c trace {format_step(s)}" for s in trace)
    lines.append(f"p opd {g.n} {g.m}")
    if k is not None:
        lines.append(f"k {k}")
    lines.extend(f"e {new[u]} {new[v]}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def format_result(result) -> str:
    """A kernelization result: verdict, rule counts, trace, then the kernel."""
    comments = [f"verdict {result.verdict}"]
    comments += [f"rule-fires {name} {count}" for name, count in sorted(result.stats.get("rule_fires", {}).items())]
    return format_instance(result.graph, result.k, comments, result.trace)
