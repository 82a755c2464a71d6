"""Flow-control graphs as cyclic graphs: augmentation with a back edge,
simple-cycle enumeration, cyclomatic counts, and execution-path traces.

A well-formed flow graph has a single entry (no incoming edges) and a
single exit (no outgoing edges).  Adding the one back edge exit->entry
turns every entry->exit execution path into a simple cycle, so execution
paths and cycles are interchangeable from then on.  The decision-doubling
law (each series decision point doubles the cycle count) is checked
empirically on chains of binary diamonds; nothing here claims a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import RankitError, UnknownFunction


class AlreadyAugmented(RankitError):
    """The exit->entry back edge is already present."""


class NotStronglyConnected(RankitError):
    """Cyclomatic count needs one strongly connected component."""


class DepthTooLarge(RankitError):
    """Doubling check depth exceeds the enumeration guard."""


DOUBLING_MAX_DEPTH = 16


@dataclass(frozen=True)
class FlowGraph:
    vertices: tuple
    edges: tuple
    entry: int
    exit: int
    augmented: bool = False

    def __post_init__(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        for u, v in self.edges:
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u}, {v}) references unknown vertex")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges")
        if self.entry not in vset or self.exit not in vset:
            raise ValueError("entry/exit must be vertices")
        if not self.augmented:
            self._check_single_entry_exit()
        self._check_all_on_path()

    def _check_single_entry_exit(self) -> None:
        incoming = {v for _, v in self.edges}
        outgoing = {u for u, _ in self.edges}
        sources = [v for v in self.vertices if v not in incoming]
        sinks = [v for v in self.vertices if v not in outgoing]
        if sources != [self.entry] or sinks != [self.exit]:
            raise ValueError(
                f"need exactly one entry {sources} and one exit {sinks}")

    def _check_all_on_path(self) -> None:
        # Every vertex must be reachable from entry and must reach exit
        # (ignoring the back edge, which adds no new execution paths).
        fwd = _reach(self.successors(skip_back_edge=True), self.entry)
        back = _reach(self.predecessors(skip_back_edge=True), self.exit)
        stranded = set(self.vertices) - (fwd & back)
        if stranded:
            raise ValueError(f"vertices {sorted(stranded)} lie on no entry-exit path")

    def successors(self, skip_back_edge: bool = False) -> dict:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            if skip_back_edge and (u, v) == (self.exit, self.entry):
                continue
            adj[u].append(v)
        for v in adj:
            adj[v].sort()
        return adj

    def predecessors(self, skip_back_edge: bool = False) -> dict:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            if skip_back_edge and (u, v) == (self.exit, self.entry):
                continue
            adj[v].append(u)
        return adj


def _reach(adj: dict, start) -> set:
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def augment(g: FlowGraph) -> FlowGraph:
    """Add the single exit->entry back edge, making the graph cyclic."""
    back = (g.exit, g.entry)
    if back in g.edges:
        raise AlreadyAugmented(f"back edge {back} already present")
    return FlowGraph(vertices=g.vertices, edges=g.edges + (back,),
                     entry=g.entry, exit=g.exit, augmented=True)


def enumerate_cycles(g: FlowGraph) -> tuple:
    """All simple cycles through the back edge, lexicographic.

    Each cycle is one entry->exit execution path closed by the back edge
    and is reported as its vertex sequence starting at the entry.
    """
    if not g.augmented:
        raise ValueError("augment the graph before enumerating cycles")
    adj = g.successors(skip_back_edge=True)
    cycles = []
    path = [g.entry]
    on_path = {g.entry}

    def walk(v) -> None:
        if v == g.exit:
            cycles.append(tuple(path))
            return
        for w in adj[v]:
            if w not in on_path:
                path.append(w)
                on_path.add(w)
                walk(w)
                path.pop()
                on_path.remove(w)

    walk(g.entry)
    return tuple(sorted(cycles))


def cyclomatic_number(g: FlowGraph) -> int:
    """E - V + 1 for the augmented, strongly connected graph."""
    if not g.augmented:
        raise ValueError("augment the graph before counting")
    fwd = _reach(g.successors(), g.entry)
    back = _reach(g.predecessors(), g.entry)
    if fwd != set(g.vertices) or back != set(g.vertices):
        raise NotStronglyConnected("graph is not one strongly connected component")
    return len(g.edges) - len(g.vertices) + 1


def diamond_chain(depth: int) -> FlowGraph:
    """Series chain of ``depth`` binary diamonds; depth 0 is a plain edge.

    Each diamond joins into the decision vertex of the next, so the graph
    has 3*depth + 2 vertices and 4*depth + 1 edges.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth == 0:
        return FlowGraph(vertices=(0, 1), edges=((0, 1),), entry=0, exit=1)
    edges = [(0, 1)]
    for i in range(depth):
        decision, left, right, join = 1 + 3 * i, 2 + 3 * i, 3 + 3 * i, 4 + 3 * i
        edges += [(decision, left), (decision, right), (left, join), (right, join)]
    n = 3 * depth + 2
    return FlowGraph(vertices=tuple(range(n)), edges=tuple(edges),
                     entry=0, exit=n - 1)


def doubling_check(depth: int) -> tuple[int, int]:
    """Enumerated cycle count of a depth-d diamond chain next to 2**d."""
    if depth > DOUBLING_MAX_DEPTH:
        raise DepthTooLarge(f"depth {depth} exceeds guard {DOUBLING_MAX_DEPTH}")
    graph = augment(diamond_chain(depth))
    return len(enumerate_cycles(graph)), 2 ** depth


def single_branch_graph() -> FlowGraph:
    """Six-vertex flow graph of one if/else with a statement per arm."""
    return FlowGraph(
        vertices=(1, 2, 3, 4, 5, 6),
        edges=((1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (5, 6)),
        entry=1, exit=6)


@dataclass(frozen=True)
class ExecutionTrace:
    """The cycle a branching function's execution followed for one input."""

    input: int
    path: tuple


@dataclass(frozen=True)
class Instrumented:
    graph: FlowGraph
    branch: Callable[[int], int]  # input -> index into the cycle list


def _collatz_branch(x: int) -> int:
    return 0 if x % 2 == 0 else 1


# Redirected counterparts of catalog functions: each instrumented function
# has exactly one trace wrapper, keeping the two sets in bijection.
INSTRUMENTED: dict[str, Instrumented] = {
    "collatz": Instrumented(graph=single_branch_graph(), branch=_collatz_branch),
}


def _instrumented_cycles(fid: str) -> tuple:
    if fid not in _CYCLE_CACHE:
        _CYCLE_CACHE[fid] = enumerate_cycles(augment(INSTRUMENTED[fid].graph))
    return _CYCLE_CACHE[fid]


_CYCLE_CACHE: dict[str, tuple] = {}


def trace(fid: str, x: int) -> ExecutionTrace:
    """Execution path taken by the instrumented function on input x."""
    try:
        inst = INSTRUMENTED[fid]
    except KeyError:
        raise UnknownFunction(f"no instrumented flow graph for {fid!r}") from None
    return ExecutionTrace(input=x, path=_instrumented_cycles(fid)[inst.branch(x)])


# --- edge-list file format ------------------------------------------------

def parse_graph(text: str) -> FlowGraph:
    """Edge-list format: ``entry k`` and ``exit k`` headers, then ``u v`` lines."""
    entry = exit_ = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "entry" and len(parts) == 2:
            entry = int(parts[1])
        elif parts[0] == "exit" and len(parts) == 2:
            exit_ = int(parts[1])
        elif len(parts) == 2:
            edges.append((int(parts[0]), int(parts[1])))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    if entry is None or exit_ is None:
        raise ValueError("graph file needs 'entry k' and 'exit k' headers")
    vertices = sorted({v for e in edges for v in e} | {entry, exit_})
    return FlowGraph(vertices=tuple(vertices), edges=tuple(edges),
                     entry=entry, exit=exit_)


def format_graph(g: FlowGraph) -> str:
    lines = [f"entry {g.entry}", f"exit {g.exit}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
