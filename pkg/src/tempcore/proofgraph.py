"""Resolution graph recorded during a solver run, and core extraction from it."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

MAIN = ("main",)


def loop_partition(search: int, iteration: int) -> tuple:
    return ("loop", search, iteration)


def partition_name(pid: tuple) -> str:
    return "M" if pid == MAIN else f"L{pid[1]}.{pid[2]}"


# Which premises get an edge to the conclusion, and whether the rule creates a
# vertex.  None marks a premise slot the rule does not have.
RULES = {
    "start": ((), True),
    "init-ii": ((True, True), True),
    "init-in": ((True, True), True),
    "step-nn": ((True, True), True),
    "step-nx": ((True, True), True),
    "step-xx": ((True, True), True),
    "aug1": ((True,), True),
    "aug2": ((False,), True),
    "loop-it-init-x": ((True,), True),
    "loop-it-init-n": ((True,), True),
    "loop-it-init-c": ((False, False), True),
    "loop-it-sub": ((True,), False),
    "loop-conclusion1": ((True, True), True),
    "loop-conclusion2": ((True, False), True),
}


class EdgePatternError(RuntimeError):
    pass


@dataclass
class Vertex:
    id: int
    clause: object
    partition: tuple
    rule: str
    start_index: int | None = None  # position in the starting clause list

    @property
    def is_start(self) -> bool:
        return self.start_index is not None


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    rule: str
    slot: int


@dataclass
class ResolutionGraph:
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    partitions: list = field(default_factory=lambda: [MAIN])
    _preds: dict = field(default_factory=dict, repr=False)

    def add_partition(self, pid):
        self.partitions.append(pid)

    def add_start(self, clause, index) -> int:
        v = Vertex(len(self.vertices), clause, MAIN, "start", index)
        self.vertices.append(v)
        return v.id

    def record(self, rule, premises, partition=None, clause=None, target=None):
        """Record one rule application.

        Creates a vertex for `clause` in `partition` when the rule makes one,
        otherwise adds edges into the existing vertex `target`.  Returns the
        conclusion vertex id.
        """
        pattern, makes_vertex = RULES[rule]
        if len(premises) != len(pattern):
            raise EdgePatternError(f"{rule} takes {len(pattern)} premise(s), got {len(premises)}")
        if makes_vertex:
            if clause is None or target is not None:
                raise EdgePatternError(f"{rule} creates a new vertex")
            v = Vertex(len(self.vertices), clause, partition, rule)
            self.vertices.append(v)
            dst = v.id
        else:
            if target is None:
                raise EdgePatternError(f"{rule} needs an existing target vertex")
            dst = target
        for slot, (src, wanted) in enumerate(zip(premises, pattern), 1):
            if wanted:
                if src is None:
                    raise EdgePatternError(f"{rule} premise {slot} has no vertex")
                self.edges.append(Edge(src, dst, rule, slot))
                self._preds.setdefault(dst, []).append(src)
        return dst

    def predecessors(self, vid):
        return self._preds.get(vid, ())

    def empty_vertex(self) -> int | None:
        for v in self.vertices:
            if v.partition == MAIN and v.clause.is_empty:
                return v.id
        return None

    def backward_reachable(self, root) -> set:
        seen = {root}
        work = deque([root])
        while work:
            v = work.popleft()
            for u in self.predecessors(v):
                if u not in seen:
                    seen.add(u)
                    work.append(u)
        return seen

    def edge_list(self) -> str:
        return "".join(f"{e.src} {e.rule} {e.dst}\n" for e in self.edges)


class NoEmptyClause(ValueError):
    pass


def extract_core_snf(g: ResolutionGraph) -> list[int]:
    """Indices of the starting clauses in the core, ascending.

    The core is every starting clause whose main-partition vertex is backward
    reachable from the vertex of the empty clause.
    """
    root = g.empty_vertex()
    if root is None:
        raise NoEmptyClause("graph holds no empty clause in the main partition")
    reach = g.backward_reachable(root)
    return sorted(
        g.vertices[v].start_index for v in reach
        if g.vertices[v].is_start and g.vertices[v].partition == MAIN
    )


# -- dot export -----------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: ResolutionGraph, atoms=None, highlight=None) -> str:
    """Graphviz text with one cluster per partition.

    `highlight` is a set of vertex ids (typically those backward reachable
    from the empty clause); they and the edges between them are drawn blue.
    """
    highlight = highlight or set()
    out = ["digraph resolution {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    by_part = {pid: [] for pid in g.partitions}
    for v in g.vertices:
        by_part.setdefault(v.partition, []).append(v)
    for n, pid in enumerate(g.partitions):
        name = partition_name(pid)
        out.append(f"  subgraph cluster_{n} {{")
        out.append(f"    label={_q(name)};")
        out.append("    style=filled; color=" + ('"#fde0e0"' if pid == MAIN else '"#e0f0e0"') + ";")
        for v in by_part.get(pid, []):
            label = v.clause.render(atoms) if atoms is not None else str(v.clause)
            style = ', color=blue, style="dashed,bold"' if v.id in highlight else ""
            out.append(f"    v{v.id} [label={_q(label)}{style}];")
        out.append("  }")
    for e in g.edges:
        style = ', color=blue, style="dashed,bold"' if e.src in highlight and e.dst in highlight else ""
        out.append(f"  v{e.src} -> v{e.dst} [label={_q(e.rule)}{style}];")
    out.append("}")
    return "\n".join(out) + "\n"
