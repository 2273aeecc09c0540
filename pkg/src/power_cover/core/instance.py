"""
Instance and solution data model for power-cover.

A DPVC instance is a simple graph on vertices ``0..n-1`` whose edges carry one
demand per endpoint. A PVC instance is the symmetric special case.
"""

import logging
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, Field, PrivateAttr, field_validator, model_validator

logger = logging.getLogger(__name__)


class InstanceFormatError(ValueError):
    """Raised when an instance or solution file cannot be parsed."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class Edge(NamedTuple):
    """An edge ``(u, v)`` with the demand ``w_uv`` on u's side and ``w_vu`` on v's side."""

    u: int
    v: int
    w_uv: int
    w_vu: int

    def demand_of(self, x: int) -> int:
        """Return the demand on endpoint ``x``'s side."""
        return self.w_uv if x == self.u else self.w_vu

    def other(self, x: int) -> int:
        """Return the endpoint opposite to ``x``."""
        return self.v if x == self.u else self.u


class Incidence(NamedTuple):
    """One adjacency entry seen from a vertex: neighbor, own demand, neighbor's demand."""

    other: int
    own: int
    theirs: int


class DpvcInstance(BaseModel):
    """A validated Directed Power Vertex Cover instance."""

    n: int = Field(ge=0)
    edges: List[Edge] = Field(default_factory=list)

    _adjacency: List[List[Incidence]] = PrivateAttr(default_factory=list)

    @model_validator(mode="after")
    def _check_graph(self) -> "DpvcInstance":
        seen = set()
        for u, v, w_uv, w_vu in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"vertex out of range in edge ({u}, {v}) for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if w_uv < 1 or w_vu < 1:
                raise ValueError(f"demand < 1 on edge ({u}, {v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        return self

    def model_post_init(self, __context: object) -> None:
        adjacency: List[List[Incidence]] = [[] for _ in range(self.n)]
        for u, v, w_uv, w_vu in self.edges:
            adjacency[u].append(Incidence(v, w_uv, w_vu))
            adjacency[v].append(Incidence(u, w_vu, w_uv))
        self._adjacency = adjacency

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "DpvcInstance":
        """
        Build an instance from 3-tuples ``(u, v, w)`` or 4-tuples ``(u, v, w_uv, w_vu)``.

        Args:
            n: Vertex count
            edges: Edge tuples with 0-indexed endpoints

        Returns:
            Validated instance
        """
        built = []
        for item in edges:
            if len(item) == 3:
                u, v, w = item
                built.append(Edge(u, v, w, w))
            elif len(item) == 4:
                built.append(Edge(*item))
            else:
                raise ValueError(f"edge tuple must have 3 or 4 entries, got {item!r}")
        return cls(n=n, edges=built)

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self.edges)

    @property
    def symmetric(self) -> bool:
        """True iff every edge has equal demands on both sides (a PVC instance)."""
        return all(e.w_uv == e.w_vu for e in self.edges)

    @property
    def max_demand(self) -> int:
        """Largest demand M over all edges, 0 on an edgeless instance."""
        return max((max(e.w_uv, e.w_vu) for e in self.edges), default=0)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adjacency), default=0)

    def incident(self, v: int) -> List[Incidence]:
        """Adjacency entries of ``v`` in edge order."""
        return self._adjacency[v]

    def neighbors(self, v: int) -> List[int]:
        return [entry.other for entry in self._adjacency[v]]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def vertex_max_demand(self, v: int) -> int:
        """M(v): the largest demand on v's side, 0 for an isolated vertex."""
        return max((entry.own for entry in self._adjacency[v]), default=0)

    def demands(self) -> List[int]:
        """Sorted distinct demand values."""
        return sorted({w for e in self.edges for w in (e.w_uv, e.w_vu)})

    def relabel(self, permutation: Sequence[int]) -> "DpvcInstance":
        """Return the instance with vertex ``v`` renamed to ``permutation[v]``."""
        if sorted(permutation) != list(range(self.n)):
            raise ValueError("relabeling must be a permutation of the vertex set")
        return DpvcInstance(
            n=self.n,
            edges=[Edge(permutation[u], permutation[v], a, b) for u, v, a, b in self.edges],
        )

    def scaled(self, factor: int) -> "DpvcInstance":
        """Return the instance with every demand multiplied by ``factor``."""
        if factor < 1:
            raise ValueError(f"scale factor must be positive, got {factor}")
        return DpvcInstance(
            n=self.n,
            edges=[Edge(u, v, a * factor, b * factor) for u, v, a, b in self.edges],
        )

    def induced(self, vertices: Iterable[int]) -> Tuple["DpvcInstance", List[int]]:
        """
        Induced sub-instance on ``vertices``, relabeled densely in increasing order.

        Returns:
            The sub-instance and the list mapping new ids to original ids
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            Edge(index[u], index[v], a, b)
            for u, v, a, b in self.edges
            if u in index and v in index
        ]
        return DpvcInstance(n=len(keep), edges=edges), keep

    def to_networkx(self) -> "nx.Graph":
        """Underlying simple graph with ``w_uv``/``w_vu`` edge attributes keyed by endpoint."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for u, v, a, b in self.edges:
            graph.add_edge(u, v, demand={u: a, v: b})
        return graph


class PowerAssignment(BaseModel):
    """Power levels per vertex; missing vertices have power 0."""

    p: Dict[int, int] = Field(default_factory=dict)

    @field_validator("p")
    @classmethod
    def _non_negative(cls, value: Dict[int, int]) -> Dict[int, int]:
        for vertex, power in value.items():
            if power < 0:
                raise ValueError(f"negative power {power} on vertex {vertex}")
        return {vertex: power for vertex, power in value.items() if power > 0}

    def __getitem__(self, v: int) -> int:
        return self.p.get(v, 0)

    @property
    def value(self) -> int:
        """Total power."""
        return sum(self.p.values())

    @property
    def support(self) -> int:
        """Number of vertices with positive power."""
        return sum(1 for power in self.p.values() if power > 0)

    def as_list(self, n: int) -> List[int]:
        return [self.p.get(v, 0) for v in range(n)]


def uncovered_edges(inst: DpvcInstance, a: PowerAssignment) -> List[Edge]:
    """Edges of ``inst`` that neither endpoint covers under ``a``."""
    return [e for e in inst.edges if a[e.u] < e.w_uv and a[e.v] < e.w_vu]


def is_feasible(inst: DpvcInstance, a: PowerAssignment) -> bool:
    """
    Check that every edge (u, v) has ``p_u >= w_uv`` or ``p_v >= w_vu``.

    Args:
        inst: Instance to check against
        a: Power assignment; vertices it omits have power 0

    Returns:
        True iff the assignment covers every edge
    """
    return not uncovered_edges(inst, a)


def candidate_levels(inst: DpvcInstance, v: int) -> List[int]:
    """Power 0 plus every demand on v's side, sorted and deduplicated."""
    return sorted({0} | {entry.own for entry in inst.incident(v)})


def _tokens(text: str) -> Iterable[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        yield number, parts


def _as_int(line: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceFormatError(line, f"{what} is not an integer: {token!r}") from None


def parse_instance(text: str) -> DpvcInstance:
    """
    Parse the line-oriented instance format.

    Header ``p pvc <n> <m>`` or ``p dpvc <n> <m>``, then ``e <u> <v> <w>`` or
    ``e <u> <v> <w_uv> <w_vu>`` lines with 1-indexed vertices. Lines starting
    with ``c`` are comments.

    Args:
        text: File contents

    Returns:
        Validated instance with 0-indexed vertices

    Raises:
        InstanceFormatError: On any malformed line, with its line number
    """
    kind: Optional[str] = None
    n = m = 0
    header_line = 0
    edges: List[Edge] = []
    seen: Dict[Tuple[int, int], int] = {}

    for line, parts in _tokens(text):
        tag = parts[0]
        if tag == "p":
            if kind is not None:
                raise InstanceFormatError(line, "duplicate header")
            if len(parts) != 4 or parts[1] not in ("pvc", "dpvc"):
                raise InstanceFormatError(line, "malformed header, expected 'p pvc|dpvc <n> <m>'")
            kind = parts[1]
            n = _as_int(line, parts[2], "vertex count")
            m = _as_int(line, parts[3], "edge count")
            if n < 0 or m < 0:
                raise InstanceFormatError(line, "negative size in header")
            header_line = line
        elif tag == "e":
            if kind is None:
                raise InstanceFormatError(line, "edge before header")
            expected = 4 if kind == "pvc" else 5
            if len(parts) != expected:
                raise InstanceFormatError(
                    line, f"{kind} edge needs {expected - 1} fields, got {len(parts) - 1}"
                )
            u = _as_int(line, parts[1], "vertex")
            v = _as_int(line, parts[2], "vertex")
            w_uv = _as_int(line, parts[3], "demand")
            w_vu = w_uv if kind == "pvc" else _as_int(line, parts[4], "demand")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceFormatError(line, f"vertex index out of range 1..{n}")
            if u == v:
                raise InstanceFormatError(line, f"self-loop on vertex {u}")
            if w_uv < 1 or w_vu < 1:
                raise InstanceFormatError(line, "demand < 1")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceFormatError(
                    line, f"duplicate edge {u}-{v} (first on line {seen[key]})"
                )
            seen[key] = line
            edges.append(Edge(u - 1, v - 1, w_uv, w_vu))
        else:
            raise InstanceFormatError(line, f"unknown line type {tag!r}")

    if kind is None:
        raise InstanceFormatError(0, "missing header")
    if len(edges) != m:
        raise InstanceFormatError(header_line, f"header declares {m} edges, found {len(edges)}")
    if kind == "pvc":
        logger.debug(f"Parsed PVC instance with n={n}, m={m}")
    else:
        logger.debug(f"Parsed DPVC instance with n={n}, m={m}")
    return DpvcInstance(n=n, edges=edges)


def format_instance(inst: DpvcInstance, comment: Optional[str] = None) -> str:
    """Serialize ``inst``; symmetric instances are written as ``pvc``."""
    lines = []
    if comment:
        lines.extend(f"c {row}" for row in comment.splitlines())
    if inst.symmetric:
        lines.append(f"p pvc {inst.n} {inst.m}")
        lines.extend(f"e {u + 1} {v + 1} {a}" for u, v, a, _ in inst.edges)
    else:
        lines.append(f"p dpvc {inst.n} {inst.m}")
        lines.extend(f"e {u + 1} {v + 1} {a} {b}" for u, v, a, b in inst.edges)
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> PowerAssignment:
    """
    Parse ``s <value> <support>`` followed by ``v <id> <power>`` lines.

    The ``s`` line is checked against the listed powers.
    """
    declared: Optional[Tuple[int, int, int]] = None
    powers: Dict[int, int] = {}
    for line, parts in _tokens(text):
        if parts[0] == "s":
            if len(parts) != 3:
                raise InstanceFormatError(
                    line, "malformed solution line, expected 's <value> <support>'"
                )
            value = _as_int(line, parts[1], "value")
            declared = (line, value, _as_int(line, parts[2], "support"))
        elif parts[0] == "v":
            if len(parts) != 3:
                raise InstanceFormatError(line, "malformed vertex line, expected 'v <id> <power>'")
            vertex = _as_int(line, parts[1], "vertex")
            power = _as_int(line, parts[2], "power")
            if vertex < 1:
                raise InstanceFormatError(line, f"vertex index out of range: {vertex}")
            if power < 0:
                raise InstanceFormatError(line, f"negative power {power}")
            if vertex - 1 in powers:
                raise InstanceFormatError(line, f"vertex {vertex} listed twice")
            powers[vertex - 1] = power
        else:
            raise InstanceFormatError(line, f"unknown line type {parts[0]!r}")

    assignment = PowerAssignment(p=powers)
    if declared is not None:
        line, value, support = declared
        if value != assignment.value or support != assignment.support:
            raise InstanceFormatError(
                line,
                f"declared value/support {value}/{support} do not match "
                f"{assignment.value}/{assignment.support}",
            )
    return assignment


def format_solution(a: PowerAssignment) -> str:
    """Serialize ``a`` in the solution format with 1-indexed vertices."""
    lines = [f"s {a.value} {a.support}"]
    lines.extend(f"v {v + 1} {a.p[v]}" for v in sorted(a.p) if a.p[v] > 0)
    return "\n".join(lines) + "\n"
