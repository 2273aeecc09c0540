"""
Tree decompositions for power-cover.

Decompositions come either from the min-fill heuristic or from a PACE ``.td``
file. Both are validated and then normalized to a nice decomposition whose
root bag is empty.
"""

import logging
from enum import Enum
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in
from pydantic import BaseModel, Field

from power_cover.core.instance import DpvcInstance, InstanceFormatError

logger = logging.getLogger(__name__)

Bags = Dict[int, FrozenSet[int]]


class NodeKind(str, Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


class TdNode(BaseModel):
    """
    One node of a nice decomposition.

    ``bag`` is sorted. ``vertex`` is the introduced or forgotten vertex, or the
    single vertex of a leaf.
    """

    kind: NodeKind
    bag: Tuple[int, ...]
    vertex: Optional[int] = None
    children: List[int] = Field(default_factory=list)


class NiceTreeDecomposition(BaseModel):
    """Nice tree decomposition stored as a node list; ``root`` is -1 when empty."""

    nodes: List[TdNode] = Field(default_factory=list)
    root: int = -1
    width: int = -1

    def postorder(self) -> Iterator[int]:
        """Node indices, children before parents."""
        if self.root < 0:
            return
        stack = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                yield node
                continue
            stack.append((node, True))
            for child in reversed(self.nodes[node].children):
                stack.append((child, False))

    def as_bags(self) -> Tuple[Bags, nx.Graph]:
        """Plain bag map and tree, for validation."""
        bags = {i: frozenset(node.bag) for i, node in enumerate(self.nodes)}
        tree = nx.Graph()
        tree.add_nodes_from(bags)
        for i, node in enumerate(self.nodes):
            for child in node.children:
                tree.add_edge(i, child)
        return bags, tree

    def check(self, inst: DpvcInstance) -> None:
        """
        Validate both the decomposition conditions and the nice shape.

        Raises:
            ValueError: Naming the first violated condition
        """
        bags, tree = self.as_bags()
        validate_decomposition(inst, bags, tree)
        for i, node in enumerate(self.nodes):
            bag = set(node.bag)
            kids = [set(self.nodes[c].bag) for c in node.children]
            if node.kind is NodeKind.LEAF:
                ok = not kids and bag == {node.vertex}
            elif node.kind is NodeKind.INTRODUCE:
                ok = len(kids) == 1 and node.vertex in bag and kids[0] == bag - {node.vertex}
            elif node.kind is NodeKind.FORGET:
                ok = len(kids) == 1 and node.vertex not in bag and kids[0] == bag | {node.vertex}
            else:
                ok = len(kids) == 2 and kids[0] == bag and kids[1] == bag
            if not ok:
                raise ValueError(f"node {i} is not a well-formed {node.kind.value} node")
        if self.root >= 0 and self.nodes[self.root].bag:
            raise ValueError("root bag is not empty")


def validate_decomposition(inst: DpvcInstance, bags: Bags, tree: nx.Graph) -> None:
    """
    Check that ``(bags, tree)`` is a tree decomposition of ``inst``.

    Args:
        inst: The graph being decomposed
        bags: Bag contents per tree node
        tree: Tree over the keys of ``bags``

    Raises:
        ValueError: If the tree is not a tree, a vertex or edge is not covered,
            or some vertex occurs in a disconnected set of bags
    """
    if not bags:
        if inst.n:
            raise ValueError("empty decomposition for a non-empty graph")
        return
    if set(tree.nodes) != set(bags) or not nx.is_tree(tree):
        raise ValueError("bag graph is not a tree over the bags")
    occurs: Dict[int, List[int]] = {v: [] for v in range(inst.n)}
    for node, bag in bags.items():
        for v in bag:
            if v not in occurs:
                raise ValueError(f"bag {node} holds unknown vertex {v}")
            occurs[v].append(node)
    for v, where in occurs.items():
        if not where:
            raise ValueError(f"vertex {v} is in no bag")
        if not nx.is_connected(tree.subgraph(where)):
            raise ValueError(f"bags holding vertex {v} are not connected")
    for u, v, _, _ in inst.edges:
        if not any(u in bags[node] and v in bags[node] for node in occurs[u]):
            raise ValueError(f"edge ({u}, {v}) is in no bag")


def make_nice(bags: Bags, tree: nx.Graph, root: Optional[int] = None) -> NiceTreeDecomposition:
    """
    Convert a tree decomposition into nice form with an empty root bag.

    Each child reaches its parent's bag through forgets and then introduces;
    several children are merged by a chain of binary joins.

    Args:
        bags: Bag contents per tree node
        tree: Tree over the keys of ``bags``
        root: Tree node to root at; the smallest key by default

    Returns:
        Equivalent nice decomposition of the same width
    """
    nice = NiceTreeDecomposition()
    if not bags:
        return nice

    def add(kind: NodeKind, bag: FrozenSet[int], vertex: Optional[int], children: List[int]) -> int:
        nice.nodes.append(
            TdNode(kind=kind, bag=tuple(sorted(bag)), vertex=vertex, children=children)
        )
        return len(nice.nodes) - 1

    def morph(node: int, current: FrozenSet[int], target: FrozenSet[int]) -> int:
        for v in sorted(current - target):
            current = current - {v}
            node = add(NodeKind.FORGET, current, v, [node])
        for v in sorted(target - current):
            current = current | {v}
            node = add(NodeKind.INTRODUCE, current, v, [node])
        return node

    def build(t: int, parent: Optional[int]) -> Optional[int]:
        bag = bags[t]
        merged: Optional[int] = None
        for child in sorted(c for c in tree.neighbors(t) if c != parent):
            below = build(child, t)
            if below is None:
                continue
            node = morph(below, bags[child], bag)
            merged = node if merged is None else add(NodeKind.JOIN, bag, None, [merged, node])
        if merged is None and bag:
            first = min(bag)
            leaf = add(NodeKind.LEAF, frozenset([first]), first, [])
            merged = morph(leaf, frozenset([first]), bag)
        return merged

    start = min(bags) if root is None else root
    top = build(start, None)
    if top is not None:
        nice.root = morph(top, bags[start], frozenset())
    nice.width = max(len(bag) for bag in bags.values()) - 1
    return nice


def min_fill_decomposition(inst: DpvcInstance) -> NiceTreeDecomposition:
    """
    Nice decomposition from the min-fill-in elimination heuristic.

    Returns:
        Validated nice decomposition; its width bounds the treewidth from above

    Raises:
        RuntimeError: If the heuristic's output fails validation
    """
    if inst.n == 0:
        return NiceTreeDecomposition()
    width, decomposition = treewidth_min_fill_in(inst.to_networkx())
    order = sorted(decomposition.nodes, key=lambda bag: (len(bag), sorted(bag)))
    index = {bag: i for i, bag in enumerate(order)}
    bags: Bags = {i: frozenset(bag) for i, bag in enumerate(order)}
    tree = nx.relabel_nodes(decomposition, index)
    try:
        validate_decomposition(inst, bags, tree)
        nice = make_nice(bags, tree)
        nice.check(inst)
    except ValueError as e:
        raise RuntimeError(f"min-fill decomposition is invalid: {e}") from e
    logger.debug(f"Min-fill decomposition: width {width}, {len(nice.nodes)} nice nodes")
    return nice


def read_pace_td(text: str, inst: DpvcInstance) -> NiceTreeDecomposition:
    """
    Parse a PACE ``.td`` file for ``inst`` and convert it to nice form.

    Header ``s td <bags> <width+1> <n>``, then ``b <id> <v...>`` with 1-indexed
    bag ids and vertices, then one ``<id> <id>`` line per tree edge.

    Raises:
        InstanceFormatError: On a malformed line
        ValueError: If the decomposition does not fit ``inst``
    """
    header: Optional[Tuple[int, int, int]] = None
    bags: Bags = {}
    tree = nx.Graph()
    for line, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tokens = parts[2:] if parts[0] in ("s", "b") else parts
        try:
            numbers = [int(tok) for tok in tokens]
        except ValueError:
            raise InstanceFormatError(line, f"non-integer token in {raw.strip()!r}") from None
        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != "td":
                raise InstanceFormatError(line, "expected a single 's td <bags> <width+1> <n>'")
            header = (numbers[0], numbers[1], numbers[2])
        elif header is None:
            raise InstanceFormatError(line, "line before 's td' header")
        elif parts[0] == "b":
            try:
                bag_id = int(parts[1])
            except (IndexError, ValueError):
                raise InstanceFormatError(line, "bag line needs an integer id") from None
            if not 1 <= bag_id <= header[0] or bag_id - 1 in bags:
                raise InstanceFormatError(line, f"bad or repeated bag id {bag_id}")
            if any(not 1 <= v <= header[2] for v in numbers):
                raise InstanceFormatError(line, f"vertex out of range 1..{header[2]}")
            bags[bag_id - 1] = frozenset(v - 1 for v in numbers)
            tree.add_node(bag_id - 1)
        else:
            if len(numbers) != 2 or not all(1 <= x <= header[0] for x in numbers):
                raise InstanceFormatError(line, "tree edge needs two bag ids")
            tree.add_edge(numbers[0] - 1, numbers[1] - 1)
    if header is None:
        raise InstanceFormatError(0, "missing 's td' header")
    if header[2] != inst.n:
        raise ValueError(f"decomposition is for n={header[2]}, instance has n={inst.n}")
    if len(bags) != header[0]:
        raise ValueError(f"header declares {header[0]} bags, found {len(bags)}")
    if bags and max(len(bag) for bag in bags.values()) > header[1]:
        raise ValueError(f"a bag is larger than the declared {header[1]}")
    validate_decomposition(inst, bags, tree)
    logger.debug(f"Read decomposition with {len(bags)} bags")
    return make_nice(bags, tree)


def format_pace_td(bags: Bags, tree: nx.Graph, n: int) -> str:
    """Write ``(bags, tree)`` in PACE ``.td`` form; bag keys are renumbered from 1."""
    order = sorted(bags)
    index = {key: i + 1 for i, key in enumerate(order)}
    largest = max((len(bag) for bag in bags.values()), default=0)
    lines = [f"s td {len(order)} {largest} {n}"]
    for key in order:
        members = " ".join(str(v + 1) for v in sorted(bags[key]))
        lines.append(f"b {index[key]} {members}".rstrip())
    lines.extend(f"{index[a]} {index[b]}" for a, b in sorted(tree.edges))
    return "\n".join(lines) + "\n"
