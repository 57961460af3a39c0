from types import MappingProxyType
from typing import Iterable, Mapping, Optional

import networkx as nx

from core.exceptions import TopologyException
from schemas.scenario import GATEWAY_ID


class BackhaulGraph:
    """Immutable undirected backhaul forest with an orientation toward the gateway.

    Every UAV maps to its parent node (a UAV id or the gateway) or to None when it
    has no uplink. Edges are exactly the (uav, parent) pairs, so the parent map and
    the edge set can never disagree.
    """

    __slots__ = ("_parent", "_root", "_children", "_key")

    def __init__(self, parent: Mapping[int, Optional[int]], root: int = GATEWAY_ID):
        if root in parent:
            raise TopologyException(detail=f"Root {root} cannot have a parent")
        nodes = set(parent) | {root}
        for uav, up in parent.items():
            if up is not None and up not in nodes:
                raise TopologyException(detail=f"UAV {uav} points to unknown node {up}")
            if up == uav:
                raise TopologyException(detail=f"UAV {uav} cannot be its own parent")

        children: dict[int, list[int]] = {node: [] for node in nodes}
        for uav in sorted(parent):
            up = parent[uav]
            if up is not None:
                children[up].append(uav)

        self._parent = MappingProxyType(dict(sorted(parent.items())))
        self._root = root
        self._children = MappingProxyType({k: tuple(v) for k, v in children.items()})
        self._key = (root, tuple(self._parent.items()))
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        for start in self._parent:
            seen = {start}
            node = self._parent[start]
            while node is not None and node != self._root:
                if node in seen:
                    raise TopologyException(detail=f"Parent chain from UAV {start} loops")
                seen.add(node)
                node = self._parent[node]

    @property
    def root(self) -> int:
        return self._root

    @property
    def parent(self) -> Mapping[int, Optional[int]]:
        return self._parent

    @property
    def uav_ids(self) -> tuple[int, ...]:
        return tuple(self._parent)

    @property
    def edges(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset((uav, up)) for uav, up in self._parent.items() if up is not None)

    @property
    def edge_count(self) -> int:
        return sum(1 for up in self._parent.values() if up is not None)

    def children(self, node: int) -> tuple[int, ...]:
        return self._children.get(node, ())

    def has_node(self, node: int) -> bool:
        return node == self._root or node in self._parent

    def has_edge(self, a: int, b: int) -> bool:
        return self._parent.get(a) == b or self._parent.get(b) == a

    def neighbors(self, node: int) -> tuple[int, ...]:
        up = self._parent.get(node)
        ups = (up,) if up is not None else ()
        return ups + self.children(node)

    def with_parents(self, updates: Mapping[int, Optional[int]]) -> "BackhaulGraph":
        """Copy of this graph with some parent pointers replaced"""
        parent = dict(self._parent)
        parent.update(updates)
        return BackhaulGraph(parent, self._root)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_node(self._root)
        graph.add_nodes_from(self._parent)
        graph.add_edges_from((uav, up) for uav, up in self._parent.items() if up is not None)
        return graph

    @classmethod
    def from_edges(cls, uav_ids: Iterable[int], edges: Iterable[tuple[int, int]], root: int = GATEWAY_ID) -> "BackhaulGraph":
        """Orient an undirected edge list toward the root.

        Components without the root are oriented toward their smallest UAV id.
        """
        graph = nx.Graph()
        graph.add_node(root)
        graph.add_nodes_from(uav_ids)
        graph.add_edges_from(edges)
        if not nx.is_forest(graph):
            raise TopologyException(detail="Edge list contains a cycle")
        unknown = set(graph.nodes) - set(uav_ids) - {root}
        if unknown:
            raise TopologyException(detail=f"Edge list references unknown nodes {sorted(unknown)}")

        parent: dict[int, Optional[int]] = {uav: None for uav in uav_ids}
        for component in nx.connected_components(graph):
            anchor = root if root in component else min(component)
            for child, up in nx.bfs_predecessors(graph, anchor):
                parent[child] = up
        return cls(parent, root)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BackhaulGraph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        links = ", ".join(f"{uav}->{up}" for uav, up in self._parent.items())
        return f"<BackhaulGraph(root={self._root}, {links})>"
