from pathlib import Path
from typing import Iterable, Union

import networkx as nx

from core.exceptions import (
    CycleViolationException,
    MissingLinkException,
    NoOpLinkException,
    OutputWriteException,
    ScenarioFileException,
    UnknownNodeException,
)
from models.topology import BackhaulGraph
from schemas.scenario import GATEWAY_ID
from schemas.topology import ConstraintReport, PathToGateway
import logging

logger = logging.getLogger(__name__)


class TopologyService:
    @staticmethod
    def star_topology(uav_ids: Union[int, Iterable[int]], root: int = GATEWAY_ID) -> BackhaulGraph:
        """Every UAV linked directly to the gateway; an int means UAVs 1..J"""
        ids = range(1, uav_ids + 1) if isinstance(uav_ids, int) else uav_ids
        return BackhaulGraph({uav: root for uav in ids}, root)

    @staticmethod
    def _require_uav(g: BackhaulGraph, j: int) -> None:
        if j not in g.parent:
            raise UnknownNodeException(detail=f"Unknown UAV id {j}")

    @staticmethod
    def path_to_gateway(g: BackhaulGraph, j: int) -> PathToGateway:
        TopologyService._require_uav(g, j)
        nodes = [j]
        node = g.parent[j]
        while node is not None:
            nodes.append(node)
            if node == g.root:
                return PathToGateway(uav=j, nodes=nodes, connected=True)
            node = g.parent[node]
        return PathToGateway(uav=j, nodes=[], connected=False)

    @staticmethod
    def subtree(g: BackhaulGraph, j: int) -> set[int]:
        """j plus every UAV whose parent chain passes through j"""
        TopologyService._require_uav(g, j)
        members = {j}
        stack = [j]
        while stack:
            node = stack.pop()
            for child in g.children(node):
                members.add(child)
                stack.append(child)
        return members

    @staticmethod
    def replace_parent_link(g: BackhaulGraph, j: int, w: int) -> BackhaulGraph:
        """G - (j, parent(j)) + (j, w); attaches j when it has no parent"""
        TopologyService._require_uav(g, j)
        if not g.has_node(w):
            raise UnknownNodeException(detail=f"Unknown node id {w}")
        if g.parent[j] == w:
            raise NoOpLinkException(detail=f"Node {w} is already the parent of UAV {j}")
        if w != g.root and w in TopologyService.subtree(g, j):
            raise CycleViolationException(detail=f"Node {w} lies in the subtree of UAV {j}")
        return g.with_parents({j: w})

    @staticmethod
    def delete_link(g: BackhaulGraph, j: int, w: int) -> BackhaulGraph:
        if not (g.has_node(j) and g.has_node(w)) or not g.has_edge(j, w):
            raise MissingLinkException(detail=f"Link ({j}, {w}) does not exist")
        child = j if g.parent.get(j) == w else w
        return g.with_parents({child: None})

    @staticmethod
    def verify_constraints(g: BackhaulGraph) -> ConstraintReport:
        graph = g.to_networkx()
        disconnected = [uav for uav in g.uav_ids if not TopologyService.path_to_gateway(g, uav).connected]
        edge_count = graph.number_of_edges()
        binary = nx.number_of_selfloops(graph) == 0 and edge_count == g.edge_count
        return ConstraintReport(
            connected=not disconnected,
            edge_count_ok=edge_count <= len(g.uav_ids),
            binary_edges=binary,
            acyclic=nx.is_forest(graph),
            edge_count=edge_count,
            num_uavs=len(g.uav_ids),
            disconnected=disconnected,
        )

    @staticmethod
    def to_edge_list(g: BackhaulGraph) -> str:
        lines = [
            f"# uavs={len(g.uav_ids)} root={g.root}",
            f"# nodes={','.join(str(uav) for uav in g.uav_ids)}",
        ]
        lines.extend(f"{uav} {up}" for uav, up in g.parent.items() if up is not None)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_edge_list(text: str) -> BackhaulGraph:
        header: dict[str, str] = {}
        edges: list[tuple[int, int]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line.lstrip("#").split():
                    if "=" in token:
                        key, value = token.split("=", 1)
                        header[key] = value
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ScenarioFileException(detail=f"Edge list line {number}: expected 'node node', got '{line}'")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise ScenarioFileException(detail=f"Edge list line {number}: node ids must be integers")

        if "root" not in header or "nodes" not in header:
            raise ScenarioFileException(detail="Edge list header must declare root and nodes")
        root = int(header["root"])
        uav_ids = [int(token) for token in header["nodes"].split(",") if token]
        if "uavs" in header and int(header["uavs"]) != len(uav_ids):
            raise ScenarioFileException(detail="Edge list header uavs count does not match nodes")
        return BackhaulGraph.from_edges(uav_ids, edges, root)

    @staticmethod
    def save_edge_list(g: BackhaulGraph, path: Union[str, Path]) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(TopologyService.to_edge_list(g), encoding="utf-8")
        except OSError as e:
            raise OutputWriteException(detail=f"Cannot write edge list {path}: {e}", path=path)
        return path

    @staticmethod
    def load_edge_list(path: Union[str, Path]) -> BackhaulGraph:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ScenarioFileException(detail=f"Cannot read edge list {path}: {e}", path=path)
        return TopologyService.from_edge_list(text)
