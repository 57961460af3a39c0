from typing import Optional
from pydantic import BaseModel, ConfigDict, Field


class PathToGateway(BaseModel):
    model_config = ConfigDict(frozen=True)

    uav: int
    nodes: list[int] = Field(default_factory=list)
    connected: bool = True

    @property
    def hops(self) -> list[tuple[int, int]]:
        return list(zip(self.nodes, self.nodes[1:]))

    @property
    def hop_count(self) -> int:
        return max(len(self.nodes) - 1, 0)


class ConstraintReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    connected: bool
    edge_count_ok: bool
    binary_edges: bool
    acyclic: bool
    edge_count: int
    num_uavs: int
    disconnected: list[int] = Field(default_factory=list)
    detail: Optional[str] = None

    @property
    def all_passed(self) -> bool:
        return self.connected and self.edge_count_ok and self.binary_edges and self.acyclic
