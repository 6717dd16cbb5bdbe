"""File models for JSON diagram documents, validated with Pydantic."""

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


class FileModel(BaseModel):
    """Base for file records: unknown fields are rejected."""

    model_config = ConfigDict(extra="forbid")


class EdgeSpec(FileModel):
    """One directed colored edge."""

    id: str
    color: Union[int, str]  # integer, or a linear expression such as "i+j"
    tail: Optional[tuple[str, int]] = None  # (node id, port); derived from rotations when omitted
    head: Optional[tuple[str, int]] = None
    twists: list[Literal["+", "-"]] = Field(default_factory=list)


class VertexSpec(FileModel):
    id: str
    rotation: list[str]  # half-edge refs, counterclockwise


class CrossingSpec(FileModel):
    id: str
    rotation: list[str] = Field(min_length=4, max_length=4)
    over: str  # incoming half-edge of the over strand, or a bare edge id of it
    sign: Optional[Literal["+", "-"]] = None


class OuterSpec(FileModel):
    edge: str
    side: Literal["left", "right"] = "left"


class DeltaSpec(FileModel):
    edge: str
    position: int = 0


class DiagramFile(FileModel):
    """A complete diagram document."""

    name: Optional[str] = None
    edges: list[EdgeSpec]
    vertices: list[VertexSpec] = Field(default_factory=list)
    crossings: list[CrossingSpec] = Field(default_factory=list)
    outer: Union[str, OuterSpec, list[Union[str, OuterSpec]]]
    delta: Optional[DeltaSpec] = None
