"""
models/graph/walk.py

Walks: alternating vertex/edge sequences, their canonical order key and
their text renderings.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple


@dataclass(frozen=True)
class Walk:
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("a walk has exactly one more vertex than edges")

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def target(self) -> int:
        return self.vertices[-1]

    @classmethod
    def single(cls, v: int) -> 'Walk':
        return cls((v,), ())

    @classmethod
    def from_edges(cls, db, edges: Sequence[int], source: int = None) -> 'Walk':
        """
        Build a walk from its edges

        Args:
            db: Database the edges belong to
            edges: edge ids e0..e(k-1)
            source: start vertex, only needed for the zero-length walk

        Returns:
            Walk (raises ValueError if consecutive edges do not chain)
        """
        edges = tuple(int(e) for e in edges)
        if not edges:
            if source is None:
                raise ValueError("zero-length walk needs a source vertex")
            return cls.single(int(source))

        vertices = [db.src_list[edges[0]]]
        for e in edges:
            if db.src_list[e] != vertices[-1]:
                raise ValueError(f"edge {db.edge_names[e]} does not continue the walk")
            vertices.append(db.tgt_list[e])
        if source is not None and vertices[0] != source:
            raise ValueError("walk does not start at the given source")
        return cls(tuple(vertices), edges)

    def is_walk_of(self, db) -> bool:
        """Alternation holds: src(e_i) = v_i and tgt(e_i) = v_(i+1)"""
        for i, e in enumerate(self.edges):
            if db.src_list[e] != self.vertices[i] or db.tgt_list[e] != self.vertices[i + 1]:
                return False
        return True

    def order_key(self, db) -> Tuple[int, ...]:
        """Canonical order: tgtidx sequence read from the last edge to the first"""
        return tuple(db.tgtidx_list[e] for e in reversed(self.edges))


class WalkFormatter:
    """Text renderings used by the command line"""

    @staticmethod
    def edges_format(db, walk: Walk) -> str:
        if not walk.edges:
            return db.vertex_names[walk.source]
        return ",".join(db.edge_names[e] for e in walk.edges)

    @staticmethod
    def full_format(db, walk: Walk) -> str:
        parts = [db.vertex_names[walk.vertices[0]]]
        for e, v in zip(walk.edges, walk.vertices[1:]):
            parts.append(f"-{db.edge_names[e]}->")
            parts.append(db.vertex_names[v])
        return " ".join(parts)

    @staticmethod
    def render(db, walk: Walk, fmt: str = 'edges') -> str:
        if fmt == 'edges':
            return WalkFormatter.edges_format(db, walk)
        if fmt == 'full':
            return WalkFormatter.full_format(db, walk)
        raise ValueError(f"Unknown walk format: {fmt}")

    @staticmethod
    def parse_edges(db, text: str, source: int) -> Walk:
        """
        Inverse of edges_format: 'e2,e4,e8' (or a vertex name for length 0)
        """
        text = text.strip()
        if text not in db.edge_ids and text in db.vertex_ids:
            return Walk.single(db.vertex_ids[text])
        names: List[str] = [n.strip() for n in text.split(",") if n.strip()]
        return Walk.from_edges(db, [db.edge_id(n) for n in names], source)
