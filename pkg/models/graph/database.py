"""
models/graph/database.py

Multi-labeled multi-edge directed graph database.

Simple explanation:
- Vertices, edges and labels are dense integers (0, 1, 2, ...)
- Every edge carries a SET of labels (possibly empty)
- Parallel edges are distinct edges with distinct ids
- The database never changes after it is built
"""

import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from models.errors import UnknownVertex
from models.graph.adjacency import AdjacencyBuilder

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Label:
    """Interned label; equality is id equality"""
    id: int
    text: str = field(compare=False)


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    tgt: int
    labels: FrozenSet[Label]
    tgtidx: int
    name: str = field(compare=False, default="")


class Database:
    """
    Immutable edge store with incoming/outgoing adjacency and tgtidx.

    Use Database.build(...) or GraphLoader.load_database(...) rather than
    the constructor.
    """

    def __init__(self,
                 vertex_names: Sequence[str],
                 label_names: Sequence[str],
                 edge_names: Sequence[str],
                 src: Sequence[int],
                 tgt: Sequence[int],
                 edge_labels: Sequence[Sequence[int]],
                 costs: Optional[Sequence[float]] = None):
        self.vertex_names: List[str] = list(vertex_names)
        self.label_names: List[str] = list(label_names)
        self.edge_names: List[str] = list(edge_names)
        self.vertex_ids: Dict[str, int] = {n: i for i, n in enumerate(self.vertex_names)}
        self.label_ids: Dict[str, int] = {n: i for i, n in enumerate(self.label_names)}
        self.edge_ids: Dict[str, int] = {n: i for i, n in enumerate(self.edge_names)}

        self.src = np.asarray(src, dtype=np.int64).reshape(-1)
        self.tgt = np.asarray(tgt, dtype=np.int64).reshape(-1)
        # sorted tuples: deterministic label iteration order
        self.edge_labels: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(set(labels))) for labels in edge_labels
        )
        self.costs = None if costs is None else np.asarray(costs, dtype=np.float64)

        self.in_indptr, self.in_edges = AdjacencyBuilder.build_csr(self.tgt, self.n_vertices)
        self.out_indptr, self.out_edges = AdjacencyBuilder.build_csr(self.src, self.n_vertices)
        for array in (self.src, self.tgt, self.in_indptr, self.in_edges,
                      self.out_indptr, self.out_edges):
            array.setflags(write=False)

        # plain-list views for the traversal loops
        self._incoming = [self.in_edges[self.in_indptr[v]:self.in_indptr[v + 1]].tolist()
                          for v in range(self.n_vertices)]
        self._outgoing = [self.out_edges[self.out_indptr[v]:self.out_indptr[v + 1]].tolist()
                          for v in range(self.n_vertices)]
        self.src_list: List[int] = self.src.tolist()
        self.tgt_list: List[int] = self.tgt.tolist()

        AdjacencyBuilder.precompute_tgtidx(self)
        self.tgtidx_list: List[int] = self.tgtidx.tolist()

        logger.debug("database built: |V|=%d |E|=%d |Sigma|=%d",
                     self.n_vertices, self.n_edges, self.n_labels)

    @classmethod
    def build(cls, vertex_names: Sequence[str],
              edges: Sequence[Tuple[str, str, str, Sequence[str]]],
              costs: Optional[Sequence[float]] = None) -> 'Database':
        """
        Build a database from names

        Args:
            vertex_names: vertex names in id order
            edges: (edge name, src name, tgt name, label names) in id order
            costs: optional per-edge costs

        Returns:
            Database with labels interned in first-occurrence order
        """
        vertex_ids = {n: i for i, n in enumerate(vertex_names)}
        label_ids: Dict[str, int] = {}
        src, tgt, labels = [], [], []
        for name, s, t, names in edges:
            for v in (s, t):
                if v not in vertex_ids:
                    raise UnknownVertex(v)
            src.append(vertex_ids[s])
            tgt.append(vertex_ids[t])
            labels.append([label_ids.setdefault(a, len(label_ids)) for a in names])
        return cls(vertex_names, list(label_ids), [e[0] for e in edges],
                   src, tgt, labels, costs)

    # ------------------------------------------------------------------ sizes

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def n_edges(self) -> int:
        return len(self.edge_names)

    @property
    def n_labels(self) -> int:
        return len(self.label_names)

    @property
    def has_costs(self) -> bool:
        return self.costs is not None

    # -------------------------------------------------------------- adjacency

    def incoming(self, v: int) -> List[int]:
        """Edges into v, ordered by tgtidx"""
        return self._incoming[v]

    def outgoing(self, v: int) -> List[int]:
        return self._outgoing[v]

    def indeg(self, v: int) -> int:
        return int(self.in_indptr[v + 1] - self.in_indptr[v])

    def outdeg(self, v: int) -> int:
        return int(self.out_indptr[v + 1] - self.out_indptr[v])

    def max_indeg(self) -> int:
        if self.n_vertices == 0:
            return 0
        return int(np.max(np.diff(self.in_indptr)))

    # ------------------------------------------------------------------ views

    @property
    def labels(self) -> List[Label]:
        return [Label(i, n) for i, n in enumerate(self.label_names)]

    def label(self, name: str) -> Label:
        return Label(self.label_ids[name], name)

    def edge(self, e: int) -> Edge:
        return Edge(
            id=e,
            src=self.src_list[e],
            tgt=self.tgt_list[e],
            labels=frozenset(Label(a, self.label_names[a]) for a in self.edge_labels[e]),
            tgtidx=self.tgtidx_list[e],
            name=self.edge_names[e],
        )

    @property
    def edges(self) -> List[Edge]:
        return [self.edge(e) for e in range(self.n_edges)]

    def vertex_id(self, name: str) -> int:
        if name not in self.vertex_ids:
            raise UnknownVertex(name)
        return self.vertex_ids[name]

    def edge_id(self, name: str) -> int:
        if name not in self.edge_ids:
            raise ValueError(f"unknown edge '{name}'")
        return self.edge_ids[name]

    def cost(self, e: int) -> float:
        return 1.0 if self.costs is None else float(self.costs[e])

    def with_costs(self, costs: Sequence[float]) -> 'Database':
        """Same graph with a replaced cost column"""
        return Database(self.vertex_names, self.label_names, self.edge_names,
                        self.src, self.tgt, self.edge_labels, costs)

    def get_summary(self) -> Dict:
        return {
            'vertices': self.n_vertices,
            'edges': self.n_edges,
            'labels': self.n_labels,
            'max in-degree': self.max_indeg(),
            'costs': self.has_costs,
        }
