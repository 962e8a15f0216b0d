"""
models/graph/graph_loader.py

Text format for graph databases.

    # comment
    vertex Alix
    edge e1 Alix Cassie h
    edge e2 Alix Dan h,s
    edge e9 Dan Dan -          (empty label set)
    edge e7 Cassie Bob h 10    (optional 5th column: cost)

Declaration order fixes vertex ids, edge ids and tgtidx.
"""

import logging
import os
import sys
from typing import Dict, List, Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from config.query_params import QueryParams
from models.errors import (DuplicateEdgeId, DuplicateVertex, InvalidCost,
                           ParseError, UnknownVertex)
from models.graph.database import Database

logger = logging.getLogger(__name__)


class GraphLoader:

    @staticmethod
    def _strip(line: str) -> str:
        pos = line.find(QueryParams.COMMENT)
        return (line if pos < 0 else line[:pos]).strip()

    @staticmethod
    def _parse_labels(field: str, lineno: int) -> List[str]:
        if field == QueryParams.EMPTY_LABELS:
            return []
        names = field.split(",")
        for name in names:
            if not QueryParams.is_name(name):
                raise ParseError(lineno, f"bad label '{name}'")
        # a label listed twice is the same label
        return list(dict.fromkeys(names))

    @staticmethod
    def _parse_cost(edge: str, field: Optional[str], lineno: int) -> float:
        if field is None:
            raise ParseError(lineno, f"edge '{edge}' has no cost column")
        try:
            value = float(field)
        except ValueError:
            raise InvalidCost(edge, field) from None
        if not np.isfinite(value) or value <= 0:
            raise InvalidCost(edge, field)
        return value

    @staticmethod
    def load_database(text: str, with_costs: bool = False) -> Database:
        """
        Parse graph-file content

        Args:
            text: file content
            with_costs: read the 5th edge column as a strictly positive cost

        Returns:
            Database (adjacency arrays and tgtidx already built)

        Raises:
            ParseError, UnknownVertex, DuplicateVertex, DuplicateEdgeId, InvalidCost
        """
        vertex_names: List[str] = []
        seen_vertices: Dict[str, int] = {}
        edges: List[Tuple[str, str, str, List[str], int]] = []
        seen_edges: Dict[str, int] = {}
        costs: List[float] = []

        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = GraphLoader._strip(raw)
            if not line:
                continue
            fields = line.split()
            keyword = fields[0]

            if keyword == 'vertex':
                if len(fields) != 2:
                    raise ParseError(lineno, "expected 'vertex <name>'")
                name = fields[1]
                if not QueryParams.is_name(name):
                    raise ParseError(lineno, f"bad vertex name '{name}'")
                if name in seen_vertices:
                    raise DuplicateVertex(name, lineno)
                seen_vertices[name] = lineno
                vertex_names.append(name)

            elif keyword == 'edge':
                if len(fields) not in (5, 6):
                    raise ParseError(lineno, "expected 'edge <name> <src> <tgt> <labels> [cost]'")
                name, s, t = fields[1], fields[2], fields[3]
                for token in (name, s, t):
                    if not QueryParams.is_name(token):
                        raise ParseError(lineno, f"bad identifier '{token}'")
                if name in seen_edges:
                    raise DuplicateEdgeId(name, lineno)
                seen_edges[name] = lineno
                labels = GraphLoader._parse_labels(fields[4], lineno)
                if with_costs:
                    costs.append(GraphLoader._parse_cost(
                        name, fields[5] if len(fields) == 6 else None, lineno))
                edges.append((name, s, t, labels, lineno))

            else:
                raise ParseError(lineno, f"unknown keyword '{keyword}'")

        for name, s, t, _, lineno in edges:
            for v in (s, t):
                if v not in seen_vertices:
                    raise UnknownVertex(v, lineno)

        db = Database.build(vertex_names,
                            [(n, s, t, labels) for n, s, t, labels, _ in edges],
                            costs if with_costs else None)
        logger.info("loaded graph: %d vertices, %d edges, %d labels",
                    db.n_vertices, db.n_edges, db.n_labels)
        return db

    @staticmethod
    def load_file(path: str, with_costs: bool = False) -> Database:
        with open(path, encoding='utf-8') as handle:
            return GraphLoader.load_database(handle.read(), with_costs)

    @staticmethod
    def serialize_database(db: Database) -> str:
        """Write db back in the graph file format (reloads to identical ids)"""
        lines = [f"vertex {name}" for name in db.vertex_names]
        for e in range(db.n_edges):
            labels = ",".join(db.label_names[a] for a in db.edge_labels[e]) \
                or QueryParams.EMPTY_LABELS
            line = (f"edge {db.edge_names[e]} {db.vertex_names[db.src_list[e]]} "
                    f"{db.vertex_names[db.tgt_list[e]]} {labels}")
            if db.has_costs:
                line += " " + np.format_float_positional(db.costs[e], trim='-')
            lines.append(line)
        return "\n".join(lines) + "\n"


if __name__ == "__main__":
    bank = os.path.join(os.path.dirname(__file__), '..', '..', 'data', 'bank.graph')
    db = GraphLoader.load_file(bank)
    print("Bank Graph")
    print("=" * 50)
    for key, value in db.get_summary().items():
        print(f"{key:20s}: {value}")
    for v in range(db.n_vertices):
        names = [db.edge_names[e] for e in db.incoming(v)]
        print(f"  incoming({db.vertex_names[v]}) = {names}")
