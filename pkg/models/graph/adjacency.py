"""
models/graph/adjacency.py

Compressed adjacency arrays for the edge store.

Simple explanation:
- incoming(v) and outgoing(v) are slices of one flat edge array each
- indptr[v]:indptr[v+1] is the slice owned by vertex v
- Stable sorting by endpoint keeps declaration order inside every slice,
  which is what fixes tgtidx and therefore the output order
"""

import numpy as np
from typing import Tuple


class AdjacencyBuilder:

    @staticmethod
    def build_csr(endpoints: np.ndarray, n_vertices: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Group edge ids by endpoint, preserving edge id order within a group

        Args:
            endpoints: endpoint vertex of every edge (src or tgt array)
            n_vertices: |V|

        Returns:
            (indptr, indices): indptr has |V|+1 entries, indices has |E|
        """
        endpoints = np.asarray(endpoints, dtype=np.int64)
        counts = np.bincount(endpoints, minlength=n_vertices)
        indptr = np.zeros(n_vertices + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        indices = np.argsort(endpoints, kind='stable').astype(np.int64)
        return indptr, indices

    @staticmethod
    def precompute_tgtidx(db):
        """
        Assign tgtidx(e) = position of e in incoming(tgt(e)).

        One pass over the incoming arrays; returns the same database.
        """
        n_edges = db.n_edges
        tgtidx = np.zeros(n_edges, dtype=np.int64)
        if n_edges:
            # position k in the flat array, minus the start of the owning slice
            owners = db.tgt[db.in_edges]
            tgtidx[db.in_edges] = np.arange(n_edges) - db.in_indptr[owners]
        db.tgtidx = tgtidx
        db.tgtidx.setflags(write=False)
        return db

    @staticmethod
    def check_tgtidx(db) -> bool:
        """incoming(tgt(e))[tgtidx(e)] == e for every edge"""
        for e in range(db.n_edges):
            if db.incoming(int(db.tgt[e]))[int(db.tgtidx[e])] != e:
                return False
        return True
