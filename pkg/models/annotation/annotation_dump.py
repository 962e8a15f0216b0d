"""
models/annotation/annotation_dump.py

Plain-text dump of an annotation, one block per vertex:

    vertex Bob
      L 0:2 1:3
      B 0 e8 []
      B 0 e7 [0]
      ...

B lines are listed state by state, slots in tgtidx order, with the name of
the incoming edge owning the slot. Used for golden-file tests and -vv output.
"""

import os
import sys
from typing import List

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from models.annotation.annotate import AnnotationResult


class AnnotationDump:

    @staticmethod
    def _number(value) -> str:
        if value is None:
            return "-"
        if isinstance(value, float) and value.is_integer():
            return str(int(value))
        return str(value)

    @staticmethod
    def render(result: AnnotationResult) -> str:
        db = result.db
        lines: List[str] = []
        target = "-" if result.target is None else db.vertex_names[result.target]
        lines.append(f"# annotation source={db.vertex_names[result.source]} "
                     f"target={target} lambda={AnnotationDump._number(result.lam)}")

        for u, name in enumerate(db.vertex_names):
            lines.append(f"vertex {name}")
            lengths = " ".join(f"{p}:{AnnotationDump._number(d)}"
                               for p, d in enumerate(result.L[u]))
            lines.append(f"  L {lengths}")
            incoming = db.incoming(u)
            for p, slots in enumerate(result.B[u]):
                for i, states in enumerate(slots):
                    listed = ",".join(str(q) for q in states)
                    lines.append(f"  B {p} {db.edge_names[incoming[i]]} [{listed}]")
        return "\n".join(lines) + "\n"
