"""Graphviz export of concept lattices as Hasse diagrams."""

from __future__ import annotations

from ..lattice import ConceptLattice, hasse_covers


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def concept_label(L: ConceptLattice, i: int) -> str:
    """``extent|intent`` with names comma-joined in carrier order."""
    P, c = L.polarity, L[i]
    ext = ",".join(map(str, P.object_names(c.extent)))
    itt = ",".join(map(str, P.feature_names(c.intent)))
    return f"{ext}|{itt}"


def lattice_to_dot(L: ConceptLattice, name: str = "lattice") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(len(L)):
        lines.append(f"  c{i} [label={_quote(concept_label(L, i))}];")
    for lo, hi in hasse_covers(L):
        lines.append(f"  c{lo} -> c{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
