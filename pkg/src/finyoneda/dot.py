"""Graphviz DOT text for Hasse diagrams and stratification maps."""
from __future__ import annotations

import json

from .strata import Proset, StratificationMap, covering_pairs, quotient_to_poset

__all__ = ["hasse_dot", "stratification_dot"]


def _q(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def hasse_dot(P: Proset, name: str = "hasse") -> str:
    """Covering relations of the poset quotient of ``P``, drawn bottom-up."""
    Q, _ = quotient_to_poset(P)
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    for a in Q.carrier:
        lines.append(f"  {_q(a)};")
    for a, b in covering_pairs(Q):
        lines.append(f"  {_q(a)} -> {_q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def stratification_dot(smap: StratificationMap, name: str = "stratification") -> str:
    """Source Hasse diagram, the strata hit in the target, and the map between them.

    The target cluster is the sub-poset of values actually taken.
    """
    _, proj = quotient_to_poset(smap.source)
    hit = sorted(set(smap.mapping.values()))
    target = Proset(hit, [(a, b) for a in hit for b in hit if smap.target.le(a, b)])
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;", "  compound=true;"]
    lines.append('  subgraph "cluster_source" {')
    lines.append('    label="source";')
    for a in smap.source.carrier:
        lines.append(f"    {_q('s:' + a)} [label={_q(a)}];")
    src_strict = [(a, b) for a, b in smap.source.leq if a != b]
    for a, b in sorted(src_strict):
        # covering edges of the preorder; equivalent pairs get both arrows
        if not any(
            (a, c) in smap.source.leq
            and (c, b) in smap.source.leq
            and proj[c] not in (proj[a], proj[b])
            for c in smap.source.carrier
        ):
            lines.append(f"    {_q('s:' + a)} -> {_q('s:' + b)};")
    lines.append("  }")
    lines.append('  subgraph "cluster_target" {')
    lines.append('    label="target";')
    for a in hit:
        lines.append(f"    {_q('t:' + a)} [label={_q(a)}];")
    for a, b in covering_pairs(target):
        lines.append(f"    {_q('t:' + a)} -> {_q('t:' + b)};")
    lines.append("  }")
    for a in smap.source.carrier:
        lines.append(f"  {_q('s:' + a)} -> {_q('t:' + smap.mapping[a])} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
