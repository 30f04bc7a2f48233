"""DOT and JSON rendering of frameworks, rankings and rationals."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Callable, Hashable, Optional

from .abf import AbstractAF
from .gradual import Ranking

DECIMALS = 6


def node_id(label: str) -> str:
    """Stable DOT identifier derived from a canonical label."""
    return "n" + hashlib.sha256(label.encode("utf-8")).hexdigest()[:12]


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(
    af: AbstractAF,
    label: Callable[[Hashable], str],
    ranking: Optional[Ranking] = None,
    name: str = "attacks",
) -> str:
    """Directed graph with one edge per attack; self-attacks become self-loops."""
    labels = [label(n) for n in af.nodes]
    ids = [node_id(x) for x in labels]
    if len(set(ids)) != len(ids):
        raise ValueError("node labels are not unique")
    lines = [f"digraph {name} {{"]
    for i, text in enumerate(labels):
        quoted = _quote(text)
        if ranking is not None:
            quoted = quoted[:-1] + f"\\n{ranking[i]:.{DECIMALS}f}" + '"'
        lines.append(f"  {ids[i]} [label={quoted}];")
    for a, b in af.attacks:
        lines.append(f"  {ids[a]} -> {ids[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def real(x: float) -> float:
    """Round to the fixed number of decimals used in every report."""
    return round(float(x), DECIMALS) + 0.0


def rational(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
