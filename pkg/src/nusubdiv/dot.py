"""Minimal DOT writer and a reader for the subset this package emits."""

from __future__ import annotations

import re


def _quote(s) -> str:
    s = str(s).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def _attrs(attrs: dict) -> str:
    if not attrs:
        return ""
    body = ", ".join(f"{k}={_quote(v)}" for k, v in sorted(attrs.items()))
    return f" [{body}]"


def render_digraph(name: str, nodes, edges, node_attrs=None, directed=True) -> str:
    """``edges`` is a sequence of ``(u, v, attrs)``; ``node_attrs`` maps node -> dict."""
    node_attrs = node_attrs or {}
    arrow = "->" if directed else "--"
    lines = [f"{'digraph' if directed else 'graph'} {_quote(name)} {{"]
    for v in nodes:
        lines.append(f"  {_quote(v)}{_attrs(node_attrs.get(v, {}))};")
    for u, v, attrs in edges:
        lines.append(f"  {_quote(u)} {arrow} {_quote(v)}{_attrs(attrs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_STR = r'"((?:[^"\\]|\\.)*)"'
_HEADER = re.compile(r"^\s*(digraph|graph)\s+" + _STR + r"\s*\{\s*$")
_NODE = re.compile(r"^\s*" + _STR + r"\s*(\[.*\])?\s*;\s*$")
_EDGE = re.compile(r"^\s*" + _STR + r"\s*(->|--)\s*" + _STR + r"\s*(\[.*\])?\s*;\s*$")
_ATTR = re.compile(r"(\w+)=" + _STR)


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s)


def _parse_attrs(text) -> dict:
    if not text:
        return {}
    return {k: _unquote(v) for k, v in _ATTR.findall(text)}


def parse_dot(text: str) -> dict:
    """Parse DOT produced by :func:`render_digraph`.

    Returns ``{"name", "directed", "nodes": {name: attrs}, "edges": [(u, v, attrs)]}``.
    Raises ``ValueError`` on anything outside that subset.
    """
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty DOT document")
    m = _HEADER.match(lines[0])
    if not m or lines[-1].strip() != "}":
        raise ValueError("not a DOT graph")
    out = {"name": _unquote(m.group(2)), "directed": m.group(1) == "digraph", "nodes": {}, "edges": []}
    for ln in lines[1:-1]:
        em = _EDGE.match(ln)
        if em:
            out["edges"].append((_unquote(em.group(1)), _unquote(em.group(3)), _parse_attrs(em.group(4))))
            continue
        nm = _NODE.match(ln)
        if nm:
            out["nodes"][_unquote(nm.group(1))] = _parse_attrs(nm.group(2))
            continue
        raise ValueError(f"unparseable DOT line: {ln!r}")
    return out
