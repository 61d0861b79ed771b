"""DOT and GraphML serialization with deterministic node ordering.

Nodes are emitted in lexicographic order and edges in their stored sorted
order, so identical networks serialize to identical bytes.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Optional, Union

from .ingest import ActorRegistry
from .model import Codebook
from .network import AffiliationNetwork, ProjectedNetwork

Network = Union[AffiliationNetwork, ProjectedNetwork]


def _dot_quote(value) -> str:
    text = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def _node_rows(net: Network, codebook: Optional[Codebook],
               registry: Optional[ActorRegistry]) -> list[tuple[str, dict]]:
    rows: list[tuple[str, dict]] = []
    if isinstance(net, AffiliationNetwork):
        for name in sorted(net.actor_nodes):
            attrs = {"kind": "actor"}
            actor = registry.get(name) if registry is not None else None
            if actor is not None:
                attrs["entity"] = actor.entity_kind.value
                if actor.party:
                    attrs["party"] = actor.party
            rows.append((f"actor:{name}", attrs))
        for code in sorted(net.category_nodes):
            attrs = {"kind": "category", "major_class": str((code // 100) * 100)}
            if codebook is not None and code in codebook:
                attrs["label"] = codebook.label(code)
            rows.append((f"category:{code}", attrs))
    else:
        for name in sorted(net.nodes):
            attrs = {"kind": net.side.value}
            if net.side.value == "category" and codebook is not None:
                try:
                    code = int(name)
                except ValueError:
                    code = None
                if code is not None:
                    attrs["major_class"] = str((code // 100) * 100)
                    if code in codebook:
                        attrs["label"] = codebook.label(code)
            elif net.side.value == "actor" and registry is not None:
                actor = registry.get(name)
                if actor is not None:
                    attrs["entity"] = actor.entity_kind.value
                    if actor.party:
                        attrs["party"] = actor.party
            rows.append((name, attrs))
    return rows


def _edge_rows(net: Network) -> list[tuple[str, str, dict]]:
    if isinstance(net, AffiliationNetwork):
        return [(f"actor:{e.actor}", f"category:{e.category}",
                 {"polarity": e.polarity.value, "weight": str(e.weight)})
                for e in net.edges]
    return [(e.u, e.v, {"weight": str(e.weight), "mode": net.mode.value})
            for e in net.edges]


def to_dot(net: Network, codebook: Optional[Codebook] = None,
           registry: Optional[ActorRegistry] = None,
           name: str = "claims") -> str:
    lines = [f"graph {_dot_quote(name)} {{"]
    for node, attrs in _node_rows(net, codebook, registry):
        attr_text = ", ".join(f"{k}={_dot_quote(v)}" for k, v in attrs.items())
        lines.append(f"  {_dot_quote(node)} [{attr_text}];")
    for u, v, attrs in _edge_rows(net):
        attr_text = ", ".join(f"{k}={_dot_quote(v)}" for k, v in attrs.items())
        lines.append(f"  {_dot_quote(u)} -- {_dot_quote(v)} [{attr_text}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def to_graphml(net: Network, codebook: Optional[Codebook] = None,
               registry: Optional[ActorRegistry] = None) -> str:
    node_rows = _node_rows(net, codebook, registry)
    edge_rows = _edge_rows(net)
    node_attr_names = sorted({k for _, attrs in node_rows for k in attrs})
    edge_attr_names = sorted({k for _, _, attrs in edge_rows for k in attrs})

    root = ET.Element("graphml", xmlns=_GRAPHML_NS)
    key_ids: dict[tuple[str, str], str] = {}
    for i, attr in enumerate(node_attr_names):
        key_id = f"dn{i}"
        key_ids[("node", attr)] = key_id
        ET.SubElement(root, "key", id=key_id, **{
            "for": "node", "attr.name": attr, "attr.type": "string"})
    for i, attr in enumerate(edge_attr_names):
        key_id = f"de{i}"
        key_ids[("edge", attr)] = key_id
        ET.SubElement(root, "key", id=key_id, **{
            "for": "edge", "attr.name": attr, "attr.type": "string"})

    graph = ET.SubElement(root, "graph", id="G", edgedefault="undirected")
    for node, attrs in node_rows:
        el = ET.SubElement(graph, "node", id=node)
        for attr in node_attr_names:
            if attr in attrs:
                data = ET.SubElement(el, "data", key=key_ids[("node", attr)])
                data.text = attrs[attr]
    for i, (u, v, attrs) in enumerate(edge_rows):
        el = ET.SubElement(graph, "edge", id=f"e{i}", source=u, target=v)
        for attr in edge_attr_names:
            if attr in attrs:
                data = ET.SubElement(el, "data", key=key_ids[("edge", attr)])
                data.text = attrs[attr]

    ET.indent(root)
    body = ET.tostring(root, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"
