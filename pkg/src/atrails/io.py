"""JSON graph documents with a canonical, byte-stable serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .checkerboard import BLUE, RED, CheckerboardColoring
from .composite import CompositeGraph, Gluing, glue
from .errors import InvalidInput, StructureError
from .surface import EmbeddedGraph, Layout
from .transitions import TransitionSystem, system_from_pairs

FORMAT_VERSION = 1


@dataclass
class Document:
    graph: EmbeddedGraph
    face_colors: CheckerboardColoring | None = None
    systems: dict[str, TransitionSystem] = field(default_factory=dict)
    composite: CompositeGraph | None = None


# -- canonical text ----------------------------------------------------------


def _depth(x):
    if isinstance(x, dict):
        return 1 + max((_depth(v) for v in x.values()), default=0)
    if isinstance(x, list):
        return 1 + max((_depth(v) for v in x), default=0)
    return 0


def _fmt(x, indent):
    if _depth(x) <= 2 or not isinstance(x, (dict, list)):
        return json.dumps(x, separators=(", ", ": "))
    pad = "  " * (indent + 1)
    if isinstance(x, dict):
        items = [f"{pad}{json.dumps(k)}: {_fmt(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    items = [pad + _fmt(v, indent + 1) for v in x]
    return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"


def dumps(doc: dict) -> str:
    return _fmt(doc, 0) + "\n"


# -- objects -> plain data ---------------------------------------------------


def _layout_data(lay: Layout):
    return {"width": lay.width, "height": lay.height,
            "positions": [list(p) for p in lay.positions],
            "p_shift": list(lay.p_shift), "q_shift": list(lay.q_shift)}


def _system_data(g: EmbeddedGraph, T: TransitionSystem):
    return [[list(p) for p in T.pairs_at(g, v)] for v in range(g.num_vertices)]


def graph_data(g: EmbeddedGraph, face_colors=None, systems=None, include_layout=True):
    doc = {
        "format_version": FORMAT_VERSION,
        "genus": g.genus,
        "vertices": [{"id": v, "rotation": list(r)} for v, r in enumerate(g.rotation)],
        "edges": [{"id": e, "half_edges": list(h), "homology": list(d)}
                  for e, (h, d) in enumerate(zip(g.edges, g.decor))],
    }
    if face_colors is not None:
        doc["face_colors"] = list(face_colors.colors)
    if include_layout and g.layout is not None:
        doc["layout"] = _layout_data(g.layout)
    if systems:
        doc["transition_systems"] = {name: _system_data(g, T) for name, T in sorted(systems.items())}
    return doc


def document_data(doc: Document) -> dict:
    data = graph_data(doc.graph, doc.face_colors, doc.systems)
    if doc.composite is not None:
        cg = doc.composite
        data["composite"] = {
            "components": [graph_data(c) for c in cg.components],
            "gluings": [{"face1": gl.face1, "face2": gl.face2, "pi": [list(p) for p in gl.pi]}
                        for gl in cg.gluings],
        }
    return data


def save(doc: Document) -> str:
    return dumps(document_data(doc))


# -- plain data -> objects ---------------------------------------------------


def _require(cond, msg):
    if not cond:
        raise InvalidInput(msg)


def _ints(xs, what):
    _require(isinstance(xs, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in xs),
             f"{what} must be a list of integers")
    return xs


def parse_graph(data) -> EmbeddedGraph:
    _require(isinstance(data, dict), "document must be a JSON object")
    _require(data.get("format_version") == FORMAT_VERSION,
             f"unsupported format_version {data.get('format_version')!r}")
    genus = data.get("genus")
    _require(isinstance(genus, int) and genus >= 1, "genus must be a positive integer")
    verts, edges = data.get("vertices"), data.get("edges")
    _require(isinstance(verts, list) and isinstance(edges, list), "vertices and edges must be lists")
    rotation = []
    for k, v in enumerate(verts):
        _require(isinstance(v, dict) and v.get("id") == k, f"vertex {k} must have id {k}")
        rotation.append(tuple(_ints(v.get("rotation"), f"vertex {k} rotation")))
    pairs, decor = [], []
    for k, e in enumerate(edges):
        _require(isinstance(e, dict) and e.get("id") == k, f"edge {k} must have id {k}")
        h = _ints(e.get("half_edges"), f"edge {k} half_edges")
        _require(len(h) == 2, f"edge {k} needs exactly two half-edges")
        pairs.append(tuple(h))
        decor.append(tuple(_ints(e.get("homology"), f"edge {k} homology")))
    layout = None
    if "layout" in data:
        lay = data["layout"]
        try:
            layout = Layout(lay["width"], lay["height"], tuple(tuple(p) for p in lay["positions"]),
                            tuple(lay["p_shift"]), tuple(lay["q_shift"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed layout: {exc}") from None
        _require(len(layout.positions) == len(rotation), "layout needs one position per vertex")
    return EmbeddedGraph(tuple(rotation), tuple(pairs), tuple(decor), genus, layout)


def parse_colors(g: EmbeddedGraph, colors):
    _require(isinstance(colors, list) and len(colors) == g.num_faces,
             f"face_colors needs one entry per face ({g.num_faces})")
    _require(all(c in (RED, BLUE) for c in colors), "face colors must be 'red' or 'blue'")
    for h in range(g.num_half_edges):
        if colors[g.face_of[h]] == colors[g.face_of[g.twin[h]]]:
            raise InvalidInput(f"edge {g.edge_of[h]} borders two faces of the same color")
    return CheckerboardColoring(tuple(colors))


def parse_system(g: EmbeddedGraph, data, name="system") -> TransitionSystem:
    _require(isinstance(data, list) and len(data) == g.num_vertices,
             f"transition system {name!r} needs one pair list per vertex")
    pairs = []
    for v, ps in enumerate(data):
        _require(isinstance(ps, list), f"{name!r}: vertex {v} entry must be a list of pairs")
        for p in ps:
            _ints(p, f"{name!r} pair")
            _require(len(p) == 2, f"{name!r}: pairs have two half-edges")
            for h in p:
                _require(0 <= h < g.num_half_edges and g.vertex_of[h] == v,
                         f"{name!r}: half-edge {h} is not at vertex {v}")
            pairs.append(tuple(p))
    return system_from_pairs(g, pairs)


def load_data(data) -> Document:
    g = parse_graph(data)
    colors = parse_colors(g, data["face_colors"]) if "face_colors" in data else None
    systems = {}
    ts = data.get("transition_systems", {})
    _require(isinstance(ts, dict), "transition_systems must be an object")
    for name, sd in ts.items():
        systems[name] = parse_system(g, sd, name)
    composite = None
    if "composite" in data:
        comp = data["composite"]
        _require(isinstance(comp, dict), "composite must be an object")
        grids = [parse_graph(c) for c in comp.get("components", [])]
        gluings = []
        for gl in comp.get("gluings", []):
            _require(isinstance(gl, dict), "gluing entries must be objects")
            gluings.append(Gluing(gl["face1"], gl["face2"], tuple(tuple(p) for p in gl["pi"])))
        composite = glue(grids, gluings)
        if composite.graph != g:
            raise StructureError("stored composite graph differs from gluing its components")
        # keep the document's drawing data on the reconstructed composite
        composite = CompositeGraph(g, composite.components, composite.gluings, composite.half_map,
                                   composite.vertex_map, composite.seams, composite._inv)
    return Document(g, colors, systems, composite)


def load(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"not valid JSON: {exc}") from None
    return load_data(data)


def read(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())


def write(path, doc: Document):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(save(doc))
