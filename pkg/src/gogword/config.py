"""YAML schema files.

A schema file has the top-level keys ``name``, ``base``, ``vertices``,
``edges`` and optionally ``admissible``::

    base: u
    vertices:
      u: {gens: [a], oracle: free(1)}
      v: {gens: [b], oracle: free(1)}
    edges:
      - {name: t, reverse: T, from: u, to: v, in_tree: true}
      - {name: T, reverse: t, from: v, to: u, in_tree: true}

Oracle kinds: ``free(r)``, ``abelian(r)``, ``product(a, b)``,
``finite_index(table-file, inner)``, ``dehn(rules-file)`` and
``central_extension(base)``; ``free-rank-N`` and ``abelian-rank-N`` are
accepted as aliases.  For ``product`` the vertex generators are split between
the factors in order; for ``central_extension`` the last generator is the
central letter.  File names are resolved relative to the schema file.

Each ``admissible`` entry gives ``c``, ``o``, ``cosets``, ``coset_mul``
(``"h,h2": [k, l, h3]``), ``conj`` (``h: [k, l, h2]``), ``K`` and
``automaton`` (``cyclic(letter)`` or an automaton file; default ``cyclic(o)``).
"""

from __future__ import annotations

import re
from pathlib import Path

import yaml

from .edges import ONE, EdgeFrame
from .hyperbolic import (
    CentralExtension, CentralExtensionOracle, DehnOracle, cyclic_automaton, free_dehn_system, load_automaton,
    load_rules,
)
from .oracles import AbelianOracle, CosetTable, FiniteIndexOracle, FreeOracle, ProductOracle, VertexOracle
from .words import Edge, GroupSchema, SchemaError


# -- oracle spec mini-language ----------------------------------------------

_ALIAS = re.compile(r"^(free|abelian)-rank-(\d+)$")


def parse_oracle_spec(text: str):
    """Parse ``kind(arg, ...)`` into nested ``(kind, [args])`` tuples.

    Bare arguments (numbers, file names) are returned as strings.
    """
    text = text.strip()
    m = _ALIAS.match(text)
    if m:
        return (m.group(1), [m.group(2)])
    pos = 0

    def parse():
        nonlocal pos
        start = pos
        while pos < len(text) and text[pos] not in "(),":
            pos += 1
        head = text[start:pos].strip()
        if pos < len(text) and text[pos] == "(":
            pos += 1
            args = []
            while True:
                args.append(parse())
                if pos >= len(text):
                    raise SchemaError(f"unbalanced parentheses in oracle spec {text!r}")
                if text[pos] == ",":
                    pos += 1
                    continue
                if text[pos] == ")":
                    pos += 1
                    break
            alias = _ALIAS.match(head)
            return (head, args) if alias is None else (alias.group(1), [alias.group(2)])
        alias = _ALIAS.match(head)
        if alias:
            return (alias.group(1), [alias.group(2)])
        return head

    tree = parse()
    if pos != len(text):
        raise SchemaError(f"trailing text in oracle spec {text!r}")
    if isinstance(tree, str):
        raise SchemaError(f"oracle spec {text!r} is not of the form kind(params)")
    return tree


def _rank(tree, base_dir: Path) -> int:
    kind, args = tree
    if kind in ("free", "abelian"):
        return int(args[0])
    if kind == "product":
        return _rank(args[0], base_dir) + _rank(args[1], base_dir)
    if kind == "central_extension":
        return _rank(args[0], base_dir) + 1
    if kind == "dehn":
        return len(_load_rules(args[0], base_dir).alphabet) // 2
    if kind == "finite_index":
        return len(_load_table(args[0], base_dir).gens)
    raise SchemaError(f"unknown oracle kind {kind!r}")


def _load_rules(name, base_dir: Path):
    return load_rules(base_dir / name)


def _load_table(name, base_dir: Path) -> CosetTable:
    path = base_dir / name
    try:
        data = yaml.safe_load(path.read_text())
        return CosetTable.from_permutations(data["gens"], data["perms"], data.get("identity", "e"))
    except (OSError, KeyError, TypeError) as exc:
        raise SchemaError(f"cannot read coset table {str(path)!r}: {exc}") from None


def build_oracle(spec, gens, base_dir=".") -> VertexOracle:
    """Build the oracle described by ``spec`` over the generator names ``gens``."""
    base_dir = Path(base_dir)
    tree = parse_oracle_spec(spec) if isinstance(spec, str) else spec
    gens = tuple(gens)
    kind, args = tree
    if kind not in ("free", "abelian", "product", "finite_index", "dehn", "central_extension"):
        raise SchemaError(f"unknown oracle kind {kind!r}")
    want = _rank(tree, base_dir)
    if want != len(gens):
        raise SchemaError(f"oracle {kind!r} expects {want} generators, vertex declares {len(gens)}")
    if kind == "free":
        return FreeOracle(gens)
    if kind == "abelian":
        return AbelianOracle(gens)
    if kind == "product":
        r = _rank(args[0], base_dir)
        return ProductOracle(build_oracle(args[0], gens[:r], base_dir), build_oracle(args[1], gens[r:], base_dir))
    if kind == "dehn":
        sys = _load_rules(args[0], base_dir)
        _check_names(sys.alphabet, gens, "rules file")
        return DehnOracle(sys)
    if kind == "finite_index":
        table = _load_table(args[0], base_dir)
        _check_names(table.alphabet, gens, "coset table")
        inner = build_oracle(args[1], table.subgroup_gens, base_dir)
        return FiniteIndexOracle(table, inner)
    # central_extension
    base_kind = args[0][0]
    if base_kind == "free":
        sys = free_dehn_system(gens[:-1])
    elif base_kind == "dehn":
        sys = _load_rules(args[0][1][0], base_dir)
        _check_names(sys.alphabet, gens[:-1], "rules file")
    else:
        raise SchemaError("central_extension base must be free(r) or dehn(file)")
    return CentralExtensionOracle(CentralExtension(sys, gens[-1]))


def _check_names(alphabet, gens, what):
    if not set(gens) <= alphabet:
        raise SchemaError(f"{what} does not use the vertex generators {list(gens)}")


# -- schema --------------------------------------------------------------


def _as_enf(value, where):
    try:
        k, l, h = value
        return int(k), int(l), str(h)
    except (TypeError, ValueError):
        raise SchemaError(f"{where}: expected [k, l, h], got {value!r}") from None


def _parse_frame(name, data, base_dir: Path) -> EdgeFrame:
    if not isinstance(data, dict):
        raise SchemaError(f"admissible entry for {name!r} must be a mapping")
    cosets = [str(h) for h in data.get("cosets", [ONE])]
    coset_mul = {}
    for key, value in (data.get("coset_mul") or {}).items():
        parts = [p.strip() for p in str(key).split(",")]
        if len(parts) != 2:
            raise SchemaError(f"admissible {name!r}: coset_mul key {key!r} must be 'h,h2'")
        coset_mul[tuple(parts)] = _as_enf(value, f"admissible {name!r} coset_mul")
    conj = {str(h): _as_enf(v, f"admissible {name!r} conj") for h, v in (data.get("conj") or {}).items()}
    c = str(data.get("c", "") or "")
    o = str(data.get("o", "") or "")
    spec = str(data.get("automaton", f"cyclic({o})" if o else ""))
    automaton = None
    m = re.match(r"^cyclic\((.+)\)$", spec)
    if m:
        automaton = cyclic_automaton(m.group(1).strip())
    elif spec:
        automaton = load_automaton(base_dir / spec)
    return EdgeFrame(name, c, o, tuple(cosets), coset_mul, conj, int(data.get("K", 1)), automaton, spec)


def schema_from_dict(data: dict, base_dir=".") -> GroupSchema:
    base_dir = Path(base_dir)
    if not isinstance(data, dict):
        raise SchemaError("schema file must be a mapping")
    for key in ("vertices", "edges", "base"):
        if key not in data:
            raise SchemaError(f"schema is missing the {key!r} section")
    vertices = data["vertices"]
    if not isinstance(vertices, dict):
        raise SchemaError("'vertices' must map vertex names to {gens, oracle}")
    vertex_gens, oracles, specs = {}, {}, {}
    for v, vd in vertices.items():
        vd = vd or {}
        vertex_gens[str(v)] = tuple(str(g) for g in vd.get("gens", []))
        if "oracle" in vd:
            specs[str(v)] = str(vd["oracle"])
            oracles[str(v)] = build_oracle(specs[str(v)], vertex_gens[str(v)], base_dir)
    edges = {}
    for ed in data["edges"] or []:
        try:
            e = Edge(str(ed["name"]), str(ed["reverse"]), str(ed["from"]), str(ed["to"]), bool(ed.get("in_tree", False)))
        except (KeyError, TypeError):
            raise SchemaError(f"edge entry {ed!r} needs name, reverse, from and to") from None
        for end in (e.source, e.target):
            if end not in vertex_gens:
                raise SchemaError(f"edge {e.name!r}: dangling reference to undeclared vertex {end!r}")
        if e.name in edges:
            raise SchemaError(f"edge {e.name!r} declared twice")
        edges[e.name] = e
    frames = {}
    for name, fd in (data.get("admissible") or {}).items():
        if str(name) not in edges:
            raise SchemaError(f"admissible entry refers to undeclared edge {name!r}")
        frames[str(name)] = _parse_frame(str(name), fd, base_dir)
    return GroupSchema(tuple(vertex_gens), edges, str(data["base"]), vertex_gens, oracles, frames, specs,
                       str(data.get("name", "")))


def parse_schema(text: str, base_dir=".") -> GroupSchema:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise SchemaError(f"syntax error{where}: {getattr(exc, 'problem', exc)}") from None
    return schema_from_dict(data, base_dir)


def load_schema(path) -> GroupSchema:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read schema {str(path)!r}: {exc.strerror}") from None
    return parse_schema(text, path.parent)


def _frame_to_dict(frame: EdgeFrame) -> dict:
    return {
        "c": frame.c_letter,
        "o": frame.o_letter,
        "cosets": list(frame.cosets),
        "coset_mul": {f"{a},{b}": list(v) for (a, b), v in sorted(frame.coset_mul.items())},
        "conj": {h: list(v) for h, v in sorted(frame.conj_table.items())},
        "K": frame.K,
        "automaton": frame.automaton_spec,
    }


def schema_to_dict(schema: GroupSchema) -> dict:
    out = {
        "name": schema.name,
        "base": schema.base_vertex,
        "vertices": {},
        "edges": [],
    }
    for v in schema.vertices:
        vd = {"gens": list(schema.vertex_gens.get(v, ()))}
        if v in schema.oracle_specs:
            vd["oracle"] = schema.oracle_specs[v]
        out["vertices"][v] = vd
    for name in sorted(schema.edges):
        e = schema.edges[name]
        out["edges"].append({"name": e.name, "reverse": e.reverse, "from": e.source, "to": e.target,
                             "in_tree": e.in_tree})
    if schema.frames:
        out["admissible"] = {name: _frame_to_dict(f) for name, f in sorted(schema.frames.items())}
    return out


def serialize_schema(schema: GroupSchema) -> str:
    return yaml.safe_dump(schema_to_dict(schema), sort_keys=False, default_flow_style=None)
