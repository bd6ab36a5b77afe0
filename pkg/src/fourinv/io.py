"""JSON (de)serialization and parsing of class specifications.

Rationals always travel as "p/q" strings, never as floats.
"""
from __future__ import annotations

import ast
import json
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .lattice import Lattice, Vector
from .manifold import FourManifold


class InputError(ValueError):
    """Malformed user input (as opposed to a violated hypothesis)."""


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise InputError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"not a rational: {s!r}")


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must be an integer, got {x!r}")
    return x


def lattice_to_json(lat: Lattice) -> dict:
    return {"rank": lat.rank, "gram": [list(r) for r in lat.gram]}


def lattice_from_json(obj: Any) -> Lattice:
    if not isinstance(obj, Mapping) or "gram" not in obj:
        raise InputError("lattice must be an object with a 'gram' field")
    gram = obj["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise InputError("gram must be a list of lists")
    rows = [[_int(x, "gram entry") for x in r] for r in gram]
    if "rank" in obj and _int(obj["rank"], "rank") != len(rows):
        raise InputError(f"rank {obj['rank']} does not match gram size {len(rows)}")
    try:
        return Lattice(tuple(tuple(r) for r in rows))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def manifold_to_json(x: FourManifold, classes: Mapping[str, Vector] | None = None) -> dict:
    out: dict[str, Any] = {
        "lattice": lattice_to_json(x.lattice),
        "sw": [{"class": list(k), "value": v} for k, v in sorted(x.sw.items())],
    }
    if classes:
        out["classes"] = {name: list(v) for name, v in sorted(classes.items())}
    return out


def manifold_from_json(obj: Any) -> tuple[FourManifold, dict[str, Vector]]:
    if not isinstance(obj, Mapping):
        raise InputError("manifold must be a JSON object")
    lat = lattice_from_json(obj.get("lattice"))
    entries = obj.get("sw", [])
    if not isinstance(entries, list):
        raise InputError("'sw' must be a list")
    table: dict[Vector, int] = {}
    for e in entries:
        if not isinstance(e, Mapping) or "class" not in e or "value" not in e:
            raise InputError("each sw entry needs 'class' and 'value'")
        k = tuple(_int(a, "class entry") for a in e["class"])
        if k in table:
            raise InputError(f"duplicate sw entry for {list(k)}")
        table[k] = _int(e["value"], "sw value")
    classes = {}
    for name, v in dict(obj.get("classes", {})).items():
        if not str(name).isidentifier():
            raise InputError(f"class name {name!r} is not an identifier")
        classes[str(name)] = tuple(_int(a, "class entry") for a in v)
        if len(classes[str(name)]) != lat.rank:
            raise InputError(f"class {name} has the wrong length")
    try:
        x = FourManifold(lat, table)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return x, classes


def load_manifold(path: str) -> tuple[FourManifold, dict[str, Vector]]:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read manifold from {path}: {exc}") from exc
    return manifold_from_json(obj)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


# --- class specifications --------------------------------------------------------

def _eval_spec(node, classes, rank):
    """Evaluate a restricted arithmetic expression; returns int or vector."""
    if isinstance(node, ast.Expression):
        return _eval_spec(node.body, classes, rank)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) \
            and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in classes:
            raise InputError(f"unknown class name {node.id!r}")
        return tuple(classes[node.id])
    if isinstance(node, ast.List):
        vals = [_eval_spec(e, classes, rank) for e in node.elts]
        if not all(isinstance(v, int) for v in vals):
            raise InputError("inline class arrays must contain integers")
        return tuple(vals)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_spec(node.operand, classes, rank)
        sign = -1 if isinstance(node.op, ast.USub) else 1
        return sign * v if isinstance(v, int) else tuple(sign * a for a in v)
    if isinstance(node, ast.BinOp):
        a = _eval_spec(node.left, classes, rank)
        b = _eval_spec(node.right, classes, rank)
        if isinstance(node.op, (ast.Add, ast.Sub)):
            if isinstance(a, int) != isinstance(b, int):
                raise InputError("cannot add a number to a class")
            s = 1 if isinstance(node.op, ast.Add) else -1
            if isinstance(a, int):
                return a + s * b
            if len(a) != len(b):
                raise InputError("classes of different lengths")
            return tuple(x + s * y for x, y in zip(a, b))
        if isinstance(node.op, ast.Mult):
            if isinstance(a, int) and isinstance(b, int):
                return a * b
            if isinstance(a, int):
                return tuple(a * y for y in b)
            if isinstance(b, int):
                return tuple(b * x for x in a)
            raise InputError("cannot multiply two classes")
    raise InputError(f"unsupported expression in class spec: {ast.dump(node)}")


def parse_class_spec(spec: str, classes: Mapping[str, Sequence[int]], rank: int) -> Vector:
    """An integer array ("[1,0,...]") or an expression like "2*(f1+f2)"."""
    try:
        tree = ast.parse(spec.strip(), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse class spec {spec!r}") from exc
    val = _eval_spec(tree, classes, rank)
    if isinstance(val, int):
        raise InputError(f"class spec {spec!r} evaluates to a number, not a class")
    if len(val) != rank:
        raise InputError(f"class spec {spec!r} has length {len(val)}, expected {rank}")
    return val


def parse_hclass(spec: str, classes: Mapping[str, Sequence[int]], rank: int) -> tuple:
    """A homology class: "r1,...,rn" rationals, or a class spec over named classes."""
    parts = [p for p in spec.split(",")]
    if len(parts) == rank:
        try:
            return tuple(parse_rational(p) for p in parts)
        except InputError:
            pass
    return tuple(Fraction(a) for a in parse_class_spec(spec, classes, rank))
