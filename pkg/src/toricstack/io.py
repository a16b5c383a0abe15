"""JSON documents: parsing input envelopes and serializing reports.

Every input file is one envelope::

    {"format_version": 1, "kind": "monoid" | "morphism" | "action" | "fan",
     "payload": {...}}

Unknown fields are rejected and every error names the offending field.
Indices inside files are 1-based. Integers beyond 2^53 - 1 in absolute value
are written as decimal strings and read back as integers.
"""
import json
import re
from contextlib import contextmanager
from typing import Any, Dict, List, Tuple

from .errors import InputError, NotSaturated
from .fans import StackyFan, validate_stacky_fan
from .invariants import DiagonalAction
from .lattice.groups import AbelianGroup
from .lattice.hilbert import is_in_monoid
from .lattice.matrix import dot
from .monoids import (
    MonoidMorphism,
    ToricMonoid,
    embedded_monoid,
    monoid_from_generators,
    to_free,
)

FORMAT_VERSION = 1
KINDS = ("monoid", "morphism", "action", "fan")
SAFE_INT = 2 ** 53 - 1
_INT_STRING = re.compile(r"^-?\d+$")


# -- JSON with big integers -----------------------------------------------------------

def encode(value: Any) -> Any:
    """Replace integers outside the IEEE-safe range by decimal strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > SAFE_INT else value
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def decode(value: Any) -> Any:
    """Inverse of ``encode``: decimal strings become integers again."""
    if isinstance(value, str) and _INT_STRING.match(value) and abs(int(value)) > SAFE_INT:
        return int(value)
    if isinstance(value, dict):
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v) for v in value]
    return value


def dumps(report: Dict[str, Any]) -> str:
    """Indented JSON; vectors stay on one line so matrices read row by row."""
    return _layout(encode(report), "") + "\n"


def _layout(value: Any, pad: str) -> str:
    inner = pad + "  "
    if isinstance(value, dict) and value:
        items = [f"{inner}{json.dumps(k)}: {_layout(v, inner)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and any(isinstance(v, (list, dict)) for v in value):
        items = [inner + _layout(v, inner) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def loads(text: str) -> Any:
    return decode(json.loads(text))


# -- field validation -------------------------------------------------------------------

def _fields(obj, where: str, required: Tuple[str, ...], optional: Tuple[str, ...] = ()) -> Dict[str, Any]:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise InputError(f"{where}.{unknown[0]}: unknown field")
    for key in required:
        if key not in obj:
            raise InputError(f"{where}.{key}: missing field")
    return obj


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    return x


def _vector(x, where: str, length: int = None) -> Tuple[int, ...]:
    if not isinstance(x, list):
        raise InputError(f"{where}: expected a list of integers")
    v = tuple(_int(c, f"{where}[{i}]") for i, c in enumerate(x))
    if length is not None and len(v) != length:
        raise InputError(f"{where}: expected {length} entries, got {len(v)}")
    return v


def _vectors(x, where: str, length: int = None) -> List[Tuple[int, ...]]:
    if not isinstance(x, list):
        raise InputError(f"{where}: expected a list of vectors")
    vs = [_vector(v, f"{where}[{i}]", length) for i, v in enumerate(x)]
    if length is None and vs and any(len(v) != len(vs[0]) for v in vs):
        raise InputError(f"{where}: vectors of different lengths")
    return vs


@contextmanager
def _field(where: str):
    """Prefix library input errors with the field they came from."""
    try:
        yield
    except InputError as exc:
        exc.args = (f"{where}: {exc}",)
        raise


# -- payloads ------------------------------------------------------------------------------

def parse_group(obj, where: str) -> AbelianGroup:
    obj = _fields(obj, where, ("free_rank",), ("torsion",))
    free = _int(obj["free_rank"], f"{where}.free_rank")
    tors = _vector(obj.get("torsion", []), f"{where}.torsion")
    try:
        return AbelianGroup(free, tors)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def parse_monoid(obj, where: str = "payload") -> ToricMonoid:
    obj = _fields(obj, where, ("generators",), ("rank", "mode"))
    mode = obj.get("mode", "saturate")
    if mode not in ("saturate", "strict"):
        raise InputError(f"{where}.mode: expected 'saturate' or 'strict'")
    if "rank" in obj:
        rank = _int(obj["rank"], f"{where}.rank")
        gens = _vectors(obj["generators"], f"{where}.generators", rank)
        with _field(f"{where}.generators"):
            return monoid_from_generators(rank, gens, mode)
    gens = _vectors(obj["generators"], f"{where}.generators")
    with _field(f"{where}.generators"):
        p = embedded_monoid(gens)
        if mode == "strict":
            coords = [p.from_ambient(g) for g in gens]
            missing = [h for h in p.generators if not is_in_monoid(h, coords)]
            if missing:
                raise NotSaturated(f"{p.to_ambient(missing[0])} lies in the saturation but not in the monoid")
        return p


def parse_morphism(obj, where: str = "payload") -> MonoidMorphism:
    """Morphism into ``N^k`` given by ``k`` functionals in the source's ambient coordinates."""
    obj = _fields(obj, where, ("source", "matrix"))
    p = parse_monoid(obj["source"], f"{where}.source")
    rows = _vectors(obj["matrix"], f"{where}.matrix", p.ambient_rank)
    if p.embedding is not None:
        rows = [tuple(dot(r, b) for b in p.embedding) for r in rows]
    with _field(f"{where}.matrix"):
        return to_free(p, rows)


def parse_action(obj, where: str = "payload") -> DiagonalAction:
    obj = _fields(obj, where, ("group", "weights"))
    g = parse_group(obj["group"], f"{where}.group")
    weights = _vectors(obj["weights"], f"{where}.weights", g.ngens)
    with _field(f"{where}.weights"):
        return DiagonalAction(g, tuple(weights))


def parse_fan(obj, where: str = "payload") -> StackyFan:
    obj = _fields(obj, where, ("N", "rays", "cones"), ("beta", "extra"))
    g = parse_group(obj["N"], f"{where}.N")
    rays = _vectors(obj["rays"], f"{where}.rays", g.free_rank)
    if not isinstance(obj["cones"], list):
        raise InputError(f"{where}.cones: expected a list of ray index lists")
    cones = []
    for k, c in enumerate(obj["cones"]):
        idx = _vector(c, f"{where}.cones[{k}]")
        for i in idx:
            if not 1 <= i <= len(rays):
                raise InputError(f"{where}.cones[{k}]: ray index {i} outside 1..{len(rays)}")
        cones.append([i - 1 for i in idx])
    beta = _vectors(obj["beta"], f"{where}.beta", g.ngens) if "beta" in obj else None
    extra = _vectors(obj.get("extra", []), f"{where}.extra", g.ngens)
    with _field(where):
        return validate_stacky_fan(g, rays, cones, beta, extra)


PARSERS = {"monoid": parse_monoid, "morphism": parse_morphism, "action": parse_action, "fan": parse_fan}


def parse_envelope(doc) -> Tuple[str, Any]:
    doc = _fields(doc, "document", ("format_version", "kind", "payload"))
    if doc["format_version"] != FORMAT_VERSION or isinstance(doc["format_version"], bool):
        raise InputError(f"format_version: expected {FORMAT_VERSION}, got {doc['format_version']!r}")
    kind = doc["kind"]
    if kind not in KINDS:
        raise InputError(f"kind: expected one of {', '.join(KINDS)}, got {kind!r}")
    return kind, PARSERS[kind](doc["payload"])


def load_file(path: str, expected: Tuple[str, ...] = KINDS) -> Tuple[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = loads(fh.read())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    kind, obj = parse_envelope(doc)
    if kind not in expected:
        raise InputError(f"kind: this command needs {' or '.join(expected)}, got {kind!r}")
    return kind, obj


def envelope(kind: str, payload: Dict[str, Any]) -> Dict[str, Any]:
    return {"format_version": FORMAT_VERSION, "kind": kind, "payload": payload}


# -- text rendering ----------------------------------------------------------------------

def flatten(report: Dict[str, Any], prefix: str = "") -> List[Tuple[str, Any]]:
    """``(dotted.key, leaf)`` pairs; lists of objects get an index segment."""
    out = []
    for key, value in report.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.extend(flatten(value, name + "."))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            for i, item in enumerate(value, 1):
                out.extend(flatten(item, f"{name}.{i}."))
        else:
            out.append((name, value))
    return out


def render_text(report: Dict[str, Any]) -> str:
    lines = []
    for key, value in flatten(encode(report)):
        shown = value if isinstance(value, str) and not _reads_as_json(value) else _compact(value)
        lines.append(f"{key}: {shown}")
    return "\n".join(lines) + "\n"


def _compact(value) -> str:
    return json.dumps(value, separators=(",", " "), ensure_ascii=False)


def _reads_as_json(s: str) -> bool:
    try:
        json.loads(s)
    except json.JSONDecodeError:
        return False
    return True


def parse_text(text: str) -> List[Tuple[str, Any]]:
    """Read ``render_text`` output back into ``(key, value)`` pairs."""
    out = []
    for line in text.splitlines():
        key, _, raw = line.partition(": ")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        out.append((key, decode(value)))
    return out
