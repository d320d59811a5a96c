"""
The JSON document format shared by fixtures, the command line and dumps.

Every document is a JSON object with a ``kind`` tag and the prime ``p``.
Matrices are ``{"rows": r, "cols": c, "entries": [...]}`` row-major with
integers in [0, p).  Pi windows key their dimensions by ``"i,j"`` and their
maps by ``"e:i,j"`` / ``"m:i,j"``.

Serialization is canonical (fixed key order, sorted cells, matrices on one
line), so ``serialize(parse(text)) == text`` for every serialized text.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Dict

from .beilinson import PiWindow, URoof
from .errors import IndProError, WindowError
from .harness import ThreeSquaresInstance
from .indices import BicofinalMap, CofinalMap
from .linalg import GF, Mat, SesTriple, Square
from .windows import IndWindow, ProRoof, ProWindow, SRoof

__all__ = [
    "KINDS",
    "Document",
    "DocumentError",
    "DocumentSyntaxError",
    "DocumentSemanticError",
    "parse",
    "serialize",
    "to_document",
    "load",
    "dump",
]

KINDS = ("ind_window", "pro_window", "pi_window", "roof", "u_roof", "ses", "three_squares")


class DocumentError(IndProError):
    """A document could not be read."""


class DocumentSyntaxError(DocumentError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DocumentSemanticError(DocumentError):
    def __init__(self, message: str, invariant: str, where=None):
        loc = f" at {where}" if where is not None else ""
        super().__init__(f"invariant '{invariant}' violated{loc}: {message}")
        self.invariant = invariant
        self.where = where


@dataclass(frozen=True)
class Document:
    kind: str
    p: int
    payload: Any

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DocumentSemanticError(f"unknown kind {self.kind!r}", "kind")


def to_document(obj) -> Document:
    """Wrap a library object in a Document of the matching kind."""
    for cls, kind in ((IndWindow, "ind_window"), (ProWindow, "pro_window"),
                      (PiWindow, "pi_window"), (SRoof, "roof"), (ProRoof, "roof"),
                      (URoof, "u_roof"), (SesTriple, "ses"),
                      (ThreeSquaresInstance, "three_squares")):
        if isinstance(obj, cls):
            return Document(kind, _field_of(obj).p, obj)
    raise TypeError(f"no document kind for {type(obj).__name__}")


def _field_of(obj):
    if isinstance(obj, (IndWindow, ProWindow, PiWindow)):
        return obj.field
    if isinstance(obj, (SRoof, ProRoof, URoof)):
        return obj.source.field
    if isinstance(obj, SesTriple):
        return obj.mono.field
    return obj.first.top.field


# ---------------------------------------------------------------------------
# Encoding


def _mat(m: Mat) -> Dict[str, Any]:
    return {"rows": m.rows, "cols": m.cols, "entries": [int(x) for x in m.entries]}


def _cell_key(c) -> str:
    return f"{c[0]},{c[1]}"


def _encode(kind: str, p: int, obj) -> Dict[str, Any]:
    out: Dict[str, Any] = {"kind": kind, "p": p}
    if kind in ("ind_window", "pro_window"):
        out["dims"] = list(obj.dims)
        out["maps"] = [_mat(m) for m in obj.maps]
    elif kind == "pi_window":
        out["lo"], out["hi"] = obj.lo, obj.hi
        out["dims"] = {_cell_key(c): obj.dims[c] for c in obj.cells()}
        maps = {}
        for c in obj.cells():
            if c in obj.epis:
                maps["e:" + _cell_key(c)] = _mat(obj.epis[c])
            if c in obj.monos:
                maps["m:" + _cell_key(c)] = _mat(obj.monos[c])
        out["maps"] = maps
    elif kind == "roof":
        side = "ind" if isinstance(obj, SRoof) else "pro"
        out["side"] = side
        out["source"] = _encode(f"{side}_window", p, obj.source)
        out["target"] = _encode(f"{side}_window", p, obj.target)
        out["phi"] = list(obj.phi.values)
        out["components"] = [_mat(m) for m in obj.components]
    elif kind == "u_roof":
        out["source"] = _encode("pi_window", p, obj.source)
        out["target"] = _encode("pi_window", p, obj.target)
        out["phi"] = {"lo": obj.phi.lo, "values": list(obj.phi.values)}
        out["components"] = {_cell_key(c): _mat(obj.components[c]) for c in obj.source.cells()}
    elif kind == "ses":
        out["mono"], out["epi"] = _mat(obj.mono), _mat(obj.epi)
    elif kind == "three_squares":
        for name in ("first", "second", "third"):
            sq = getattr(obj, name)
            out[name] = {e: _mat(getattr(sq, e)) for e in ("top", "left", "right", "bottom")}
        for name in ("ses_x", "ses_y", "ses_t", "ses_z"):
            t = getattr(obj, name)
            out[name] = {"mono": _mat(t.mono), "epi": _mat(t.epi)}
    return out


def _is_matrix(v) -> bool:
    return isinstance(v, dict) and list(v) == ["rows", "cols", "entries"]


def _render(v, indent: int) -> str:
    pad = "  " * indent
    if _is_matrix(v) or (isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)):
        return json.dumps(v, separators=(", ", ": "))
    if isinstance(v, dict):
        if not v:
            return "{}"
        inner = [f'{pad}  {json.dumps(k)}: {_render(x, indent + 1)}' for k, x in v.items()]
        return "{\n" + ",\n".join(inner) + "\n" + pad + "}"
    if isinstance(v, list):
        inner = [f"{pad}  {_render(x, indent + 1)}" for x in v]
        return "[\n" + ",\n".join(inner) + "\n" + pad + "]"
    return json.dumps(v)


def serialize(doc: Document) -> str:
    return _render(_encode(doc.kind, doc.p, doc.payload), 0) + "\n"


def dump(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(to_document(obj)))


# ---------------------------------------------------------------------------
# Decoding

_CELL = re.compile(r"^(-?\d+),(-?\d+)$")
_MAP = re.compile(r"^([em]):(-?\d+),(-?\d+)$")


class _Reader:
    """Decoding state: the field and a path for error messages."""

    def __init__(self, p: int):
        self.p = p
        self.F = GF(p)

    def need(self, d: dict, key: str, where: str, typ=None):
        if not isinstance(d, dict):
            raise DocumentSemanticError(f"{where} must be an object", "structure", where)
        if key not in d:
            raise DocumentSemanticError(f"missing field '{key}'", "structure", where)
        v = d[key]
        if typ is not None and not _is(v, typ):
            raise DocumentSemanticError(f"field '{key}' has the wrong type", "structure",
                                        f"{where}.{key}")
        return v

    def mat(self, v, where: str) -> Mat:
        if not isinstance(v, dict):
            raise DocumentSemanticError("matrix must be an object", "matrix", where)
        r = self.need(v, "rows", where, int)
        c = self.need(v, "cols", where, int)
        e = self.need(v, "entries", where, list)
        if r < 0 or c < 0:
            raise DocumentSemanticError("negative matrix shape", "matrix_shape", where)
        if len(e) != r * c:
            raise DocumentSemanticError(f"{len(e)} entries for a {r}x{c} matrix",
                                        "entry_count", where)
        for k, x in enumerate(e):
            if not _is(x, int) or not 0 <= x < self.p:
                raise DocumentSemanticError(f"entry {x!r} is not a residue in [0, {self.p})",
                                            "entry_range", f"{where}[{k}]")
        return Mat(self.F, r, c, e)

    def cofinal(self, v, where: str) -> CofinalMap:
        if not isinstance(v, list) or not v or not all(_is(x, int) for x in v):
            raise DocumentSemanticError("phi must be a nonempty list of integers", "phi", where)
        phi = CofinalMap(tuple(v))
        if not phi.is_cofinal():
            raise DocumentSemanticError("phi is not nondecreasing", "cofinal", where)
        return phi

    def bicofinal(self, v, where: str) -> BicofinalMap:
        lo = self.need(v, "lo", where, int)
        vals = self.need(v, "values", where, list)
        if not vals or not all(_is(x, int) for x in vals):
            raise DocumentSemanticError("phi values must be integers", "phi", where)
        phi = BicofinalMap(lo, tuple(vals))
        if not phi.is_bicofinal():
            raise DocumentSemanticError("phi is not nondecreasing", "cofinal", where)
        return phi


def _is(v, typ) -> bool:
    if typ is int:
        return isinstance(v, int) and not isinstance(v, bool)
    return isinstance(v, typ)


def _wrap_window_error(exc: WindowError, where: str):
    loc = exc.where if exc.where is not None else where
    return DocumentSemanticError(str(exc), exc.invariant or "window", loc)


def _decode(d: dict, where: str = "$"):
    if not isinstance(d, dict):
        raise DocumentSemanticError("a document must be a JSON object", "structure", where)
    kind = d.get("kind")
    if kind not in KINDS:
        raise DocumentSemanticError(f"unknown kind {kind!r}", "kind", where)
    p = d.get("p")
    if not _is(p, int):
        raise DocumentSemanticError("field 'p' must be an integer", "structure", where)
    try:
        R = _Reader(p)
    except ValueError as exc:
        raise DocumentSemanticError(str(exc), "prime", where) from None
    try:
        return Document(kind, p, _decode_payload(kind, d, R, where))
    except WindowError as exc:
        raise _wrap_window_error(exc, where) from None
    except DocumentError:
        raise
    except IndProError as exc:
        raise DocumentSemanticError(str(exc), type(exc).__name__, where) from None


def _decode_payload(kind: str, d: dict, R: _Reader, where: str):
    if kind in ("ind_window", "pro_window"):
        dims = R.need(d, "dims", where, list)
        if not all(_is(x, int) for x in dims):
            raise DocumentSemanticError("dims must be integers", "dims", where)
        maps = [R.mat(m, f"{where}.maps[{k}]") for k, m in enumerate(R.need(d, "maps", where, list))]
        cls = IndWindow if kind == "ind_window" else ProWindow
        return cls(R.F, dims, maps)
    if kind == "pi_window":
        lo = R.need(d, "lo", where, int)
        hi = R.need(d, "hi", where, int)
        dims = {}
        for k, v in R.need(d, "dims", where, dict).items():
            m = _CELL.match(k)
            if not m or not _is(v, int):
                raise DocumentSemanticError(f"bad dimension entry {k!r}", "dims", k)
            dims[(int(m.group(1)), int(m.group(2)))] = v
        epis, monos = {}, {}
        for k, v in R.need(d, "maps", where, dict).items():
            m = _MAP.match(k)
            if not m:
                raise DocumentSemanticError(f"bad map key {k!r}", "map_key", k)
            cell = (int(m.group(2)), int(m.group(3)))
            (epis if m.group(1) == "e" else monos)[cell] = R.mat(v, f"{where}.maps.{k}")
        return PiWindow(R.F, lo, hi, dims, epis, monos)
    if kind == "roof":
        side = R.need(d, "side", where, str)
        if side not in ("ind", "pro"):
            raise DocumentSemanticError(f"side must be 'ind' or 'pro', not {side!r}", "side", where)
        src = _sub(d, "source", f"{side}_window", R, where)
        tgt = _sub(d, "target", f"{side}_window", R, where)
        phi = R.cofinal(R.need(d, "phi", where), f"{where}.phi")
        comps = [R.mat(m, f"{where}.components[{k}]")
                 for k, m in enumerate(R.need(d, "components", where, list))]
        return (SRoof if side == "ind" else ProRoof)(src, tgt, phi, comps)
    if kind == "u_roof":
        src = _sub(d, "source", "pi_window", R, where)
        tgt = _sub(d, "target", "pi_window", R, where)
        phi = R.bicofinal(R.need(d, "phi", where, dict), f"{where}.phi")
        comps = {}
        for k, v in R.need(d, "components", where, dict).items():
            m = _CELL.match(k)
            if not m:
                raise DocumentSemanticError(f"bad component key {k!r}", "cell_key", k)
            comps[(int(m.group(1)), int(m.group(2)))] = R.mat(v, f"{where}.components.{k}")
        return URoof(src, tgt, phi, comps)
    if kind == "ses":
        return SesTriple(R.mat(R.need(d, "mono", where), f"{where}.mono"),
                         R.mat(R.need(d, "epi", where), f"{where}.epi"))
    if kind == "three_squares":
        sqs = {}
        for name in ("first", "second", "third"):
            s = R.need(d, name, where, dict)
            sqs[name] = Square(**{e: R.mat(R.need(s, e, f"{where}.{name}"), f"{where}.{name}.{e}")
                                  for e in ("top", "left", "right", "bottom")})
        ses = {}
        for name in ("ses_x", "ses_y", "ses_t", "ses_z"):
            s = R.need(d, name, where, dict)
            ses[name] = SesTriple(R.mat(R.need(s, "mono", f"{where}.{name}"), f"{where}.{name}.mono"),
                                  R.mat(R.need(s, "epi", f"{where}.{name}"), f"{where}.{name}.epi"))
        return ThreeSquaresInstance(**sqs, **ses)
    raise AssertionError(kind)


def _sub(d, key, kind, R: _Reader, where):
    sub = R.need(d, key, where, dict)
    if sub.get("kind", kind) != kind or sub.get("p", R.p) != R.p:
        raise DocumentSemanticError(f"{key} must be a {kind} over GF({R.p})", "structure",
                                    f"{where}.{key}")
    return _decode(dict(sub, kind=kind, p=R.p), f"{where}.{key}").payload


def parse(text: str) -> Document:
    """Parse document text; syntax errors carry line and column."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return _decode(d)


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
