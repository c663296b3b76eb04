"""The ``natfull/1`` JSON instance format.

One file holds algebras, algebra maps, bimodules, corings and coring maps,
each keyed by a string id.  Objects refer to each other by id; ``null`` in
an algebra slot of a bimodule means the ground field.  Matrices are nested
integer lists reduced mod p on load.

Layouts:

* algebra ``{"p", "dim", "mul", "unit"}`` with ``mul[i][j][k]`` the
  coefficient of e_k in e_i e_j;
* morphism ``{"source", "target", "matrix"}`` with ``matrix[i][j]`` the
  coefficient of target basis i in phi(e_j);
* bimodule ``{"left_algebra", "right_algebra", "dim", "left_action",
  "right_action"}``, ``left_action[i]`` the matrix of m -> e_i m;
* coring ``{"base", "carrier", "delta", "epsilon"}`` with ``delta`` of
  shape (n*n, n) in the row index i*n + j of C (x)_K C;
* coring morphism ``{"phi", "Phi", "source_coring", "target_coring"}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .algebra import AlgebraMorphism, FDAlgebra, ground, validate_algebra, validate_morphism
from .corings import Coring, validate_coring
from .cormor import CoringMorphism, validate_coring_morphism
from .errors import ParseError, ValidationError
from .modrep import Bimodule, validate_bimodule

FORMAT_VERSION = "natfull/1"
SECTIONS = ("algebras", "morphisms", "bimodules", "corings", "coring_morphisms")


@dataclass
class InstanceFile:
    p: int
    algebras: Dict[str, FDAlgebra] = field(default_factory=dict)
    morphisms: Dict[str, AlgebraMorphism] = field(default_factory=dict)
    bimodules: Dict[str, Bimodule] = field(default_factory=dict)
    corings: Dict[str, Coring] = field(default_factory=dict)
    coring_morphisms: Dict[str, CoringMorphism] = field(default_factory=dict)

    def ids(self) -> List[str]:
        return [k for s in SECTIONS for k in getattr(self, s)]

    def only(self, section: str, key: Optional[str] = None):
        """The object ``key`` of a section, or its sole object when key is None."""
        objs = getattr(self, section)
        if key is not None:
            if key not in objs:
                raise ParseError(f"no {section[:-1]} with id {key!r}; have {sorted(objs)}")
            return objs[key]
        if len(objs) != 1:
            raise ParseError(f"expected exactly one entry in {section!r}, found {len(objs)}; pass --id")
        return next(iter(objs.values()))


# -- encoding -------------------------------------------------------------------------------


def _ints(a) -> list:
    return np.asarray(a, dtype=np.int64).tolist()


def _algebra_ref(inst: InstanceFile, a: FDAlgebra) -> Optional[str]:
    if a.dim == 1 and a == ground(a.p) and not any(v is a for v in inst.algebras.values()):
        return None
    for k, v in inst.algebras.items():
        if v is a:
            return k
    for k, v in inst.algebras.items():
        if v == a:
            return k
    raise KeyError(f"algebra {a!r} is not registered in the instance")


def _bimodule_ref(inst: InstanceFile, m: Bimodule) -> str:
    for k, v in inst.bimodules.items():
        if v is m:
            return k
    raise KeyError(f"bimodule {m!r} is not registered in the instance")


def encode_algebra(a: FDAlgebra) -> dict:
    return {"p": a.p, "dim": a.dim, "mul": _ints(a.mul), "unit": _ints(a.unit), "name": a.name}


def to_json(inst: InstanceFile) -> dict:
    """Plain-data form; every referenced algebra or bimodule must be registered."""
    out: dict = {"version": FORMAT_VERSION, "p": inst.p}
    out["algebras"] = {k: encode_algebra(a) for k, a in inst.algebras.items()}
    out["morphisms"] = {
        k: {"source": _algebra_ref(inst, m.source), "target": _algebra_ref(inst, m.target), "matrix": _ints(m.matrix)}
        for k, m in inst.morphisms.items()
    }
    out["bimodules"] = {
        k: {
            "left_algebra": _algebra_ref(inst, m.left),
            "right_algebra": _algebra_ref(inst, m.right),
            "dim": m.dim,
            "left_action": _ints(m.left_action),
            "right_action": _ints(m.right_action),
            "name": m.name,
        }
        for k, m in inst.bimodules.items()
    }
    out["corings"] = {
        k: {
            "base": _algebra_ref(inst, c.base),
            "carrier": _bimodule_ref(inst, c.carrier),
            "delta": _ints(c.delta),
            "epsilon": _ints(c.epsilon),
            "name": c.name,
        }
        for k, c in inst.corings.items()
    }

    def coring_ref(c):
        return next(k for k, v in inst.corings.items() if v is c)

    def morphism_ref(phi):
        return next(k for k, v in inst.morphisms.items() if v is phi)

    out["coring_morphisms"] = {
        k: {
            "phi": morphism_ref(m.phi),
            "Phi": _ints(m.Phi),
            "source_coring": coring_ref(m.source),
            "target_coring": coring_ref(m.target),
            "name": m.name,
        }
        for k, m in inst.coring_morphisms.items()
    }
    return out


def dumps(inst: InstanceFile) -> str:
    return json.dumps(to_json(inst), sort_keys=True, indent=1) + "\n"


def dump(inst: InstanceFile, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(inst))


# -- decoding -------------------------------------------------------------------------------


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def _array(value, where: str, ndim: int, p: int) -> np.ndarray:
    try:
        a = np.array(value, dtype=np.int64)
    except (ValueError, TypeError, OverflowError) as exc:
        raise ParseError(f"{where}: not a rectangular integer array ({exc})") from None
    if a.size == 0:
        a = a.reshape((0,) * ndim) if a.ndim != ndim else a
    if a.ndim != ndim:
        raise ParseError(f"{where}: expected a {ndim}-d array, got {a.ndim}-d")
    return a % p


def from_json(data) -> InstanceFile:
    """Build the object graph; raises ParseError on structure, ValidationError on algebra."""
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported version {version!r}; expected {FORMAT_VERSION!r}")
    p = _field(data, "p", "file")
    if not isinstance(p, int):
        raise ParseError("file: p must be an integer")
    try:
        gf = ground(p)
    except ValueError as exc:
        raise ParseError(f"file: {exc}") from None
    inst = InstanceFile(p)
    for s in SECTIONS:
        if not isinstance(data.get(s, {}), dict):
            raise ParseError(f"{s}: expected an object keyed by id")

    def build(where, fn):
        try:
            return fn()
        except ParseError:
            raise
        except (ValueError, TypeError, KeyError, IndexError) as exc:
            raise ParseError(f"{where}: {exc}") from None

    def alg(ref, where):
        if ref is None:
            return gf
        if ref not in inst.algebras:
            raise ParseError(f"{where}: unknown algebra {ref!r}")
        return inst.algebras[ref]

    for k, a in data.get("algebras", {}).items():
        where = f"algebras.{k}"
        ap = _field(a, "p", where)
        if ap != p:
            raise ParseError(f"{where}: p={ap} differs from the file's p={p}")
        mul = _array(_field(a, "mul", where), where + ".mul", 3, p)
        unit = _array(_field(a, "unit", where), where + ".unit", 1, p)
        if mul.shape[0] != _field(a, "dim", where):
            raise ParseError(f"{where}: dim does not match mul")
        inst.algebras[k] = build(where, lambda: FDAlgebra(p, mul, unit, name=a.get("name", "")))
    for k, m in data.get("morphisms", {}).items():
        where = f"morphisms.{k}"
        src, tgt = alg(_field(m, "source", where), where), alg(_field(m, "target", where), where)
        mat = _array(_field(m, "matrix", where), where + ".matrix", 2, p)
        if mat.shape != (tgt.dim, src.dim):
            raise ParseError(f"{where}: matrix has shape {mat.shape}, expected {(tgt.dim, src.dim)}")
        inst.morphisms[k] = AlgebraMorphism(src, tgt, mat)
    for k, b in data.get("bimodules", {}).items():
        where = f"bimodules.{k}"
        left, right = alg(b.get("left_algebra"), where), alg(b.get("right_algebra"), where)
        n = _field(b, "dim", where)
        lam = _array(_field(b, "left_action", where), where + ".left_action", 3, p)
        rho = _array(_field(b, "right_action", where), where + ".right_action", 3, p)
        if lam.shape != (left.dim, n, n) or rho.shape != (right.dim, n, n):
            raise ParseError(f"{where}: action shapes {lam.shape}, {rho.shape} do not match dim {n}")
        inst.bimodules[k] = Bimodule(left, right, lam, rho, name=b.get("name", ""))
    for k, c in data.get("corings", {}).items():
        where = f"corings.{k}"
        base = alg(_field(c, "base", where), where)
        ref = _field(c, "carrier", where)
        if ref not in inst.bimodules:
            raise ParseError(f"{where}: unknown bimodule {ref!r}")
        carrier = inst.bimodules[ref]
        delta = _array(_field(c, "delta", where), where + ".delta", 2, p)
        eps = _array(_field(c, "epsilon", where), where + ".epsilon", 2, p)
        n = carrier.dim
        if delta.shape != (n * n, n) or eps.shape != (base.dim, n):
            raise ParseError(f"{where}: delta/epsilon shapes {delta.shape}, {eps.shape} do not match dim {n}")
        if carrier.left != base or carrier.right != base:
            raise ParseError(f"{where}: carrier is not a bimodule over the base")
        inst.corings[k] = Coring(base, carrier, delta, eps, name=c.get("name", ""))
    for k, m in data.get("coring_morphisms", {}).items():
        where = f"coring_morphisms.{k}"
        refs = [_field(m, f, where) for f in ("phi", "source_coring", "target_coring")]
        if refs[0] not in inst.morphisms:
            raise ParseError(f"{where}: unknown morphism {refs[0]!r}")
        for r in refs[1:]:
            if r not in inst.corings:
                raise ParseError(f"{where}: unknown coring {r!r}")
        phi, src, tgt = inst.morphisms[refs[0]], inst.corings[refs[1]], inst.corings[refs[2]]
        big = _array(_field(m, "Phi", where), where + ".Phi", 2, p)
        if big.shape != (tgt.dim, src.dim):
            raise ParseError(f"{where}: Phi has shape {big.shape}, expected {(tgt.dim, src.dim)}")
        inst.coring_morphisms[k] = CoringMorphism(src, tgt, phi, big, name=m.get("name", ""))
    violations = validate(inst)
    if violations:
        raise ValidationError(f"{len(violations)} object(s) fail validation", violations)
    return inst


def validate(inst: InstanceFile) -> Dict[str, List[str]]:
    """Violations per object id (empty when everything validates)."""
    out: Dict[str, List[str]] = {}
    checks = [
        ("algebras", validate_algebra),
        ("morphisms", validate_morphism),
        ("bimodules", validate_bimodule),
        ("corings", validate_coring),
        ("coring_morphisms", validate_coring_morphism),
    ]
    for section, fn in checks:
        for k, obj in getattr(inst, section).items():
            v = fn(obj)
            if v:
                out[f"{section}.{k}"] = list(v)
        # later sections assume earlier objects are sound
        if out:
            break
    return out


def loads(text: str) -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_json(data)


def load(path: str) -> InstanceFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads(text)
