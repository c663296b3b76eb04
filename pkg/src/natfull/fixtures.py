"""Catalog of named instances shipped with the package.

Each builder returns an :class:`InstanceFile`.  ``p`` selects the prime;
the Sweedler and trivial-coring fixtures take another fixture as their
argument (a morphism fixture, respectively any fixture whose algebra map
has a source algebra R).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from . import exactla as la
from .algebra import AlgebraMorphism, field_extension, ground, identity_morphism, product_algebra
from .corings import comatrix_coring, sweedler_coring, trivial_coring
from .generators import irreducible_quadratic
from .instance_io import InstanceFile
from .modrep import Bimodule
from .cormor import CoringMorphism
from .scalars import build_triangular_example, sweedler_tensor

DEFAULT_SWEEDLER_OF = "FIX-PROJ"
DEFAULT_TRIVIAL_OF = "FIX-TRI"


def _morphism_file(p: int, phi: AlgebraMorphism, src: str, tgt: str, key: str) -> InstanceFile:
    inst = InstanceFile(p)
    inst.algebras[src] = phi.source
    if tgt != src:
        inst.algebras[tgt] = phi.target
    inst.morphisms[key] = phi
    return inst


def fix_id(p: int = 2) -> InstanceFile:
    k = ground(p)
    return _morphism_file(p, identity_morphism(k), "K", "K", "id")


def fix_proj(p: int = 2) -> InstanceFile:
    """F_p x F_p -> F_p, keeping the first coordinate."""
    k = ground(p)
    r = product_algebra(k, k)
    phi = AlgebraMorphism(r, k, np.array([[1, 0]], dtype=np.int64))
    return _morphism_file(p, phi, "R", "S", "proj")


def fix_tri(p: int = 2) -> InstanceFile:
    """Upper-triangular 2x2 matrices -> F_p, keeping the e11 coefficient."""
    _, phi = build_triangular_example(p)
    return _morphism_file(p, phi, "R", "S", "tri")


def fix_f4(p: int = 2) -> InstanceFile:
    """F_p -> F_{p^2}, the unit inclusion of the quadratic extension."""
    s = field_extension(irreducible_quadratic(p), p, name=f"F{p}^2")
    phi = AlgebraMorphism(ground(p), s, la.unit_vector(2, 0).reshape(-1, 1))
    return _morphism_file(p, phi, "R", "S", "incl")


def fix_mat2(p: int = 2) -> InstanceFile:
    """The 2x2 comatrix coring: M = F_p^2 over S = R = F_p."""
    k = ground(p)
    m = Bimodule(k, k, la.identity(2)[None], la.identity(2)[None], name="F^2")
    c, _ = comatrix_coring(m)
    inst = InstanceFile(p)
    inst.algebras["K"] = k
    inst.bimodules["M"] = m
    inst.bimodules["C"] = c.carrier
    inst.corings["mat2"] = c
    return inst


def _first_morphism(inst: InstanceFile) -> AlgebraMorphism:
    if not inst.morphisms:
        raise ValueError("fixture has no algebra map")
    return next(iter(inst.morphisms.values()))


def fix_swe(p: int = 2, of: str = DEFAULT_SWEEDLER_OF) -> InstanceFile:
    """Sweedler coring S (x)_R S of a morphism fixture, with the coring map R -> S (x)_R S, r -> phi(r) (x) 1."""
    inst = build(of, p)
    phi = _first_morphism(inst)
    c = sweedler_coring(phi)
    r = trivial_coring(phi.source)
    t = sweedler_tensor(phi)
    big = np.stack([t.pure(phi(phi.source.basis_vector(i)), phi.target.unit) for i in range(phi.source.dim)], axis=1)
    inst.bimodules["SRS"] = c.carrier
    inst.bimodules["Rreg"] = r.carrier
    inst.corings["sweedler"] = c
    inst.corings["base"] = r
    inst.coring_morphisms["into_sweedler"] = CoringMorphism(r, c, phi, big, name="into_sweedler")
    return inst


def fix_triv(p: int = 2, of: str = DEFAULT_TRIVIAL_OF) -> InstanceFile:
    """The trivial coring R over the source algebra R of a morphism fixture."""
    src = build(of, p)
    r = _first_morphism(src).source
    c = trivial_coring(r)
    inst = InstanceFile(p)
    inst.algebras["R"] = r
    inst.bimodules["R"] = c.carrier
    inst.corings["trivial"] = c
    return inst


@dataclass(frozen=True)
class FixtureInfo:
    key: str
    builder: Callable[..., InstanceFile]
    summary: str
    takes_of: bool = False


CATALOG: Dict[str, FixtureInfo] = {
    f.key: f
    for f in [
        FixtureInfo("FIX-ID", fix_id, "identity map on F_p"),
        FixtureInfo("FIX-PROJ", fix_proj, "projection F_p x F_p -> F_p onto the first factor"),
        FixtureInfo("FIX-TRI", fix_tri, "upper-triangular 2x2 matrices -> F_p, full but not naturally full extension"),
        FixtureInfo("FIX-F4", fix_f4, "unit inclusion F_p -> F_{p^2}"),
        FixtureInfo("FIX-MAT2", fix_mat2, "2x2 comatrix coring over F_p"),
        FixtureInfo("FIX-SWE", fix_swe, "Sweedler coring S (x)_R S of a morphism fixture (--of)", True),
        FixtureInfo("FIX-TRIV", fix_triv, "trivial coring R of a fixture's source algebra (--of)", True),
    ]
}


def catalog() -> List[FixtureInfo]:
    return list(CATALOG.values())


def build(key: str, p: int = 2, of: Optional[str] = None) -> InstanceFile:
    info = CATALOG.get(key.upper())
    if info is None:
        raise KeyError(f"unknown fixture {key!r}; choose from {sorted(CATALOG)}")
    if info.takes_of:
        return info.builder(p, of) if of else info.builder(p)
    if of:
        raise ValueError(f"{key} takes no --of argument")
    return info.builder(p)
