"""Analysis reports: plain-data verdicts with provenance, JSON and text rendering.

Every verdict records the condition that decided it and a short detail
line.  Witnesses are stored as integer lists so a report can be reloaded
and re-verified against its instance with :func:`verify_witnesses`.
"""

from __future__ import annotations

import json
import time
from functools import wraps
from typing import Dict, List, Optional

import numpy as np

from . import exactla as la
from .algebra import AlgebraMorphism
from .bimodfunc import analyze_bimodule
from .corings import Coring, analyze_coring, find_chi, grouplikes
from .cormor import CoringMorphism, analyze_coring_morphism
from .errors import TooLargeToEnumerate, WitnessViolation
from .families import Family
from .instance_io import FORMAT_VERSION
from .modrep import Bimodule, tensor_chain
from .oracle import natural_splitting_from_witness
from .scalars import analyze_scalars, s_as_rs, s_as_sr


def _ints(a) -> Optional[list]:
    return None if a is None else np.asarray(a, dtype=np.int64).tolist()


def _verdict(value: bool, criterion: str, detail: str) -> dict:
    return {"value": bool(value), "criterion": criterion, "detail": detail}


def _base(analyzer: str, instance: str, p: int) -> dict:
    return {"version": FORMAT_VERSION, "analyzer": analyzer, "instance": instance, "p": p,
            "verdicts": {}, "witnesses": {}, "checks": {}}


# -- builders ---------------------------------------------------------------------------------


def _timed(build):
    """Record the wall-clock analysis time; this is the only nondeterministic field of a report."""

    @wraps(build)
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        out = build(*args, **kwargs)
        out["timing_ms"] = round(1000 * (time.perf_counter() - t0), 3)
        return out

    return run



@_timed
def scalars_report(phi: AlgebraMorphism, instance: str = "", family: Optional[Family] = None,
                   restriction_family: Optional[Family] = None) -> dict:
    rep = analyze_scalars(phi, family, restriction_family)
    res, ext = rep.restriction, rep.extension
    out = _base("scalars", instance, phi.p)
    kd = res.eps_kernel_dim
    mult = "kernel of the multiplication S (x)_R S -> S"
    out["verdicts"]["restriction.full"] = _verdict(
        res.full, "multiplication S (x)_R S -> S injective", f"{mult} has dim {kd}")
    out["verdicts"]["restriction.naturally_full"] = _verdict(
        res.naturally_full, "phi is a ring epimorphism", f"{mult} has dim {kd}")
    nfam = len(ext.per_object)
    nok = sum(ext.per_object.values())
    out["verdicts"]["extension.full_on_family"] = _verdict(
        ext.full_on_family, "unit M -> S (x)_R M cosplits on each family member", f"{nok}/{nfam} family members split")
    out["verdicts"]["extension.naturally_full"] = _verdict(
        ext.naturally_full, "R-bimodule map E: S -> R with phi o E = id",
        "witness E found" if ext.naturally_full else "retraction system infeasible")
    out["witnesses"]["extension.E"] = _ints(ext.witness_E)
    out["witnesses"]["extension.central_idempotent"] = _ints(ext.central_idempotent_e)
    out["checks"]["restriction_conditions"] = dict(sorted(res.conditions.items()))
    out["checks"]["restriction_per_object"] = dict(sorted(res.per_object_split.items()))
    out["checks"]["extension_per_object"] = dict(sorted(ext.per_object.items()))
    out["checks"]["cross_checks"] = dict(rep.cross_checks)
    return out


@_timed
def bimodule_report(m: Bimodule, instance: str = "") -> dict:
    rep = analyze_bimodule(m)
    out = _base("bimodule", instance, m.p)
    co = rep.coinduction
    out["verdicts"]["coinduction.naturally_full"] = _verdict(
        co.naturally_full, "M-invariant z in M (x)_R *M with sum (m)z^1 z^2 = m",
        "witness z found" if co.naturally_full else "invariant-element system infeasible")
    out["witnesses"]["coinduction.z"] = _ints(co.witness_z)
    if rep.induction is not None:
        ind = rep.induction
        out["verdicts"]["induction.naturally_full"] = _verdict(
            ind.naturally_full, "R-bimodule map E: End(M) -> R with (m)f = m E(f)",
            "witness E found" if ind.naturally_full else "retraction system infeasible")
        out["witnesses"]["induction.E"] = _ints(ind.witness_E)
        out["witnesses"]["induction.central_idempotent"] = _ints(ind.central_idempotent_e)
    else:
        out["checks"]["induction_refused"] = rep.induction_refused
    st = rep.structure
    out["checks"]["structure"] = {
        "M_generator": st.M_generator,
        "End_map_epimorphism": st.chi_epi,
        "coinduction_fully_faithful": st.fully_faithful_G,
        "M_generator_over_corner": st.M_generator_over_eSe,
    }
    return out


@_timed
def coring_report(c: Coring, instance: str = "") -> dict:
    rep = analyze_coring(c)
    out = _base("coring", instance, c.p)
    g, f, d = rep.cotensor, rep.forgetful, rep.derived
    out["verdicts"]["cotensor.naturally_full"] = _verdict(
        g.naturally_full, "R-invariant z in C with c = eps(c) z",
        "witness z found" if g.naturally_full else "no invariant z; the counit has no bimodule section")
    out["verdicts"]["forgetful.naturally_full"] = _verdict(
        f.naturally_full, "c eps(d) = eps(c) d for all c, d",
        "comultiplication surjective" if f.delta_surjective else "comultiplication not surjective")
    out["verdicts"]["coseparable"] = _verdict(
        rep.coseparable, "cointegral chi: C (x)_R C -> R with chi o Delta = eps",
        "witness chi found" if rep.coseparable else "cointegral system infeasible")
    out["witnesses"]["cotensor.z"] = _ints(g.witness_z)
    out["witnesses"]["cotensor.counit_section"] = _ints(g.xi)
    out["checks"]["derived"] = {
        "fgp_left": d.fgp_left,
        "fgp_right": d.fgp_right,
        "frobenius_map_bijective": d.frobenius_phi_bijective,
        "coseparability_identity": d.coseparability_identity,
        "counit_hits_one": d.counit_hits_one,
    }
    out["checks"]["grouplikes"] = rep.grouplike_count
    chis: List[bool] = []
    try:
        chis = [find_chi(c, x) is not None for x in grouplikes(c)]
    except TooLargeToEnumerate:
        pass
    out["checks"]["normalized_cointegral_per_grouplike"] = chis
    return out


@_timed
def coring_morphism_report(m: CoringMorphism, instance: str = "") -> dict:
    rep = analyze_coring_morphism(m)
    out = _base("coring-morphism", instance, m.p)
    out["verdicts"]["F.naturally_full"] = _verdict(
        rep.F.naturally_full, "C-bicomodule map nu: G F(C) -> C with eta_C o nu = id",
        "witness nu found" if rep.F.naturally_full else (
            "bicomodule splitting infeasible" if rep.F.preserved else "coaction on G F(C) not inherited"))
    out["verdicts"]["G.naturally_full"] = _verdict(
        rep.G.naturally_full, "D-bicomodule map Psi: D -> S (x)_R C (x)_R S with Psi o Phi^ = id",
        "witness Psi found" if rep.G.naturally_full else "bicomodule retraction infeasible")
    out["witnesses"]["F.nu"] = _ints(rep.F.witness_nu)
    out["witnesses"]["G.Psi"] = _ints(rep.G.witness_Psi)
    out["checks"]["triangles"] = {"F_side": dict(sorted(rep.triangles.F_side.items())),
                                  "G_side": dict(sorted(rep.triangles.G_side.items()))}
    out["checks"]["reductions"] = dict(sorted(rep.reductions.items()))
    return out


# -- re-verification ---------------------------------------------------------------------------


def _witness(report: dict, key: str):
    w = report["witnesses"].get(key)
    return None if w is None else la.mod(np.array(w, dtype=np.int64), report["p"])


def verify_witnesses(report: dict, obj) -> Dict[str, bool]:
    """Rebuild the natural splitting behind each true verdict and check it afresh.

    Restriction and forgetful splittings are canonical and need no stored
    witness.  Returns one entry per splitting checked; raises
    WitnessViolation when a stored witness fails or is missing.
    """
    splittings = [
        ("extension", "extension.E", "extension"),
        ("restriction", None, "restriction"),
        ("induction", "induction.E", "induction"),
        ("coinduction", "coinduction.z", "coinduction"),
        ("cotensor", "cotensor.z", "cotensor"),
        ("forgetful", None, "forgetful"),
        ("F", "F.nu", "coring-morphism-F"),
        ("G", "G.Psi", "coring-morphism-G"),
    ]
    out: Dict[str, bool] = {}
    for prefix, key, functor in splittings:
        verdict = report["verdicts"].get(prefix + ".naturally_full")
        if verdict is None:
            continue
        w = None if key is None else _witness(report, key)
        if key is not None and w is None:
            if verdict["value"]:
                raise WitnessViolation(f"{key}: verdict is naturally full but no witness was stored")
            continue
        if not verdict["value"]:
            continue
        extra = None
        if functor == "coring-morphism-G":
            extra = tensor_chain([s_as_sr(obj.phi), obj.source.carrier, s_as_rs(obj.phi)])
        natural_splitting_from_witness(functor, obj, w, extra)
        out[key or prefix] = True
    return out


# -- rendering ----------------------------------------------------------------------------------


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


def to_text(report: dict) -> str:
    head = f"{report['analyzer']} analysis"
    if report.get("instance"):
        head += f" of {report['instance']}"
    lines = [f"{head} (p = {report['p']}, {report.get('timing_ms', 0):.1f} ms)"]
    for key, v in sorted(report["verdicts"].items()):
        lines.append(f"  {key}: {'YES' if v['value'] else 'NO'} -- {v['criterion']}: {v['detail']}")
    for key, w in sorted(report["witnesses"].items()):
        if w is not None:
            lines.append(f"  witness {key} = {w}")
    for key, c in sorted(report["checks"].items()):
        lines.append(f"  {key}: {json.dumps(c, sort_keys=True)}")
    return "\n".join(lines) + "\n"
