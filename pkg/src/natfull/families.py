"""Finite test families of modules.

A full or naturally full functor quantifies over every module; the
per-object checks can only run over an explicit finite list.  The default
list for an algebra A is

* A itself (regular),
* the cyclic quotients A / A x for each basis element x (deduplicated,
  zero quotients dropped),
* one seeded random cyclic module of dimension at most 3.

Modules are returned as ``(label, Bimodule)`` pairs.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np

from . import exactla as la
from .algebra import FDAlgebra
from .modrep import (
    Bimodule,
    forget_left,
    forget_right,
    quotient_module,
    regular_left,
    regular_right,
    right_module,
    submodule_generated,
)

DEFAULT_FAMILY_SEED = 0
RANDOM_MODULE_MAX_DIM = 3

Family = List[Tuple[str, Bimodule]]


def _left_cyclic_quotient(a: FDAlgebra, gens) -> Tuple[Bimodule, la.Subspace]:
    reg = regular_left(a)
    sub = submodule_generated(reg, np.stack(gens, axis=1), "left")
    q, _ = quotient_module(reg, sub)
    return q, sub


def _random_left_cyclic(a: FDAlgebra, rng: np.random.Generator, max_dim: int) -> Optional[Bimodule]:
    for _ in range(32):
        k = int(rng.integers(1, 3))
        gens = [rng.integers(0, a.p, size=a.dim) for _ in range(k)]
        q, _ = _left_cyclic_quotient(a, gens)
        if 0 < q.dim <= max_dim:
            return q
    return None


def left_family(a: FDAlgebra, seed: int = DEFAULT_FAMILY_SEED, max_random_dim: int = RANDOM_MODULE_MAX_DIM) -> Family:
    """Default family of left A-modules."""
    out: Family = [("regular", regular_left(a))]
    seen = {la.column_space(la.zeros(a.dim, 0), a.p).basis.tobytes()}
    for i in range(a.dim):
        q, sub = _left_cyclic_quotient(a, [a.basis_vector(i)])
        key = sub.basis.tobytes()
        if q.dim == 0 or key in seen:
            continue
        seen.add(key)
        out.append((f"quotient_by_e{i}", q))
    rnd = _random_left_cyclic(a, np.random.default_rng(seed), max_random_dim)
    if rnd is not None:
        out.append(("random_cyclic", rnd))
    return out


def right_family(a: FDAlgebra, seed: int = DEFAULT_FAMILY_SEED, max_random_dim: int = RANDOM_MODULE_MAX_DIM) -> Family:
    """Default family of right A-modules (left A^op-modules, flipped back)."""
    from .algebra import opposite

    # a left A^op-module is a right A-module with the same matrices
    out: Family = [(label, right_module(a, m.left_action)) for label, m in left_family(opposite(a), seed, max_random_dim)]
    out[0] = ("regular", regular_right(a))
    return out


def as_left(m: Bimodule) -> Bimodule:
    return forget_right(m)


def as_right(m: Bimodule) -> Bimodule:
    return forget_left(m)
