"""Hilbert-Samuel, mixed, and Buchsbaum-Rim multiplicities at the origin.

All lengths are local: a colength is always computed through truncation by
powers of the maximal ideal at the origin, so zeros of generic combinations
away from the origin never inflate a value.  Genericity is realized by
seeded sampling; a multiplicity obtained from random combinations is the
minimum over the configured number of independent trials, and the value of
a truly generic choice is that minimum.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import grobner, modtools, polyhedra
from .grobner import TruncationCapError
from .modtools import Submodule
from .poly import Polynomial


@dataclass(frozen=True)
class RandomSpec:
    """Seeded sampling parameters for generic combinations."""

    seed: int = 42
    bound: int = 100
    trials: int = 5

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("coefficient bound must be at least 1")
        if self.trials < 1:
            raise ValueError("need at least one trial")


@dataclass(frozen=True)
class MultiplicityValue:
    """A multiplicity together with how it was obtained."""

    value: int
    method: str  # colength-direct | generic-reduction | volume
    seed: int | None = None
    trials: int | None = None
    samples: tuple[int, ...] = field(default=())

    def __int__(self) -> int:
        return self.value


_CACHE: dict[tuple, MultiplicityValue] = {}


def clear_cache() -> None:
    _CACHE.clear()


def _canonical(M: Submodule) -> tuple:
    return (M.vars, M.rank, tuple(sorted(tuple(str(f) for f in col) for col in M.columns)))


def _rng(rs: RandomSpec, label: str, trial: int) -> random.Random:
    digest = hashlib.sha256(f"{rs.seed}|{rs.bound}|{label}|{trial}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _coefficient(rng: random.Random, bound: int) -> int:
    c = rng.randint(1, bound)
    return -c if rng.random() < 0.5 else c


def _combination(gens: Sequence[Polynomial], rng: random.Random, bound: int) -> Polynomial:
    out = Polynomial.zero(gens[0].vars)
    for g in gens:
        out = out + g.scale(_coefficient(rng, bound))
    return out


def _column_combination(columns, rng: random.Random, bound: int):
    acc = None
    for col in columns:
        c = _coefficient(rng, bound)
        scaled = tuple(f.scale(c) for f in col)
        acc = scaled if acc is None else tuple(a + b for a, b in zip(acc, scaled))
    return acc


def local_colength_of(M: Submodule, cap: int = 50) -> int:
    return grobner.local_colength(M.columns, M.rank, M.vars, cap=cap)


# -- Hilbert-Samuel and mixed multiplicities ---------------------------------


def hilbert_samuel(I: Submodule, rs: RandomSpec = RandomSpec()) -> MultiplicityValue:
    """Multiplicity of an ideal of finite local colength at the origin.

    An ideal generated by exactly n elements is a parameter ideal, whose
    multiplicity is its local colength.  Otherwise n generic combinations
    of the generators are sampled per trial and the minimum colength wins.
    """
    if I.rank != 1:
        raise ValueError("hilbert_samuel expects an ideal")
    I = I.nonzero_columns()
    key = ("hs", _canonical(I), rs)
    if key in _CACHE:
        return _CACHE[key]
    n = len(I.vars)
    gens = I.gens()
    if not gens:
        raise ValueError("the zero ideal has no multiplicity")
    if len(gens) == n:
        value = MultiplicityValue(local_colength_of(I), "colength-direct")
    else:
        local_colength_of(I)  # finiteness gate; raises when not m-primary
        samples = []
        for trial in range(rs.trials):
            rng = _rng(rs, "hs:" + "|".join(sorted(map(str, gens))), trial)
            combos = [_combination(gens, rng, rs.bound) for _ in range(n)]
            samples.append(local_colength_of(modtools.ideal(I.vars, combos)))
        value = MultiplicityValue(min(samples), "generic-reduction",
                                  seed=rs.seed, trials=rs.trials, samples=tuple(samples))
    _CACHE[key] = value
    return value


def mixed_multiplicity(ideals: Sequence[Submodule], rs: RandomSpec = RandomSpec()) -> MultiplicityValue:
    """Mixed multiplicity of n ideals, each of finite local colength.

    Samples one generic element from each ideal per trial; when all the
    ideals coincide this degenerates to the ordinary multiplicity, which is
    delegated to hilbert_samuel directly.
    """
    ideals = [I.nonzero_columns() for I in ideals]
    n = len(ideals[0].vars)
    if len(ideals) != n:
        raise ValueError(f"mixed multiplicity needs exactly {n} ideals here")
    keys = [_canonical(I) for I in ideals]
    if len(set(keys)) == 1:
        return hilbert_samuel(ideals[0], rs)
    key = ("mixed", tuple(sorted(keys)), rs)
    if key in _CACHE:
        return _CACHE[key]
    for I in ideals:
        local_colength_of(I)  # finiteness gate per ideal
    samples = []
    label = "mixed:" + "#".join("|".join(sorted(str(f) for f in I.gens())) for I in ideals)
    for trial in range(rs.trials):
        rng = _rng(rs, label, trial)
        combos = [_combination(I.gens(), rng, rs.bound) for I in ideals]
        samples.append(local_colength_of(modtools.ideal(ideals[0].vars, combos)))
    value = MultiplicityValue(min(samples), "generic-reduction",
                              seed=rs.seed, trials=rs.trials, samples=tuple(samples))
    _CACHE[key] = value
    return value


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def mixed_multiplicity_sum(M: Submodule, rs: RandomSpec = RandomSpec()) -> MultiplicityValue:
    """Sum of all mixed multiplicities of the row ideals.

    Runs over the compositions i_1 + ... + i_p = n and adds the mixed
    multiplicity with the j-th row ideal repeated i_j times.  This equals
    the Buchsbaum-Rim multiplicity of the direct sum of the row ideals.
    """
    n = len(M.vars)
    p = M.rank
    rows = [M.row_ideal(i).nonzero_columns() for i in range(p)]
    total = 0
    pieces = []
    for comp in _compositions(n, p):
        family: list[Submodule] = []
        for j, reps in enumerate(comp):
            family.extend([rows[j]] * reps)
        term = mixed_multiplicity(family, rs).value
        pieces.append(term)
        total += term
    return MultiplicityValue(total, "generic-reduction", seed=rs.seed,
                             trials=rs.trials, samples=tuple(pieces))


# -- Buchsbaum-Rim ------------------------------------------------------------


def buchsbaum_rim(M: Submodule, rs: RandomSpec = RandomSpec()) -> MultiplicityValue:
    """Buchsbaum-Rim multiplicity of a finite-colength submodule of R^p.

    With exactly n+p-1 generating columns the colength identity applies
    verbatim and no sampling happens.  Otherwise generic column
    combinations produce an (n+p-1)-generated reduction per trial.
    """
    M = M.nonzero_columns()
    key = ("brim", _canonical(M), rs)
    if key in _CACHE:
        return _CACHE[key]
    n = len(M.vars)
    target = n + M.rank - 1
    if M.ngens == target:
        value = MultiplicityValue(local_colength_of(M), "colength-direct")
    else:
        local_colength_of(M)  # finiteness gate
        samples = []
        label = "brim:" + "#".join("|".join(str(f) for f in col) for col in M.columns)
        for trial in range(rs.trials):
            rng = _rng(rs, label, trial)
            cols = tuple(_column_combination(M.columns, rng, rs.bound) for _ in range(target))
            samples.append(local_colength_of(Submodule(M.vars, M.rank, cols)))
        value = MultiplicityValue(min(samples), "generic-reduction",
                                  seed=rs.seed, trials=rs.trials, samples=tuple(samples))
    _CACHE[key] = value
    return value


# -- volume route --------------------------------------------------------------


def monomial_multiplicity(I: polyhedra.MonomialIdeal) -> MultiplicityValue:
    """n! times the covolume of the Newton polyhedron of a monomial ideal.

    Independent of every colength computation; serves as the volume oracle
    for the sampled multiplicities on monomial input.
    """
    P = polyhedra.newton_polyhedron(I.gens)
    vol = polyhedra.covolume(P)
    if vol is polyhedra.INFINITE:
        raise ValueError("infinite covolume: the ideal is not m-primary")
    scaled = math.factorial(I.dim) * vol
    if scaled.denominator != 1:
        raise ArithmeticError(f"normalized covolume {scaled} is not an integer")
    return MultiplicityValue(int(scaled), "volume")


# -- reduction verification -----------------------------------------------------


@dataclass(frozen=True)
class ReductionWitness:
    is_reduction: bool
    power: int | None  # least k with I L^k = L^(k+1), when witnessed
    cap: int


def ideal_reduction_check(I: Submodule, L: Submodule, cap: int = 10) -> ReductionWitness:
    """Witness I being a reduction of L through the power identity.

    Searches for the least k <= cap with I L^k = L^(k+1), the equality
    taken in the localization at the origin.  A negative answer only means
    no witness below the cap, never a proof.
    """
    if I.rank != 1 or L.rank != 1:
        raise ValueError("reduction check is for ideals")
    if not modtools.local_contains(L, I):
        raise ValueError("I is not contained in L")
    power = modtools.ideal(L.vars, [Polynomial.constant(L.vars, 1)])  # L^0
    for k in range(cap + 1):
        left = modtools.ideal_product(I, power)
        next_power = modtools.ideal_product(L, power)
        if modtools.local_module_equal(left, next_power):
            return ReductionWitness(True, k, cap)
        power = modtools.reduced(next_power)
    return ReductionWitness(False, None, cap)
