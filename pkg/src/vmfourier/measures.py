"""Atomic vector measures on a finite group.

Every measure on a finite group is a finite family of atoms, is regular, has
bounded variation and is absolutely continuous with respect to the normalized
counting measure, so the usual measure-class distinctions all collapse here;
no separate regularity or absolute-continuity predicates exist.

Atoms are stored as a dense [order, dim] coordinate array: ``atoms[t]`` is the
measure of the singleton {t} as an element of the coefficient space.  The
normalized counting (Haar) measure of a singleton is 1/|G| throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .groups import FiniteGroup, format_complex, parse_complex
from .spaces import (
    CoefficientSpace,
    MatrixOverX,
    NormEstimate,
    ScalarSpace,
    XVector,
    dual_ball_sup,
    lp_dual_sup,
    space_from_spec,
)

# On a finite group with normalized counting measure, the classes of general,
# regular, and absolutely continuous vector measures coincide; no separate
# predicates are provided.
MEASURE_CLASSES_COINCIDE = True

__all__ = [
    "MEASURE_CLASSES_COINCIDE",
    "VectorMeasure",
    "ScalarMeasure",
    "GroupMap",
    "InvarianceReport",
    "evaluate",
    "scalarize",
    "variation",
    "semivariation",
    "p_semivariation",
    "radon_nikodym",
    "pushforward",
    "check_semivariation_invariance",
    "measure_from_density",
    "integrate",
    "tensor_integrate",
    "is_k_scalarly_bounded",
    "load_measure_fixture",
    "dump_measure_fixture",
]


@dataclass(eq=False)
class VectorMeasure:
    """A coefficient-space-valued measure given by its atoms."""

    group: FiniteGroup
    space: CoefficientSpace
    atoms: np.ndarray  # [order, dim]

    def __post_init__(self):
        a = np.asarray(self.atoms, dtype=complex)
        if a.shape != (self.group.order, self.space.dim):
            raise ValueError(
                f"atoms must have shape ({self.group.order}, {self.space.dim}), got {a.shape}"
            )
        self.atoms = a

    @staticmethod
    def from_atoms(group: FiniteGroup, space: CoefficientSpace, atoms) -> "VectorMeasure":
        return VectorMeasure(group, space, np.asarray(atoms, dtype=complex))

    @staticmethod
    def zero(group: FiniteGroup, space: CoefficientSpace) -> "VectorMeasure":
        return VectorMeasure(group, space, np.zeros((group.order, space.dim), dtype=complex))

    @staticmethod
    def scalar(group: FiniteGroup, values) -> "VectorMeasure":
        """A scalar measure: atoms are plain complex masses."""
        v = np.asarray(values, dtype=complex).reshape(-1, 1)
        return VectorMeasure(group, ScalarSpace(), v)

    @staticmethod
    def haar_scalar(group: FiniteGroup) -> "VectorMeasure":
        return VectorMeasure.scalar(group, np.full(group.order, 1.0 / group.order))

    def atom(self, t: int) -> XVector:
        return XVector(self.space, self.atoms[t].copy())

    def scalar_values(self) -> np.ndarray:
        if not isinstance(self.space, ScalarSpace):
            raise ValueError("not a scalar measure")
        return self.atoms[:, 0].copy()

    def __add__(self, other: "VectorMeasure") -> "VectorMeasure":
        _require_compatible(self, other)
        return VectorMeasure(self.group, self.space, self.atoms + other.atoms)

    def __rmul__(self, z) -> "VectorMeasure":
        return VectorMeasure(self.group, self.space, complex(z) * self.atoms)


ScalarMeasure = VectorMeasure  # a VectorMeasure over ScalarSpace


def _require_compatible(a: VectorMeasure, b: VectorMeasure):
    if a.group is not b.group and not np.array_equal(a.group.cayley, b.group.cayley):
        raise ValueError("measures live on different groups")
    if a.space != b.space:
        raise ValueError("measures take values in different spaces")


def _require_same_group(g1: FiniteGroup, g2: FiniteGroup):
    if g1 is not g2 and not np.array_equal(g1.cayley, g2.cayley):
        raise ValueError("group mismatch")


@dataclass(eq=False)
class GroupMap:
    """A bijection of group elements (translation, inversion, composition)."""

    group: FiniteGroup
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        if sorted(t.tolist()) != list(range(self.group.order)):
            raise ValueError("map table is not a bijection")
        self.table = t

    @staticmethod
    def identity(group: FiniteGroup) -> "GroupMap":
        return GroupMap(group, np.arange(group.order))

    @staticmethod
    def translation(group: FiniteGroup, t: int) -> "GroupMap":
        """Right translation s -> s t."""
        return GroupMap(group, group.cayley[:, t])

    @staticmethod
    def inversion(group: FiniteGroup) -> "GroupMap":
        return GroupMap(group, group.inverses.copy())

    def compose(self, other: "GroupMap") -> "GroupMap":
        _require_same_group(self.group, other.group)
        return GroupMap(self.group, self.table[other.table])

    def inverse(self) -> "GroupMap":
        return GroupMap(self.group, np.argsort(self.table))

    def __call__(self, s: int) -> int:
        return int(self.table[s])


# ---------------------------------------------------------------------------
# basic operations
# ---------------------------------------------------------------------------


def _subset_indices(g: FiniteGroup, subset: Iterable[int] | None) -> np.ndarray:
    if subset is None:
        return np.arange(g.order)
    idx = np.asarray(sorted(set(int(t) for t in subset)), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= g.order):
        raise ValueError("subset contains indices outside the group")
    return idx


def evaluate(nu: VectorMeasure, subset: Iterable[int] | None = None) -> XVector:
    """nu(A) = sum of the atoms over A (all of G when A is omitted)."""
    idx = _subset_indices(nu.group, subset)
    return XVector(nu.space, nu.atoms[idx].sum(axis=0))


def scalarize(nu: VectorMeasure, xp: XVector) -> VectorMeasure:
    """The scalar measure A -> <nu(A), xp>."""
    if xp.space != nu.space:
        raise ValueError("dual vector lives in a different space")
    vals = nu.space.pair_many(nu.atoms, xp.coords[None, :])[0]
    return VectorMeasure.scalar(nu.group, vals)


def variation(nu: VectorMeasure, subset: Iterable[int] | None = None) -> float:
    """|nu|(A): on a finite group the partition sup is attained at singletons."""
    idx = _subset_indices(nu.group, subset)
    if idx.size == 0:
        return 0.0
    return float(nu.space.norm_many(nu.atoms[idx]).sum())


def semivariation(
    nu: VectorMeasure,
    subset: Iterable[int] | None = None,
    *,
    seed: int = 0,
) -> NormEstimate:
    """||nu||(A): sup over the dual ball of the scalarized total variation.

    Sandwiched between ||nu(A)|| and |nu|(A); exact for scalar / max-norm
    coefficient spaces, a certified bracket otherwise.
    """
    idx = _subset_indices(nu.group, subset)
    atoms = [(1.0, XVector(nu.space, nu.atoms[t])) for t in idx]
    return dual_ball_sup(nu.space, atoms, seed=seed)


def p_semivariation(nu: VectorMeasure, p: float, *, seed: int = 0) -> NormEstimate:
    """Operator norm of f -> integral of f against nu, from L^{p'}(G) to X.

    For p = inf this is the exact max over singletons of ||nu({t})|| / m_G({t});
    averaging makes larger sets never better.  For 1 < p < inf it equals the
    dual-ball sup of the L^p norm of the scalarized densities, exact for the
    closed-form spaces and a bracket otherwise (the upper end is the L^p norm
    of t -> |G| ||nu({t})||, a pointwise majorant of every density).
    """
    if p <= 1:
        raise ValueError("p-semivariation requires p > 1")
    n = nu.group.order
    if np.isinf(p):
        return NormEstimate.of_exact(float(n * nu.space.norm_many(nu.atoms).max()))
    return lp_dual_sup(nu.space, n * nu.atoms, p, seed=seed)


def radon_nikodym(nu: VectorMeasure, xp: XVector) -> np.ndarray:
    """Density of <nu, xp> against normalized counting measure: t -> |G| <x_t, xp>."""
    if xp.space != nu.space:
        raise ValueError("dual vector lives in a different space")
    return nu.group.order * nu.space.pair_many(nu.atoms, xp.coords[None, :])[0]


def pushforward(nu: VectorMeasure, h: GroupMap) -> VectorMeasure:
    """nu_h(A) = nu(h(A)); atomically (nu_h)({t}) = nu({h(t)})."""
    _require_same_group(nu.group, h.group)
    return VectorMeasure(nu.group, nu.space, nu.atoms[h.table])


def measure_from_density(nu: VectorMeasure, f: np.ndarray) -> VectorMeasure:
    """nu_f(A) = integral of f over A against nu; atoms f(t) x_t."""
    f = np.asarray(f, dtype=complex).reshape(-1)
    if f.size != nu.group.order:
        raise ValueError("density length must equal the group order")
    return VectorMeasure(nu.group, nu.space, f[:, None] * nu.atoms)


def integrate(f: np.ndarray, nu: VectorMeasure) -> XVector:
    """integral of a scalar function against nu: sum_t f(t) x_t."""
    f = np.asarray(f, dtype=complex).reshape(-1)
    if f.size != nu.group.order:
        raise ValueError("function length must equal the group order")
    return XVector(nu.space, f @ nu.atoms)


def tensor_integrate(values: np.ndarray, nu: VectorMeasure) -> MatrixOverX:
    """integral of a matrix-valued function: entry (i, j) is sum_t F(t)_{ij} x_t.

    ``values`` has shape [order, n, n]; the result is an n-level matrix over
    the measure's space and pairs with scalar functionals entrywise.
    """
    values = np.asarray(values, dtype=complex)
    if values.ndim != 3 or values.shape[0] != nu.group.order:
        raise ValueError("matrix function must have shape [order, n, n]")
    return MatrixOverX(nu.space, np.einsum("tij,tc->ijc", values, nu.atoms))


def is_k_scalarly_bounded(nu: VectorMeasure, k: float) -> bool:
    """Whether every scalarized total variation is dominated by k * m_G.

    On a finite group the singleton condition max_t |G| ||x_t|| <= k is
    equivalent: scalarized variations add over atoms.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if nu.group.order == 0:
        return True
    return bool(nu.group.order * nu.space.norm_many(nu.atoms).max() <= k)


# ---------------------------------------------------------------------------
# semivariation invariance
# ---------------------------------------------------------------------------


@dataclass
class InvarianceReport:
    """Outcome of sampling-based semivariation invariance checking.

    ``refuted`` means some test density produced disjoint semivariation
    brackets for nu and the pushforward; ``max_discrepancy`` is the largest
    certified gap between brackets (0 when every pair overlaps).
    """

    refuted: bool
    max_discrepancy: float
    functions_tested: int

    @property
    def consistent(self) -> bool:
        return not self.refuted


def _bracket_gap(a: NormEstimate, b: NormEstimate) -> float:
    return max(0.0, a.lower - b.upper, b.lower - a.upper)


def check_semivariation_invariance(
    nu: VectorMeasure,
    h: GroupMap,
    trials: int = 8,
    seed: int = 0,
) -> InvarianceReport:
    """Compare ||(nu_h)_phi|| against ||nu_phi|| over sampled simple functions.

    Tests every singleton indicator, a few random subset indicators and
    ``trials`` random complex densities.  Sampling can refute invariance but
    never prove it; a consistent report means no certified discrepancy.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    n = nu.group.order
    nu_h = pushforward(nu, h)
    densities = []
    for t in range(n):
        ind = np.zeros(n)
        ind[t] = 1.0
        densities.append(ind)
    for _ in range(min(trials, 4)):
        mask = rng.integers(0, 2, size=n).astype(float)
        densities.append(mask)
    for _ in range(trials):
        densities.append(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    worst = 0.0
    refuted = False
    for phi in densities:
        a = semivariation(measure_from_density(nu, phi))
        b = semivariation(measure_from_density(nu_h, phi))
        gap = _bracket_gap(a, b)
        if gap > 0:
            refuted = True
            worst = max(worst, gap)
    return InvarianceReport(refuted, worst, len(densities))


# ---------------------------------------------------------------------------
# fixture files
# ---------------------------------------------------------------------------


def dump_measure_fixture(nu: VectorMeasure, group_spec: str, space_spec: str) -> str:
    """Fixture text: header lines naming group and space, then one line per
    atom: element index followed by the coordinates as a+bi literals."""
    lines = [f"group {group_spec}", f"space {space_spec}"]
    for t in range(nu.group.order):
        coords = " ".join(format_complex(z) for z in nu.atoms[t])
        lines.append(f"{t} {coords}")
    return "\n".join(lines) + "\n"


def load_measure_fixture(path: str | Path) -> VectorMeasure:
    from .groups import build_group

    lines = [line for line in Path(path).read_text().splitlines() if line.strip()]
    if len(lines) < 2 or not lines[0].startswith("group ") or not lines[1].startswith("space "):
        raise ValueError("fixture must start with 'group <spec>' and 'space <spec>' lines")
    group = build_group(lines[0].split(None, 1)[1])
    space = space_from_spec(lines[1].split(None, 1)[1])
    atoms = np.zeros((group.order, space.dim), dtype=complex)
    for line in lines[2:]:
        parts = line.split()
        t = int(parts[0])
        coords = [parse_complex(tok) for tok in parts[1:]]
        if len(coords) != space.dim:
            raise ValueError(f"atom line for element {t} has {len(coords)} coordinates")
        atoms[t] = coords
    return VectorMeasure(group, space, atoms)
