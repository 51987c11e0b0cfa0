"""Function-space norms: Lebesgue norms for Haar measure, measure-weighted
norms, matrix-level integrand norms and the weak (dual-ball) p-norms of
vector-valued functions.

All functions on a finite group are simple, so the spaces that differ only
through approximation or weak-vs-strong integrability in general collapse
here; each pair is exposed through a single norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup
from .measures import GroupMap, VectorMeasure
from .spaces import CoefficientSpace, NormEstimate, XVector, dual_ball_sup, lp_dual_sup

__all__ = [
    "ScalarFunction",
    "VectorFunction",
    "MatrixFunction",
    "lp_norm_haar",
    "lp_nu_norm",
    "N_norm",
    "Nw_norm",
    "Pp_norm",
    "pettis_integral",
    "function_pushforward",
    "translate",
    "reflect",
]


@dataclass(eq=False)
class ScalarFunction:
    """A complex function on a finite group, tabulated per element."""

    group: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).reshape(-1)
        if v.size != self.group.order:
            raise ValueError("value count must equal the group order")
        self.values = v

    @staticmethod
    def of(group: FiniteGroup, values) -> "ScalarFunction":
        return ScalarFunction(group, np.asarray(values, dtype=complex))

    @staticmethod
    def constant(group: FiniteGroup, z: complex = 1.0) -> "ScalarFunction":
        return ScalarFunction(group, np.full(group.order, complex(z)))

    @staticmethod
    def indicator(group: FiniteGroup, subset) -> "ScalarFunction":
        v = np.zeros(group.order, dtype=complex)
        for t in subset:
            v[t] = 1.0
        return ScalarFunction(group, v)

    def __mul__(self, other: "ScalarFunction") -> "ScalarFunction":
        _same_group(self.group, other.group)
        return ScalarFunction(self.group, self.values * other.values)

    def __add__(self, other: "ScalarFunction") -> "ScalarFunction":
        _same_group(self.group, other.group)
        return ScalarFunction(self.group, self.values + other.values)

    def __rmul__(self, z) -> "ScalarFunction":
        return ScalarFunction(self.group, complex(z) * self.values)


@dataclass(eq=False)
class VectorFunction:
    """A coefficient-space-valued function on a finite group."""

    group: FiniteGroup
    space: CoefficientSpace
    values: np.ndarray  # [order, dim]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.group.order, self.space.dim):
            raise ValueError("values must have shape [order, space.dim]")
        self.values = v

    def at(self, t: int) -> XVector:
        return XVector(self.space, self.values[t].copy())


@dataclass(eq=False)
class MatrixFunction:
    """A matrix-valued function on a finite group, one n x n block per element."""

    group: FiniteGroup
    n: int
    values: np.ndarray  # [order, n, n]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.group.order, self.n, self.n):
            raise ValueError("values must have shape [order, n, n]")
        self.values = v

    def entry(self, i: int, j: int) -> ScalarFunction:
        return ScalarFunction(self.group, self.values[:, i, j].copy())


def _same_group(g1: FiniteGroup, g2: FiniteGroup):
    if g1 is not g2 and not np.array_equal(g1.cayley, g2.cayley):
        raise ValueError("group mismatch")


def lp_norm_haar(f: ScalarFunction, p: float) -> float:
    """L^p norm against normalized counting measure; p = inf gives the max."""
    if p < 1:
        raise ValueError("p must be >= 1")
    a = np.abs(f.values)
    if np.isinf(p):
        return float(a.max()) if a.size else 0.0
    return float(np.mean(a**p) ** (1.0 / p))


def lp_nu_norm(f: ScalarFunction, nu: VectorMeasure, p: float = 1.0, *, seed: int = 0) -> NormEstimate:
    """The measure-weighted p-norm |||f|^p||_nu^{1/p}.

    The p = 1 case is the dual-ball sup of the scalarized integrals of |f|;
    p = inf is the exact max of |f| over atoms where the measure is nonzero
    (atoms with x_t = 0 are null and excluded).
    """
    _same_group(f.group, nu.group)
    if p < 1:
        raise ValueError("p must be >= 1")
    if np.isinf(p):
        live = nu.space.norm_many(nu.atoms) > 0
        vals = np.abs(f.values[live])
        return NormEstimate.of_exact(float(vals.max()) if vals.size else 0.0)
    weights = np.abs(f.values) ** p
    atoms = [(float(w), XVector(nu.space, v)) for w, v in zip(weights, nu.atoms)]
    return dual_ball_sup(nu.space, atoms, seed=seed).rooted(p)


def N_norm(F: MatrixFunction, nu: VectorMeasure, *, seed: int = 0) -> NormEstimate:
    """Matrix-level integrand norm: the dual-ball sup of the scalarized
    integrals of t -> ||F(t)||_op; collapses to ``lp_nu_norm`` at level 1."""
    _same_group(F.group, nu.group)
    opnorms = np.linalg.svd(F.values, compute_uv=False)[:, 0] if F.n > 1 else np.abs(
        F.values[:, 0, 0]
    )
    atoms = [(float(w), XVector(nu.space, v)) for w, v in zip(opnorms, nu.atoms)]
    return dual_ball_sup(nu.space, atoms, seed=seed)


def Nw_norm(
    F: MatrixFunction,
    nu: VectorMeasure,
    samples: int = 64,
    seed: int = 0,
) -> NormEstimate:
    """Weak matrix-level norm: sup over the trace-norm unit ball of M_n of the
    nu-norm of the compressed scalar function t -> <F(t), y'>.

    Exact at level 1; otherwise lower = best sampled rank-one functional,
    upper = the strong norm N(F) (compression is contractive).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    _same_group(F.group, nu.group)
    if F.n == 1:
        return lp_nu_norm(F.entry(0, 0), nu, 1.0, seed=seed)
    rng = np.random.default_rng(seed)
    upper = N_norm(F, nu, seed=seed).upper
    lower = 0.0
    u = rng.standard_normal((samples, F.n)) + 1j * rng.standard_normal((samples, F.n))
    v = rng.standard_normal((samples, F.n)) + 1j * rng.standard_normal((samples, F.n))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    for r in range(samples):
        compressed = np.einsum("a,tab,b->t", np.conj(u[r]), F.values, v[r])
        est = lp_nu_norm(ScalarFunction(F.group, compressed), nu, 1.0, seed=seed)
        lower = max(lower, est.lower)
    return NormEstimate.bracket(min(lower, upper), upper)


def Pp_norm(phi: VectorFunction, p: float, *, seed: int = 0) -> NormEstimate:
    """Weak p-norm of a vector-valued function: sup over the dual ball of the
    L^p(Haar) norm of the scalarized function.  Exact for the closed-form
    spaces; otherwise bracketed above by the L^p norm of t -> ||phi(t)||."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return lp_dual_sup(phi.space, phi.values, p, seed=seed)


def pettis_integral(phi: VectorFunction, subset=None) -> XVector:
    """Vector-valued integral over A against normalized counting measure.

    Weak and strong integrals agree here; pairing the result with any dual
    vector equals the scalar integral of the paired function.
    """
    n = phi.group.order
    if subset is None:
        idx = np.arange(n)
    else:
        idx = np.asarray(sorted(set(int(t) for t in subset)), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= n):
            raise ValueError("subset contains indices outside the group")
    return XVector(phi.space, phi.values[idx].sum(axis=0) / n)


def function_pushforward(f: ScalarFunction, h: GroupMap) -> ScalarFunction:
    """f_h = f composed with the inverse map: f_h(t) = f(h^{-1}(t))."""
    _same_group(f.group, h.group)
    return ScalarFunction(f.group, f.values[h.inverse().table])


def translate(f: ScalarFunction, t: int) -> ScalarFunction:
    """Right translate: (tau_t f)(s) = f(s t^{-1})."""
    return function_pushforward(f, GroupMap.translation(f.group, t))


def reflect(f: ScalarFunction) -> ScalarFunction:
    """Argument inversion: f~(t) = f(t^{-1})."""
    return function_pushforward(f, GroupMap.inversion(f.group))
