"""Concrete normed coefficient spaces with dual pairing and matrix-level norms.

Four families are provided:

* ``ScalarSpace``     -- the complex numbers.
* ``LinfSpace(k)``    -- C^k with the max norm (dual: l1).
* ``MatOpSpace(d)``   -- d x d complex matrices with the operator norm
                         (dual: trace class, pairing <A, B> = tr(B* A)).
* ``WeightedL1Space`` -- C^k with a strictly-positive-weighted l1 norm
                         (dual: weighted l-infinity, i.e. a polydisc ball).

Vectors are stored as flat complex coordinate arrays (length 1, k or d*d).
The commutative families carry the matrix norms obtained by pairing against
single dual functionals ("min" style); matrices over ``MatOpSpace`` are normed
as block operator matrices.

Suprema over the dual unit ball are exact for ``ScalarSpace``/``LinfSpace``
and certified brackets otherwise: the lower end comes from alternating
phase ascent over extreme points of the dual ball, the upper end from a
provable majorant, so downstream inequality checks can never certify a
false violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_RESTARTS = 64
DEFAULT_ITERS = 100
ASCENT_TOL = 1e-10

__all__ = [
    "NormEstimate",
    "CoefficientSpace",
    "ScalarSpace",
    "LinfSpace",
    "MatOpSpace",
    "WeightedL1Space",
    "XVector",
    "MatrixOverX",
    "norm",
    "dual_norm",
    "pair",
    "dual_ball_sup",
    "lp_dual_sup",
    "amplified_norm",
    "matrix_pair",
    "mox_matmul",
    "mox_assemble",
    "space_from_spec",
]


@dataclass(frozen=True)
class NormEstimate:
    """Certified bracket [lower, upper] for a nonnegative norm quantity.

    ``exact`` implies lower == upper.  All estimators in this package keep
    ``lower`` a true lower bound and ``upper`` a true upper bound, so
    comparisons of the form lhs.lower > rhs.upper are sound certificates.
    """

    lower: float
    upper: float
    exact: bool

    def __post_init__(self):
        lo = max(0.0, float(self.lower))
        hi = max(lo, float(self.upper))
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @staticmethod
    def of_exact(value: float) -> "NormEstimate":
        v = max(0.0, float(value))
        return NormEstimate(v, v, True)

    @staticmethod
    def bracket(lower: float, upper: float) -> "NormEstimate":
        return NormEstimate(min(lower, upper), upper, False)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def scaled(self, c: float) -> "NormEstimate":
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        return NormEstimate(self.lower * c, self.upper * c, self.exact)

    def rooted(self, p: float) -> "NormEstimate":
        """Apply x -> x**(1/p) to both ends (monotone, bracket-preserving)."""
        return NormEstimate(self.lower ** (1.0 / p), self.upper ** (1.0 / p), self.exact)

    def times(self, other: "NormEstimate") -> "NormEstimate":
        return NormEstimate(
            self.lower * other.lower, self.upper * other.upper, self.exact and other.exact
        )

    @staticmethod
    def max_of(estimates: Iterable["NormEstimate"]) -> "NormEstimate":
        items = list(estimates)
        if not items:
            return NormEstimate.of_exact(0.0)
        lo = max(e.lower for e in items)
        hi = max(e.upper for e in items)
        return NormEstimate(lo, hi, all(e.exact for e in items))


class CoefficientSpace:
    """Base class; concrete families implement the coordinate-level kernels."""

    dim: int
    label: str
    exact_dual_sup: bool = False

    # -- single-vector norms ------------------------------------------------

    def norm_of(self, coords: np.ndarray) -> float:
        return float(self.norm_many(np.asarray(coords, dtype=complex).reshape(1, -1))[0])

    def dual_norm_of(self, coords: np.ndarray) -> float:
        raise NotImplementedError

    def norm_many(self, vecs: np.ndarray) -> np.ndarray:
        """Norms of a [T, dim] stack of coordinate vectors."""
        raise NotImplementedError

    # -- duality kernels ----------------------------------------------------

    def pair_many(self, vecs: np.ndarray, xps: np.ndarray) -> np.ndarray:
        """Pairings <v_t, xp_r> as an [R, T] array."""
        raise NotImplementedError

    def norming_dual_many(self, ys: np.ndarray) -> np.ndarray:
        """For each row y, a dual-ball element xp with <y, xp> = ||y||."""
        raise NotImplementedError

    def sample_dual(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Random extreme points of the dual unit ball, as [count, dim] rows."""
        raise NotImplementedError

    # -- optional closed forms ----------------------------------------------

    def closed_dual_sup(self, weights: np.ndarray, vecs: np.ndarray):
        return None

    def closed_lp_sup(self, vecs: np.ndarray, p: float):
        return None

    def closed_amplified(self, entries: np.ndarray):
        return None

    # -- misc ----------------------------------------------------------------

    def zeros(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=complex)

    def __repr__(self):
        return self.label

    def __eq__(self, other):
        return isinstance(other, CoefficientSpace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (type(self).__name__, self.dim)


class ScalarSpace(CoefficientSpace):
    """X = C with the modulus norm; self-dual under plain multiplication."""

    exact_dual_sup = True

    def __init__(self):
        self.dim = 1
        self.label = "scalar"

    def norm_many(self, vecs):
        return np.abs(vecs[:, 0])

    def dual_norm_of(self, coords):
        return float(abs(np.asarray(coords, dtype=complex).reshape(-1)[0]))

    def pair_many(self, vecs, xps):
        return xps @ vecs.T  # bilinear z * z'

    def norming_dual_many(self, ys):
        y = ys[:, 0]
        a = np.abs(y)
        return np.where(a > 0, np.conj(y) / np.maximum(a, 1e-300), 1.0)[:, None]

    def sample_dual(self, rng, count):
        return np.exp(2j * np.pi * rng.random((count, 1)))

    def closed_dual_sup(self, weights, vecs):
        return float(weights @ np.abs(vecs[:, 0]))

    def closed_lp_sup(self, vecs, p):
        a = np.abs(vecs[:, 0])
        return float(np.mean(a**p) ** (1.0 / p))

    def closed_amplified(self, entries):
        return float(np.linalg.norm(entries[:, :, 0], 2))


class LinfSpace(CoefficientSpace):
    """X = C^k with the max norm; dual is l1, extreme dual points are +-e_j."""

    exact_dual_sup = True

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.dim = int(k)
        self.label = f"linf:{k}"

    def norm_many(self, vecs):
        return np.abs(vecs).max(axis=1)

    def dual_norm_of(self, coords):
        return float(np.abs(np.asarray(coords, dtype=complex)).sum())

    def pair_many(self, vecs, xps):
        return xps @ vecs.T

    def norming_dual_many(self, ys):
        j = np.argmax(np.abs(ys), axis=1)
        top = np.take_along_axis(ys, j[:, None], axis=1)[:, 0]
        a = np.abs(top)
        phase = np.where(a > 0, np.conj(top) / np.maximum(a, 1e-300), 1.0)
        out = np.zeros_like(ys)
        np.put_along_axis(out, j[:, None], phase[:, None], axis=1)
        return out

    def sample_dual(self, rng, count):
        j = rng.integers(0, self.dim, size=count)
        out = np.zeros((count, self.dim), dtype=complex)
        out[np.arange(count), j] = np.exp(2j * np.pi * rng.random(count))
        return out

    def closed_dual_sup(self, weights, vecs):
        # per-coordinate column sums; phases align against e_j functionals
        return float((weights @ np.abs(vecs)).max())

    def closed_lp_sup(self, vecs, p):
        a = np.abs(vecs)
        return float((np.mean(a**p, axis=0) ** (1.0 / p)).max())


class MatOpSpace(CoefficientSpace):
    """X = M_d with the operator norm; dual is trace class via tr(B* A)."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("d must be >= 1")
        self.d = int(d)
        self.dim = self.d * self.d
        self.label = f"matop:{d}"

    def _mats(self, vecs):
        return vecs.reshape(vecs.shape[0], self.d, self.d)

    def norm_many(self, vecs):
        return np.linalg.svd(self._mats(vecs), compute_uv=False)[:, 0]

    def dual_norm_of(self, coords):
        m = np.asarray(coords, dtype=complex).reshape(self.d, self.d)
        return float(np.linalg.svd(m, compute_uv=False).sum())

    def pair_many(self, vecs, xps):
        return np.conj(xps) @ vecs.T  # tr(xp^H v) on flat coordinates

    def norming_dual_many(self, ys):
        u, _, vh = np.linalg.svd(self._mats(ys))
        # xp = u1 v1^H pairs to the top singular value
        xp = u[:, :, 0][:, :, None] * vh[:, 0, :][:, None, :]
        return xp.reshape(ys.shape[0], self.dim)

    def sample_dual(self, rng, count):
        # rank-one u v^H: the extreme points of the trace-norm unit ball
        u = rng.standard_normal((count, self.d)) + 1j * rng.standard_normal((count, self.d))
        v = rng.standard_normal((count, self.d)) + 1j * rng.standard_normal((count, self.d))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        xp = u[:, :, None] * np.conj(v)[:, None, :]
        return xp.reshape(count, self.dim)

    def closed_amplified(self, entries):
        n = entries.shape[0]
        big = entries.reshape(n, n, self.d, self.d).transpose(0, 2, 1, 3)
        big = big.reshape(n * self.d, n * self.d)
        return float(np.linalg.norm(big, 2))

    def _key(self):
        return ("MatOpSpace", self.d)


class WeightedL1Space(CoefficientSpace):
    """X = C^k with norm sum_j w_j |c_j|; dual ball is the polydisc |xp_j| <= w_j.

    With k = |G| and uniform weights 1/|G| this realises the function space
    L^1 of a finite group as a coefficient space.
    """

    def __init__(self, weights: Sequence[float]):
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size < 1 or np.any(w <= 0):
            raise ValueError("weights must be a nonempty strictly positive vector")
        self.weights = w
        self.dim = int(w.size)
        self.label = f"weighted_l1:{self.dim}"

    @staticmethod
    def uniform(k: int) -> "WeightedL1Space":
        return WeightedL1Space(np.full(int(k), 1.0 / int(k)))

    def norm_many(self, vecs):
        return np.abs(vecs) @ self.weights

    def dual_norm_of(self, coords):
        c = np.asarray(coords, dtype=complex).reshape(-1)
        return float((np.abs(c) / self.weights).max())

    def pair_many(self, vecs, xps):
        return xps @ vecs.T

    def norming_dual_many(self, ys):
        a = np.abs(ys)
        phase = np.where(a > 0, np.conj(ys) / np.maximum(a, 1e-300), 0.0)
        return self.weights[None, :] * phase

    def sample_dual(self, rng, count):
        return self.weights[None, :] * np.exp(2j * np.pi * rng.random((count, self.dim)))

    def _key(self):
        return ("WeightedL1Space", tuple(self.weights.tolist()))


@dataclass(frozen=True)
class XVector:
    """An element of a coefficient space (or of its dual, by convention)."""

    space: CoefficientSpace
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=complex).reshape(-1)
        if c.size != self.space.dim:
            raise ValueError(f"expected {self.space.dim} coordinates, got {c.size}")
        object.__setattr__(self, "coords", c)

    @staticmethod
    def of(space: CoefficientSpace, coords) -> "XVector":
        return XVector(space, np.asarray(coords, dtype=complex))

    @staticmethod
    def zero(space: CoefficientSpace) -> "XVector":
        return XVector(space, space.zeros())

    def __add__(self, other: "XVector") -> "XVector":
        _require_same_space(self.space, other.space)
        return XVector(self.space, self.coords + other.coords)

    def __sub__(self, other: "XVector") -> "XVector":
        _require_same_space(self.space, other.space)
        return XVector(self.space, self.coords - other.coords)

    def __rmul__(self, z) -> "XVector":
        return XVector(self.space, complex(z) * self.coords)

    def __neg__(self) -> "XVector":
        return XVector(self.space, -self.coords)


@dataclass(frozen=True)
class MatrixOverX:
    """An n x n matrix with entries in one coefficient space.

    Carries the matrix-level norm of the space: the block operator norm for
    ``MatOpSpace`` and the sup over dual functionals of the scalar operator
    norm for the commutative families.
    """

    space: CoefficientSpace
    entries: np.ndarray  # [n, n, dim]

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.ndim != 3 or e.shape[0] != e.shape[1] or e.shape[2] != self.space.dim:
            raise ValueError("entries must have shape [n, n, space.dim]")
        object.__setattr__(self, "entries", e)

    @property
    def level(self) -> int:
        return self.entries.shape[0]

    @staticmethod
    def from_vectors(space: CoefficientSpace, grid: Sequence[Sequence[XVector]]) -> "MatrixOverX":
        n = len(grid)
        out = np.zeros((n, n, space.dim), dtype=complex)
        for i in range(n):
            if len(grid[i]) != n:
                raise ValueError("grid must be square")
            for j in range(n):
                _require_same_space(space, grid[i][j].space)
                out[i, j] = grid[i][j].coords
        return MatrixOverX(space, out)

    def entry(self, i: int, j: int) -> XVector:
        return XVector(self.space, self.entries[i, j].copy())

    def __add__(self, other: "MatrixOverX") -> "MatrixOverX":
        _require_same_space(self.space, other.space)
        return MatrixOverX(self.space, self.entries + other.entries)

    def __rmul__(self, z) -> "MatrixOverX":
        return MatrixOverX(self.space, complex(z) * self.entries)


def _require_same_space(a: CoefficientSpace, b: CoefficientSpace):
    if a != b:
        raise ValueError(f"coefficient space mismatch: {a!r} vs {b!r}")


def norm(x: XVector) -> float:
    """Norm of x in its space."""
    return x.space.norm_of(x.coords)


def dual_norm(xp: XVector) -> float:
    """Norm of xp regarded as an element of the dual space."""
    return xp.space.dual_norm_of(xp.coords)


def pair(x: XVector, xp: XVector) -> complex:
    """Duality pairing <x, xp>; linear in x, |value| <= norm(x) * dual_norm(xp)."""
    _require_same_space(x.space, xp.space)
    return complex(x.space.pair_many(x.coords[None, :], xp.coords[None, :])[0, 0])


def _atoms_to_arrays(space, atoms):
    weights = []
    vecs = []
    for c, v in atoms:
        if c < 0:
            raise ValueError("atom weights must be nonnegative")
        _require_same_space(space, v.space)
        weights.append(float(c))
        vecs.append(v.coords)
    if not weights:
        return np.zeros(0), np.zeros((0, space.dim), dtype=complex)
    return np.asarray(weights), np.asarray(vecs)


_STALL_PATIENCE = 3


def _phase_ascent(space, weights, vecs, seed, restarts, iters, tol, cap=np.inf):
    """Lower bound for sup_{xp in B_X'} sum_t w_t |<v_t, xp>| by alternating
    ascent: freeze per-atom phases and move xp to the norming functional of
    the phase-aligned sum, then realign phases; monotone in each half-step.

    Stops at the iteration cap, when the incumbent best stalls, or when it
    reaches ``cap`` (a known upper bound); every visited value is a valid
    lower bound, so early stopping never breaks soundness.
    """
    rng = np.random.default_rng(seed)
    T = len(weights)
    eps = np.ones((restarts, T), dtype=complex)
    if restarts > 1:
        eps[1:] = np.exp(2j * np.pi * rng.random((restarts - 1, T)))
    wv = weights[:, None] * vecs
    best = 0.0
    stall = 0
    for _ in range(iters):
        y = eps @ wv
        xp = space.norming_dual_many(y)
        p = space.pair_many(vecs, xp)
        ap = np.abs(p)
        val = ap @ weights
        top = float(val.max())
        if top > best + tol:
            best = max(best, top)
            stall = 0
        else:
            best = max(best, top)
            stall += 1
            if stall >= _STALL_PATIENCE:
                break
        if best >= cap - tol:
            break
        eps = np.where(ap > 0, np.conj(p) / np.maximum(ap, 1e-300), 1.0)
    return best


def dual_ball_sup(
    space: CoefficientSpace,
    atoms: Sequence[tuple[float, XVector]],
    *,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    iters: int = DEFAULT_ITERS,
) -> NormEstimate:
    """sup over the dual unit ball of sum_t c_t |<v_t, xp>|.

    Exact for ``ScalarSpace`` and ``LinfSpace``.  Otherwise returns a bracket:
    the lower end from phase ascent (which starts at the all-aligned phase
    configuration, so it always dominates ||sum c_t v_t||), the upper end from
    the variation bound sum_t c_t ||v_t||.
    """
    weights, vecs = _atoms_to_arrays(space, atoms)
    keep = weights > 0
    weights, vecs = weights[keep], vecs[keep]
    if len(weights) == 0:
        return NormEstimate.of_exact(0.0)
    closed = space.closed_dual_sup(weights, vecs)
    if closed is not None:
        return NormEstimate.of_exact(closed)
    upper = float(weights @ space.norm_many(vecs))
    if len(weights) == 1:
        return NormEstimate.bracket(upper, upper)
    lower = _phase_ascent(space, weights, vecs, seed, restarts, iters, ASCENT_TOL, cap=upper)
    return NormEstimate.bracket(min(lower, upper), upper)


def _lp_ascent(space, vecs, p, seed, restarts, iters, tol, cap=np.inf):
    """Lower bound for sup_{xp in B_X'} || t -> <v_t, xp> ||_{L^p(mean)} via
    alternating ascent between the xp-ball and the L^{p'} ball of test
    densities (Hoelder-optimal in each half-step)."""
    rng = np.random.default_rng(seed)
    T = vecs.shape[0]
    beta = np.ones((restarts, T), dtype=complex)
    if restarts > 1:
        raw = rng.standard_normal((restarts - 1, T)) + 1j * rng.standard_normal((restarts - 1, T))
        beta[1:] = raw
    q = p / (p - 1.0)
    nrm = np.mean(np.abs(beta) ** q, axis=1) ** (1.0 / q)
    beta /= np.maximum(nrm, 1e-300)[:, None]
    best = 0.0
    stall = 0
    for _ in range(iters):
        y = (beta @ vecs) / T
        xp = space.norming_dual_many(y)
        h = space.pair_many(vecs, xp)
        ah = np.abs(h)
        val = np.mean(ah**p, axis=1) ** (1.0 / p)
        top = float(val.max())
        if top > best + tol:
            best = max(best, top)
            stall = 0
        else:
            best = max(best, top)
            stall += 1
            if stall >= _STALL_PATIENCE:
                break
        if best >= cap - tol:
            break
        sgn = np.where(ah > 0, np.conj(h) / np.maximum(ah, 1e-300), 0.0)
        beta = sgn * ah ** (p - 1.0) / np.maximum(val, 1e-300)[:, None] ** (p - 1.0)
    return best


def lp_dual_sup(
    space: CoefficientSpace,
    vecs: np.ndarray,
    p: float,
    *,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    iters: int = DEFAULT_ITERS,
) -> NormEstimate:
    """sup over the dual unit ball of the L^p norm (w.r.t. the uniform
    probability weight 1/T) of t -> <v_t, xp>.

    p = 1 reduces to ``dual_ball_sup`` with weights 1/T; p = inf is the exact
    max of ||v_t||.  The upper end for brackets is the L^p norm of t -> ||v_t||.
    """
    vecs = np.asarray(vecs, dtype=complex)
    T = vecs.shape[0]
    if T == 0:
        return NormEstimate.of_exact(0.0)
    if p < 1:
        raise ValueError("p must be >= 1")
    if np.isinf(p):
        return NormEstimate.of_exact(float(space.norm_many(vecs).max()))
    if p == 1:
        atoms = [(1.0 / T, XVector(space, v)) for v in vecs]
        return dual_ball_sup(space, atoms, seed=seed, restarts=restarts, iters=iters)
    closed = space.closed_lp_sup(vecs, p)
    if closed is not None:
        return NormEstimate.of_exact(closed)
    upper = float(np.mean(space.norm_many(vecs) ** p) ** (1.0 / p))
    lower = _lp_ascent(space, vecs, p, seed, restarts, iters, ASCENT_TOL, cap=upper)
    return NormEstimate.bracket(min(lower, upper), upper)


def _amplified_ascent(space, entries, seed, restarts, iters, tol, cap=np.inf):
    """Lower bound for sup_{xp in B_X'} || [<x_ij, xp>] ||_op by alternating
    between the top singular pair of the paired matrix and the polydisc
    norming point of the (u, v)-compressed entry vector."""
    rng = np.random.default_rng(seed)
    n = entries.shape[0]
    flat = entries.reshape(n * n, space.dim)
    xp = space.sample_dual(rng, restarts)
    best = 0.0
    stall = 0
    for _ in range(iters):
        a = space.pair_many(flat, xp).reshape(restarts, n, n)
        u, s, vh = np.linalg.svd(a)
        top = float(s[:, 0].max())
        if top > best + tol:
            best = max(best, top)
            stall = 0
        else:
            best = max(best, top)
            stall += 1
            if stall >= _STALL_PATIENCE:
                break
        if best >= cap - tol:
            break
        u1 = np.conj(u[:, :, 0])
        v1 = np.conj(vh[:, 0, :])
        y = np.einsum("ri,rj,ijc->rc", u1, v1, entries)
        xp = space.norming_dual_many(y)
    return best


def amplified_norm(
    m: MatrixOverX,
    *,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    iters: int = DEFAULT_ITERS,
) -> NormEstimate:
    """Matrix-level norm of an n x n matrix over X.

    Exact for Scalar (operator norm), MatOp (block operator norm) and Linf
    (max over coordinates of the coordinate-slice operator norm).  For
    WeightedL1 a bracket: ascent lower bound (clamped to the entrywise max,
    which the matrix norm always dominates) against the n * max ||x_ij||
    upper bound.  Level 1 always collapses to the vector norm.
    """
    entries = m.entries
    n = m.level
    space = m.space
    if n == 1:
        return NormEstimate.of_exact(space.norm_of(entries[0, 0]))
    closed = space.closed_amplified(entries)
    if closed is not None:
        return NormEstimate.of_exact(closed)
    entry_norms = space.norm_many(entries.reshape(n * n, space.dim))
    max_entry = float(entry_norms.max())
    upper = n * max_entry
    if max_entry == 0.0:
        return NormEstimate.of_exact(0.0)
    lower = _amplified_ascent(space, entries, seed, restarts, iters, ASCENT_TOL, cap=upper)
    lower = max(lower, max_entry)
    return NormEstimate.bracket(min(lower, upper), upper)


def matrix_pair(m: MatrixOverX, mp: MatrixOverX) -> np.ndarray:
    """Matrix pairing of an n-level matrix over X with an m-level dual matrix.

    Returns the nm x nm complex matrix whose (i, j) block of size m x m is
    [<x_ij, xp_kl>]_{kl}.
    """
    _require_same_space(m.space, mp.space)
    n, mm = m.level, mp.level
    space = m.space
    p = space.pair_many(
        m.entries.reshape(n * n, space.dim), mp.entries.reshape(mm * mm, space.dim)
    )  # [mm*mm, n*n]
    p = p.T.reshape(n, n, mm, mm)
    return p.transpose(0, 2, 1, 3).reshape(n * mm, n * mm)


def mox_matmul(m: MatrixOverX, a: np.ndarray) -> MatrixOverX:
    """Right-multiply an X-valued matrix by a complex matrix: (m a)_ij =
    sum_k m_ik a_kj with entrywise complex scaling in X."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (m.level, m.level):
        raise ValueError("shape mismatch in mixed matrix product")
    return MatrixOverX(m.space, np.einsum("ikc,kj->ijc", m.entries, a))


def mox_assemble(blocks: Sequence[Sequence[MatrixOverX]]) -> MatrixOverX:
    """Assemble an n x n grid of d-level matrices over X into one matrix of
    level n*d, placing block (i, j) at rows/columns (i*d .. i*d+d-1)."""
    n = len(blocks)
    space = blocks[0][0].space
    d = blocks[0][0].level
    out = np.zeros((n * d, n * d, space.dim), dtype=complex)
    for i in range(n):
        if len(blocks[i]) != n:
            raise ValueError("blocks must form a square grid")
        for j in range(n):
            b = blocks[i][j]
            _require_same_space(space, b.space)
            if b.level != d:
                raise ValueError("all blocks must share one level")
            out[i * d : (i + 1) * d, j * d : (j + 1) * d] = b.entries
    return MatrixOverX(space, out)


def space_from_spec(spec: str, group_order: int | None = None) -> CoefficientSpace:
    """Parse a space descriptor: ``scalar``, ``linf:K``, ``matop:D`` or
    ``weighted_l1:K`` (uniform weights 1/K)."""
    s = spec.strip().lower()
    if s == "scalar":
        return ScalarSpace()
    if ":" in s:
        name, _, arg = s.partition(":")
        try:
            k = int(arg)
        except ValueError as exc:
            raise ValueError(f"bad space parameter in {spec!r}") from exc
        if name == "linf":
            return LinfSpace(k)
        if name == "matop":
            return MatOpSpace(k)
        if name == "weighted_l1":
            return WeightedL1Space.uniform(k)
    raise ValueError(f"unknown coefficient space spec {spec!r}")
