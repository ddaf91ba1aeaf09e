"""Maximal entanglement and unextendibility for states of C^2 (x) C^d.

A state's amplitudes are reshaped into its 2 x d coefficient matrix ``M``
(``M[a, j]`` is the amplitude on |a>|j'>). Its singular values are the Schmidt
coefficients, obtained here in closed form from the 2 x 2 matrix
``G = M M^dagger``; no SVD is needed.

For a normalized state ``det(G) <= 1/4`` with equality exactly when both
Schmidt coefficients equal 1/sqrt(2). Unextendibility of an orthonormal set is
certified by bounding the supremum of ``det(G)`` over the unit sphere of the
set's orthogonal complement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import NotOrthonormalError, ShapeError
from .linalg import TolLike, as_eps, orthonormality_deviation
from .report import VerificationReport

INV_SQRT2 = 1.0 / math.sqrt(2.0)
MAX_GRAM_DET = 0.25


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A vector of C^2 (x) C^d with amplitude index ``a*d + j``.

    Normalization is not enforced at construction; verification routines
    report unnormalized input instead of rejecting it.
    """

    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if self.d < 2:
            raise ShapeError(f"second factor dimension must be >= 2, got {self.d}")
        if amps.size != 2 * self.d:
            raise ShapeError(f"state in C^2 (x) C^{self.d} needs {2 * self.d} amplitudes, got {amps.size}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self):
        return f"BipartiteState(d={self.d}, amplitudes={np.array2string(self.amplitudes, precision=4)})"


@dataclass(frozen=True)
class SchmidtPair:
    lambda1: float
    lambda2: float


@dataclass(frozen=True)
class Subspace:
    d: int
    basis: tuple[BipartiteState, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """Basis vectors as the columns of a 2d x k matrix."""
        if not self.basis:
            return np.zeros((2 * self.d, 0), dtype=np.complex128)
        return np.column_stack([s.amplitudes for s in self.basis])


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 64
    refine_tol: float = 1e-9
    certify_margin: float = 1e-6
    max_iters: int = 500
    seed: int = 0
    grid: int = 64  # per-axis resolution of the coarse grid used when dim <= 2


def coefficient_matrix(s: BipartiteState) -> np.ndarray:
    return s.amplitudes.reshape(2, s.d).copy()


def gram_det(s: BipartiteState) -> float:
    """det(M M^dagger) of the coefficient matrix."""
    return float(kernels.gram_det_batch(s.amplitudes[None, :], s.d)[0])


def schmidt_coefficients(s: BipartiteState) -> SchmidtPair:
    r0, r1 = s.amplitudes[: s.d], s.amplitudes[s.d :]
    n0 = float(np.vdot(r0, r0).real)
    n1 = float(np.vdot(r1, r1).real)
    c = np.vdot(r0, r1)
    tr = n0 + n1
    det = max(n0 * n1 - abs(c) ** 2, 0.0)
    disc = math.sqrt(max(tr * tr - 4.0 * det, 0.0))
    l1sq = 0.5 * (tr + disc)
    if l1sq <= 0.0:
        return SchmidtPair(0.0, 0.0)
    # lambda1^2 * lambda2^2 = det avoids the cancellation in (tr - disc) / 2
    return SchmidtPair(math.sqrt(l1sq), math.sqrt(det / l1sq))


def entanglement_deviation(s: BipartiteState) -> float:
    p = schmidt_coefficients(s)
    return max(abs(p.lambda1 - INV_SQRT2), abs(p.lambda2 - INV_SQRT2))


def is_maximally_entangled(s: BipartiteState, tol: TolLike = None) -> bool:
    return entanglement_deviation(s) <= as_eps(tol)


def orthogonal_complement(states: Sequence[BipartiteState], tol: TolLike = None) -> Subspace:
    """Orthonormal basis of the complement of ``span(states)``.

    The input is completed against e_0, e_1, ... in that order by modified
    Gram-Schmidt (two passes), so the result is deterministic.
    """
    states = list(states)
    if not states:
        raise ShapeError("orthogonal_complement needs at least one state")
    d = states[0].d
    if any(s.d != d for s in states):
        raise ShapeError(f"states mix dimensions {sorted({s.d for s in states})}")
    dim = 2 * d
    if len(states) > dim:
        raise ShapeError(f"{len(states)} states cannot be orthonormal in dimension {dim}")
    V = np.column_stack([s.amplitudes for s in states])
    dev, where = orthonormality_deviation(V)
    if dev > as_eps(tol):
        raise NotOrthonormalError(f"input states are not orthonormal: |G - I| = {dev:.3e} at {where}")

    span = [V[:, k].copy() for k in range(V.shape[1])]
    extra = []
    for k in range(dim):
        if len(span) == dim:
            break
        v = np.zeros(dim, dtype=np.complex128)
        v[k] = 1.0
        for _ in range(2):
            for u in span:
                v -= np.vdot(u, v) * u
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            v /= nv
            span.append(v)
            extra.append(v)
    return Subspace(d, tuple(BipartiteState(d, v) for v in extra))


def _det_and_grad(C: np.ndarray, B: np.ndarray, d: int):
    """Value and ascent direction of det(M M^dagger) for each row of C."""
    V = C @ B.T
    r0, r1 = V[:, :d], V[:, d:]
    n0 = np.einsum("ij,ij->i", r0.conj(), r0).real
    n1 = np.einsum("ij,ij->i", r1.conj(), r1).real
    c = np.einsum("ij,ij->i", r0.conj(), r1)
    f = n0 * n1 - np.abs(c) ** 2
    g0 = r0 * n1[:, None] - r1 * c.conj()[:, None]
    g1 = r1 * n0[:, None] - r0 * c[:, None]
    g = 2.0 * (np.hstack([g0, g1]) @ B.conj())
    # project onto the tangent space of the unit sphere
    g -= np.einsum("ij,ij->i", C.conj(), g).real[:, None] * C
    return f, g


def _normalize_rows(C):
    return C / np.linalg.norm(C, axis=1, keepdims=True)


def _ascend(C: np.ndarray, B: np.ndarray, d: int, cfg: OptimizerConfig) -> np.ndarray:
    """Batched projected gradient ascent with per-start adaptive steps."""
    f, g = _det_and_grad(C, B, d)
    step = np.full(C.shape[0], 0.5)
    for _ in range(cfg.max_iters):
        active = (np.linalg.norm(g, axis=1) > cfg.refine_tol) & (step > 1e-14)
        if not active.any():
            break
        trial = _normalize_rows(C + step[:, None] * g)
        ft, gt = _det_and_grad(trial, B, d)
        ok = active & (ft >= f)
        C = np.where(ok[:, None], trial, C)
        f = np.where(ok, ft, f)
        g = np.where(ok[:, None], gt, g)
        step = np.where(ok, step * 1.5, np.where(active, step * 0.5, step))
    return f


def max_entanglement_in_subspace(sub: Subspace, cfg: OptimizerConfig | None = None) -> float:
    """Lower-bound estimate of sup det(M_v M_v^dagger) over unit v in ``sub``.

    The supremum is 1/4 exactly when the subspace (closure) contains a
    maximally entangled vector. One-dimensional subspaces are evaluated
    directly; otherwise multi-start gradient ascent runs on the sphere,
    seeded additionally from a coarse grid when the dimension is 2.
    """
    cfg = cfg or OptimizerConfig()
    if sub.dim == 0:
        raise ShapeError("max_entanglement_in_subspace needs a nonempty subspace")
    B = sub.matrix()
    d, k = sub.d, sub.dim
    if k == 1:
        return float(min(max(kernels.gram_det_batch(B.T, d)[0], 0.0), MAX_GRAM_DET))

    rng = np.random.default_rng(cfg.seed)
    starts = [np.eye(k, dtype=np.complex128)]
    z = rng.standard_normal((cfg.starts, k)) + 1j * rng.standard_normal((cfg.starts, k))
    starts.append(_normalize_rows(z))
    best = 0.0
    if k == 2:
        alpha = np.linspace(0.0, math.pi / 2, cfg.grid)
        beta = np.linspace(0.0, 2 * math.pi, cfg.grid, endpoint=False)
        a, b = np.meshgrid(alpha, beta, indexing="ij")
        G = np.stack([np.cos(a).ravel(), (np.exp(1j * b) * np.sin(a)).ravel()], axis=1)
        vals = kernels.gram_det_batch(G @ B.T, d)
        best = float(vals.max())
        top = np.argsort(vals)[-8:]
        starts.append(G[top])
    f = _ascend(np.vstack(starts), B, d, cfg)
    best = max(best, float(f.max()))
    return float(min(max(best, 0.0), MAX_GRAM_DET))


def _as_states(states) -> list[BipartiteState]:
    if hasattr(states, "states"):
        return list(states.states)
    return list(states)


def verify_umeb(
    states: Iterable[BipartiteState] | object,
    tol: TolLike = None,
    cfg: OptimizerConfig | None = None,
) -> VerificationReport:
    """Check the three defining clauses of an unextendible maximally entangled basis.

    Sub-reports, in order: every state maximally entangled; pairwise
    orthonormality; no maximally entangled vector in the orthogonal
    complement (numerical supremum below 1/4 - certify_margin).

    The aggregate report's deviation is the largest ratio of a clause's
    deviation to that clause's tolerance, so it passes iff every clause does.
    """
    eps = as_eps(tol)
    cfg = cfg or OptimizerConfig()
    states = _as_states(states)
    if not states:
        raise ShapeError("verify_umeb needs at least one state")
    d = states[0].d
    if any(s.d != d for s in states):
        raise ShapeError(f"states mix dimensions {sorted({s.d for s in states})}")
    n = len(states)

    devs = [entanglement_deviation(s) for s in states]
    worst = int(np.argmax(devs))
    clause1 = VerificationReport.from_deviation("maximally_entangled", INV_SQRT2, devs[worst], worst, eps)

    V = np.column_stack([s.amplitudes for s in states])
    odev, where = orthonormality_deviation(V)
    clause2 = VerificationReport.from_deviation("orthonormal", 0.0, odev, list(where), eps)

    cap = MAX_GRAM_DET - cfg.certify_margin
    if not clause2.passed or n > 2 * d:
        clause3 = VerificationReport.from_deviation(
            "unextendible", MAX_GRAM_DET, MAX_GRAM_DET, "complement", cap,
            notes=["skipped: input is not an orthonormal set; no bound on the complement"],
        )
    elif n == 2 * d:
        clause3 = VerificationReport.from_deviation(
            "unextendible", MAX_GRAM_DET, 0.0, "complement", cap,
            notes=["complement is empty (full basis); clause holds vacuously"],
        )
    else:
        sub = orthogonal_complement(states, tol=eps)
        sup = max_entanglement_in_subspace(sub, cfg)
        clause3 = VerificationReport.from_deviation(
            "unextendible", MAX_GRAM_DET, sup, "complement", cap,
            notes=[f"complement dimension {sub.dim}; sup det(M M^dagger) estimate {sup:.6e}"],
        )

    clauses = [clause1, clause2, clause3]
    ratios = [c.max_abs_deviation / c.tolerance for c in clauses]
    k = int(np.argmax(ratios))
    return VerificationReport(
        passed=all(c.passed for c in clauses),
        criterion="umeb",
        target_value=0.0,
        max_abs_deviation=float(ratios[k]),
        worst_index=clauses[k].criterion,
        tolerance=1.0,
        sub_reports=clauses,
        notes=[f"{n} states in C^2 (x) C^{d}"],
    )
