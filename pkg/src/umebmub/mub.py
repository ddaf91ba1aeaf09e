"""Second basis ``psi = (S (x) W) phi`` and three ways to test unbiasedness.

The bases ``phi`` (``bases.complete_basis``) and ``psi`` are mutually unbiased
iff every overlap has modulus 1/sqrt(2d). This is checked

* directly, over all (2d)^2 overlaps (``verify_pair_direct``);
* via the matrix of ``S (x) W`` in the phi basis, ``F^dagger (S (x) W) F``,
  whose entries must all have that modulus (``transformed_matrix``);
* via the nine entrywise families in terms of ``s_kl`` and ``w_st``
  (``theorem_conditions``).

Matrix symbols ``s_kl``, ``w_st`` in the family tables are 1-based, as they
are conventionally written; ``S[k-1, l-1]`` is stored.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .bases import BasisSet, MIN_D, build_F, complete_basis
from .entanglement import BipartiteState
from .errors import InvalidDimensionError, NotUnitaryError, ShapeError
from .linalg import TolLike, adjoint, as_eps, as_matrix, matmul, tensor_product, unitarity_deviation
from .report import VerificationReport

SIGN_TRIPLES = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))


@dataclass(frozen=True, eq=False)
class MubPairSpec:
    d: int
    S: np.ndarray
    W: np.ndarray

    def __post_init__(self):
        S, W = as_matrix(self.S), as_matrix(self.W)
        if int(self.d) < MIN_D:
            raise InvalidDimensionError(f"the construction requires d >= {MIN_D}, got d = {self.d}")
        if S.shape != (2, 2):
            raise ShapeError(f"S must be 2x2, got {S.shape[0]}x{S.shape[1]}")
        if W.shape != (self.d, self.d):
            raise ShapeError(f"W must be {self.d}x{self.d}, got {W.shape[0]}x{W.shape[1]}")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "W", W)

    def check_admissible(self, tol: TolLike = None) -> None:
        eps = as_eps(tol)
        for name, M in (("S", self.S), ("W", self.W)):
            dev = unitarity_deviation(M)
            if dev > eps:
                raise NotUnitaryError(f"{name} is not unitary: max |{name}^dagger {name} - I| = {dev:.3e} > {eps:g}")

    def is_admissible(self, tol: TolLike = None) -> bool:
        try:
            self.check_admissible(tol)
        except NotUnitaryError:
            return False
        return True

    def local_unitary(self) -> np.ndarray:
        return tensor_product(self.S, self.W)


def build_second_basis(spec: MubPairSpec, tol: TolLike = None) -> BasisSet:
    spec.check_admissible(tol)
    first = complete_basis(spec.d)
    U = spec.local_unitary()
    return BasisSet(
        spec.d,
        first.labels,
        tuple(BipartiteState(spec.d, U @ s.amplitudes) for s in first.states),
    )


def unbiased_target(d: int) -> float:
    return 1.0 / math.sqrt(2 * d)


def verify_pair_direct(A: BasisSet, B: BasisSet, tol: TolLike = None) -> VerificationReport:
    """All (2d)^2 overlap moduli against 1/sqrt(2d); lowest index wins ties."""
    eps = as_eps(tol)
    if A.d != B.d:
        raise ShapeError(f"bases live in different spaces: d = {A.d} and d = {B.d}")
    if not (A.is_full and B.is_full):
        raise ShapeError(f"need two full bases of {2 * A.d} states, got {len(A)} and {len(B)}")
    target = unbiased_target(A.d)
    MA, MB = A.matrix(), B.matrix()
    dev, i, j = kernels.overlap_max_deviation(MA, MB, target)
    worst_mod = abs(np.vdot(MA[:, i], MB[:, j]))
    return VerificationReport.from_deviation(
        "mub_direct", target, dev, [list(A.labels[i]), list(B.labels[j])], eps,
        notes=[f"modulus at worst pair {worst_mod:.12g}"],
    )


def transformed_matrix(spec: MubPairSpec, tol: TolLike = None) -> np.ndarray:
    """``F^dagger (S (x) W) F``: the local unitary in the phi basis."""
    spec.check_admissible(tol)
    F = build_F(spec.d)
    return matmul(adjoint(F), matmul(spec.local_unitary(), F))


def constant_modulus_report(T, tol: TolLike = None) -> VerificationReport:
    """Every entry of ``T`` (2d x 2d) must have modulus 1/sqrt(2d)."""
    T = as_matrix(T)
    target = 1.0 / math.sqrt(T.shape[0])
    dev = np.abs(np.abs(T) - target)
    i, j = np.unravel_index(np.argmax(dev), dev.shape)
    return VerificationReport.from_deviation("constant_modulus", target, dev[i, j], [int(i), int(j)], as_eps(tol))


def verify_transformed(spec: MubPairSpec, tol: TolLike = None) -> VerificationReport:
    return constant_modulus_report(transformed_matrix(spec, tol), tol)


def theorem_family_terms(d: int) -> Iterator[tuple[int, int | None, int | None, tuple]]:
    """Yield ``(family, k, j, (w1, w2, w3, w4))`` with 1-based W indices.

    The four indices are the W entries multiplying s11, s21, s12 and s22, for
    families 1-9 with ``k, j`` ranging over 1..d-2 where they occur.
    """
    D = d
    inner = range(1, D - 1)
    for k in inner:
        for j in inner:
            yield 1, k, j, ((k, j), (k + 1, j), (k, j + 1), (k + 1, j + 1))
    for k in inner:
        yield 2, k, None, ((k, D), (k + 1, D), (k, D), (k + 1, D))
    for j in inner:
        yield 3, None, j, ((D, j), (D, j), (D, j + 1), (D, j + 1))
    for j in inner:
        yield 4, None, j, ((D - 1, j), (1, j), (D - 1, j + 1), (1, j + 1))
    for k in inner:
        yield 5, k, None, ((k, D - 1), (k + 1, D - 1), (k, 1), (k + 1, 1))
    yield 6, None, None, ((D - 1, D - 1), (1, D - 1), (D - 1, 1), (1, 1))
    yield 7, None, None, ((D - 1, D), (1, D), (D - 1, D), (1, D))
    yield 8, None, None, ((D, D - 1), (D, D - 1), (D, 1), (D, 1))
    yield 9, None, None, ((D, D), (D, D), (D, D), (D, D))


def theorem_lhs(spec: MubPairSpec, w_idx, signs) -> float:
    S, W = spec.S, spec.W
    a, b, c = signs
    (p1, p2, p3, p4) = [(s - 1, t - 1) for s, t in w_idx]
    z = (S[0, 0] * W[p1] + (-1) ** a * S[1, 0] * W[p2]
         + (-1) ** b * S[0, 1] * W[p3] + (-1) ** c * S[1, 1] * W[p4])
    return abs(z)


def theorem_target(d: int) -> float:
    # each left-hand side is twice an overlap modulus 1/sqrt(2d)
    return math.sqrt(2.0 / d)


def theorem_conditions(spec: MubPairSpec, tol: TolLike = None) -> VerificationReport:
    eps = as_eps(tol)
    spec.check_admissible(eps)
    target = theorem_target(spec.d)
    worst, where = -1.0, None
    for fam, k, j, w_idx in theorem_family_terms(spec.d):
        for signs in SIGN_TRIPLES:
            dev = abs(theorem_lhs(spec, w_idx, signs) - target)
            if dev > worst:
                worst, where = dev, [fam, list(signs), k, j]
    return VerificationReport.from_deviation("theorem_families", target, worst, where, eps)


def three_way(spec: MubPairSpec, tol: TolLike = None) -> tuple[bool, bool, bool]:
    """Verdicts of the direct sweep, the constant-modulus test and the families."""
    direct = verify_pair_direct(complete_basis(spec.d), build_second_basis(spec, tol), tol).passed
    return direct, verify_transformed(spec, tol).passed, theorem_conditions(spec, tol).passed


@dataclass(frozen=True, eq=False)
class PhaseSpec:
    """Diagonal ``S = diag(e^{i phi1}, e^{i phi2})`` and ``w_st = r_st e^{i theta_st}``."""

    d: int
    phi1: float
    phi2: float
    r: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        theta = np.asarray(self.theta, dtype=float)
        if r.shape != (self.d, self.d) or theta.shape != (self.d, self.d):
            raise ShapeError(f"r and theta must be {self.d}x{self.d}, got {r.shape} and {theta.shape}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", theta)

    def S(self) -> np.ndarray:
        return np.diag([cmath.exp(1j * self.phi1), cmath.exp(1j * self.phi2)])

    def W(self) -> np.ndarray:
        return self.r * np.exp(1j * self.theta)

    def to_mub_spec(self) -> MubPairSpec:
        return MubPairSpec(self.d, self.S(), self.W())

    @classmethod
    def from_mub_spec(cls, spec: MubPairSpec, tol: TolLike = None) -> PhaseSpec:
        eps = as_eps(tol)
        if abs(spec.S[0, 1]) > eps or abs(spec.S[1, 0]) > eps:
            raise ShapeError("phase parameterization requires a diagonal S")
        return cls(
            spec.d,
            float(np.angle(spec.S[0, 0])),
            float(np.angle(spec.S[1, 1])),
            np.abs(spec.W),
            np.angle(spec.W),
        )


def corollary_pairs(d: int) -> Iterator[tuple[int, int | None, int | None, tuple, tuple]]:
    """Phase pairs ``(theta paired with phi1, theta paired with phi2)``, 1-based.

    They are the s11 and s22 terms of each family, the only ones that
    survive when S is diagonal.
    """
    for fam, k, j, w_idx in theorem_family_terms(d):
        yield fam, k, j, w_idx[0], w_idx[3]


def phase_deviation(x: float) -> float:
    """Distance of ``x mod pi`` from pi/2."""
    return abs(math.fmod(math.fmod(x, math.pi) + math.pi, math.pi) - math.pi / 2)


def corollary_check(ps: PhaseSpec, tol: TolLike = None) -> VerificationReport:
    """Moduli equal to 1/sqrt(d) and every phase difference pi/2 modulo pi."""
    eps = as_eps(tol)
    target_r = 1.0 / math.sqrt(ps.d)
    rdev = np.abs(ps.r - target_r)
    s, t = np.unravel_index(np.argmax(rdev), rdev.shape)
    worst, where = float(rdev[s, t]), ["modulus", [int(s) + 1, int(t) + 1]]
    for fam, k, j, (s1, t1), (s2, t2) in corollary_pairs(ps.d):
        diff = (ps.phi1 + ps.theta[s1 - 1, t1 - 1]) - (ps.phi2 + ps.theta[s2 - 1, t2 - 1])
        dev = phase_deviation(diff)
        if dev > worst:
            worst, where = dev, ["phase", fam, k, j]
    report = VerificationReport.from_deviation("corollary_phases", math.pi / 2, worst, where, eps)
    if unitarity_deviation(ps.W()) > eps:
        report.notes.append("W reconstructed from (r, theta) is not unitary; the phase spec is not admissible")
    return report


# -- worked examples -------------------------------------------------------

def omega(k: int) -> complex:
    """Twelfth root of unity e^{k pi i / 6}."""
    return cmath.exp(1j * k * math.pi / 6)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    d: int
    S: tuple
    W_signs: tuple
    phi1: float
    phi2: float
    theta_pi: tuple  # 1-based (s, t) with theta_st = pi; every other theta is 0


_CATALOG = {
    "ex1": CatalogEntry(
        "ex1", 4,
        ((1j, 0), (0, 1)),
        ((-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1)),
        math.pi / 2, 0.0,
        ((1, 1), (2, 2), (3, 3), (4, 4)),
    ),
    "ex2": CatalogEntry(
        "ex2", 4,
        ((omega(4), 0), (0, omega(1))),
        ((1, -1, 1, 1), (1, 1, -1, 1), (-1, 1, 1, 1), (1, 1, 1, -1)),
        2 * math.pi / 3, math.pi / 6,
        ((1, 2), (2, 3), (3, 1), (4, 4)),
    ),
    "ex3": CatalogEntry(
        "ex3", 4,
        ((omega(2), 0), (0, omega(11))),
        ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1)),
        math.pi / 3, -math.pi / 6,
        ((2, 3), (3, 2), (2, 4), (3, 4), (4, 2), (4, 3)),
    ),
    "ex4": CatalogEntry(
        "ex4", 8,
        ((1j, 0), (0, 1)),
        (
            (1, 1, 1, 1, 1, 1, 1, 1),
            (-1, 1, -1, 1, -1, 1, -1, 1),
            (1, 1, -1, -1, 1, 1, -1, -1),
            (-1, 1, 1, -1, -1, 1, 1, -1),
            (1, 1, 1, 1, -1, -1, -1, -1),
            (-1, 1, -1, 1, 1, -1, 1, -1),
            (1, 1, -1, -1, -1, -1, 1, 1),
            (-1, 1, 1, -1, 1, -1, -1, 1),
        ),
        math.pi / 2, 0.0,
        (
            (2, 1), (2, 3), (2, 5), (2, 7),
            (3, 3), (3, 4), (3, 7), (3, 8),
            (4, 1), (4, 4), (4, 5), (4, 8),
            (5, 5), (5, 6), (5, 7), (5, 8),
            (6, 1), (6, 3), (6, 6), (6, 8),
            (7, 3), (7, 4), (7, 5), (7, 6),
            (8, 1), (8, 4), (8, 6), (8, 7),
        ),
    ),
}

EXAMPLE_IDS = tuple(_CATALOG)


def _entry(example_id: str) -> CatalogEntry:
    try:
        return _CATALOG[example_id]
    except KeyError:
        raise KeyError(f"unknown example {example_id!r}; choose one of {', '.join(EXAMPLE_IDS)}") from None


def example_catalog(example_id: str) -> MubPairSpec:
    """(d, S, W) exactly as printed for the worked example ``example_id``."""
    e = _entry(example_id)
    W = np.array(e.W_signs, dtype=np.complex128) / math.sqrt(e.d)
    return MubPairSpec(e.d, np.array(e.S, dtype=np.complex128), W)


def example_phase_spec(example_id: str) -> PhaseSpec:
    """The phase parameters stated for the example, independent of its printed W."""
    e = _entry(example_id)
    theta = np.zeros((e.d, e.d))
    for s, t in e.theta_pi:
        theta[s - 1, t - 1] = math.pi
    return PhaseSpec(e.d, e.phi1, e.phi2, np.full((e.d, e.d), 1.0 / math.sqrt(e.d)), theta)
