"""Search for (S, W) pairs with diagonal S whose second basis is unbiased.

Every mode produces W candidates with all moduli 1/sqrt(d), pairs each with
``S = diag(e^{i phi1}, e^{i phi2})``, and emits only those that pass the
direct overlap sweep. Candidates equal up to a global phase of W are emitted
once, as the representative whose first nonzero entry is real and positive.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .bases import MIN_D, complete_basis
from .errors import InvalidDimensionError, SearchConfigError
from .linalg import DEFAULT_EPS, matrix_to_json, unitarity_deviation
from .mub import MubPairSpec, build_second_basis, corollary_pairs, verify_pair_direct

MODES = ("exhaustive_signs", "sylvester_orbit", "random_phases")
EXHAUSTIVE_MAX_D = 4
MAX_D = 16


@dataclass(frozen=True)
class SearchConfig:
    d: int
    mode: str
    limit: int = 1000
    seed: int = 0
    phi1: float = math.pi / 2
    phi2: float = 0.0
    samples: int = 4096  # draws for the randomized modes
    alphabet: int = 12  # random root phases are multiples of 2 pi / alphabet
    roots: tuple[float, ...] | None = None  # fixed root phases, row-major root order
    tol: float = DEFAULT_EPS

    def __post_init__(self):
        if self.mode not in MODES:
            raise SearchConfigError(f"unknown mode {self.mode!r}; choose one of {', '.join(MODES)}")
        if self.d < MIN_D:
            raise InvalidDimensionError(f"the construction requires d >= {MIN_D}, got d = {self.d}")
        if self.d > MAX_D:
            raise SearchConfigError(f"d = {self.d} exceeds the search cap of {MAX_D}")
        if self.mode == "exhaustive_signs" and self.d > EXHAUSTIVE_MAX_D:
            raise SearchConfigError(
                f"exhaustive_signs enumerates 2^(d^2) patterns and is limited to d <= {EXHAUSTIVE_MAX_D}, got d = {self.d}"
            )
        if self.mode == "sylvester_orbit" and self.d & (self.d - 1):
            raise SearchConfigError(f"sylvester_orbit needs d a power of 2, got d = {self.d}")
        if self.limit < 1:
            raise SearchConfigError(f"limit must be positive, got {self.limit}")
        if self.samples < 1 or self.alphabet < 1:
            raise SearchConfigError("samples and alphabet must be positive")


@dataclass
class Candidate:
    spec: MubPairSpec
    provenance: str
    verified: bool

    def to_json(self) -> dict:
        return {
            "spec": {"d": self.spec.d, "S": matrix_to_json(self.spec.S), "W": matrix_to_json(self.spec.W)},
            "provenance": self.provenance,
            "verified": self.verified,
        }


@dataclass
class SearchStats:
    examined: int = 0
    unitary: int = 0
    verified: int = 0
    emitted: int = 0
    duplicates: int = 0
    inconsistent: int = 0

    def summary(self) -> str:
        return (
            f"examined={self.examined} unitary={self.unitary} verified={self.verified} "
            f"duplicates={self.duplicates} inconsistent={self.inconsistent} emitted={self.emitted}"
        )


def diagonal_S(phi1: float, phi2: float) -> np.ndarray:
    return np.diag([np.exp(1j * phi1), np.exp(1j * phi2)])


def canonical_phase(W: np.ndarray) -> np.ndarray:
    """Rotate W so its first nonzero entry (row-major) is real positive."""
    flat = W.ravel()
    nz = np.flatnonzero(np.abs(flat) > 1e-12)
    if nz.size == 0:
        return W.copy()
    z = flat[nz[0]]
    return W * (abs(z) / z)


def _phase_key(W: np.ndarray) -> bytes:
    c = canonical_phase(W)
    return (np.round(c, 9) + 0.0).tobytes()


def _filter(raw: Iterable[tuple[np.ndarray, str]], cfg: SearchConfig, stats: SearchStats) -> Iterator[Candidate]:
    S = diagonal_S(cfg.phi1, cfg.phi2)
    first = complete_basis(cfg.d)
    seen: set[bytes] = set()
    emitted = 0
    for W, provenance in raw:
        if unitarity_deviation(W) > cfg.tol:
            continue
        stats.unitary += 1
        spec = MubPairSpec(cfg.d, S, canonical_phase(W))
        if not verify_pair_direct(first, build_second_basis(spec, cfg.tol), cfg.tol).passed:
            continue
        stats.verified += 1
        key = _phase_key(W)
        if key in seen:
            stats.duplicates += 1
            continue
        seen.add(key)
        stats.emitted += 1
        emitted += 1
        yield Candidate(spec, provenance, True)
        if emitted >= cfg.limit:
            return


def sign_matrix(mask: int, d: int) -> np.ndarray:
    """Entry (r, c) is -1 iff bit ``d*d - 1 - (r*d + c)`` of ``mask`` is set."""
    bits = (int(mask) >> np.arange(d * d - 1, -1, -1)) & 1
    return (1 - 2 * bits).reshape(d, d).astype(float)


def hadamard_sign_patterns(d: int) -> list[np.ndarray]:
    """All d x d +-1 matrices with orthogonal rows, in lexicographic order."""
    return [sign_matrix(m, d) for m in kernels.hadamard_masks(d)]


def enumerate_sign_matrices(cfg: SearchConfig, stats: SearchStats | None = None) -> Iterator[Candidate]:
    if cfg.mode != "exhaustive_signs":
        raise SearchConfigError(f"enumerate_sign_matrices needs mode exhaustive_signs, got {cfg.mode}")
    stats = stats if stats is not None else SearchStats()
    d = cfg.d
    masks = kernels.hadamard_masks(d)
    # patterns failing row orthogonality are rejected inside the kernel
    stats.examined += 1 << (d * d)

    def raw():
        for m in masks:
            yield sign_matrix(m, d) / math.sqrt(d), f"exhaustive_signs d={d} pattern={int(m):#0{2 + (d * d + 3) // 4}x}"

    yield from _filter(raw(), cfg, stats)


def sylvester_hadamard(d: int) -> np.ndarray:
    if d < 1 or d & (d - 1):
        raise SearchConfigError(f"Sylvester construction needs a power of 2, got {d}")
    H = np.ones((1, 1))
    while H.shape[0] < d:
        H = np.block([[H, H], [H, -H]])
    return H


def sylvester_orbit(cfg: SearchConfig, stats: SearchStats | None = None) -> Iterator[Candidate]:
    """Signed row/column permutations of the Sylvester matrix; draw 0 is the identity."""
    if cfg.mode != "sylvester_orbit":
        raise SearchConfigError(f"sylvester_orbit needs mode sylvester_orbit, got {cfg.mode}")
    stats = stats if stats is not None else SearchStats()
    d = cfg.d
    H = sylvester_hadamard(d)
    rng = np.random.default_rng(cfg.seed)

    def raw():
        for draw in range(cfg.samples):
            if draw == 0:
                rp, cp = np.arange(d), np.arange(d)
                rs, cs = np.ones(d, int), np.ones(d, int)
            else:
                rp, cp = rng.permutation(d), rng.permutation(d)
                rs, cs = rng.choice((-1, 1), d), rng.choice((-1, 1), d)
            stats.examined += 1
            W = rs[:, None] * H[rp][:, cp] * cs[None, :] / math.sqrt(d)
            yield W, (
                f"sylvester_orbit d={d} seed={cfg.seed} draw={draw} rows={rp.tolist()} cols={cp.tolist()} "
                f"row_signs={rs.tolist()} col_signs={cs.tolist()}"
            )

    yield from _filter(raw(), cfg, stats)


class PhaseConstraintGraph:
    """Phase constraints on the theta entries of W as a weighted graph.

    Each condition ``(phi1 + theta_u) - (phi2 + theta_v) = pi/2 (mod pi)`` is
    an edge ``u -> v`` requiring ``theta_v = theta_u + phi1 - phi2 - pi/2``
    modulo pi. Nodes are 0-based (s, t) entries.
    """

    def __init__(self, d: int, phi1: float, phi2: float):
        self.d = d
        shift = phi1 - phi2 - math.pi / 2
        self.adj: dict[tuple[int, int], list[tuple[tuple[int, int], float]]] = {
            (s, t): [] for s in range(d) for t in range(d)
        }
        for _fam, _k, _j, (s1, t1), (s2, t2) in corollary_pairs(d):
            u, v = (s1 - 1, t1 - 1), (s2 - 1, t2 - 1)
            self.adj[u].append((v, shift))
            self.adj[v].append((u, -shift))

    def roots(self) -> list[tuple[int, int]]:
        """First node (row-major) of every connected component."""
        seen, out = set(), []
        for node in self.adj:
            if node in seen:
                continue
            out.append(node)
            queue = deque([node])
            seen.add(node)
            while queue:
                x = queue.popleft()
                for y, _ in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return out

    def propagate(self, root_phases: Sequence[float], flips: Iterator[int]) -> np.ndarray | None:
        """Assign theta from root phases; tree edges take ``k*pi`` offsets from ``flips``.

        Returns None if a non-tree edge (a cycle) is violated.
        """
        roots = self.roots()
        if len(root_phases) != len(roots):
            raise SearchConfigError(f"expected {len(roots)} root phases, got {len(root_phases)}")
        theta = np.full((self.d, self.d), np.nan)
        for root, value in zip(roots, root_phases):
            theta[root] = value
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y, w in self.adj[x]:
                    if np.isnan(theta[y]):
                        theta[y] = theta[x] + w + math.pi * next(flips)
                        queue.append(y)
                    elif not _zero_mod_pi(theta[y] - theta[x] - w):
                        return None
        return theta

    def root_phases_from(self, theta: np.ndarray) -> list[float]:
        return [float(theta[r]) for r in self.roots()]


def _zero_mod_pi(x: float, tol: float = 1e-9) -> bool:
    r = math.fmod(math.fmod(x, math.pi) + math.pi, math.pi)
    return min(r, math.pi - r) < tol


def random_phase_search(cfg: SearchConfig, stats: SearchStats | None = None) -> Iterator[Candidate]:
    """Sample theta by constraint propagation, keep unitary W, verify."""
    if cfg.mode != "random_phases":
        raise SearchConfigError(f"random_phase_search needs mode random_phases, got {cfg.mode}")
    stats = stats if stats is not None else SearchStats()
    d = cfg.d
    graph = PhaseConstraintGraph(d, cfg.phi1, cfg.phi2)
    n_roots = len(graph.roots())
    if cfg.roots is not None and len(cfg.roots) != n_roots:
        raise SearchConfigError(f"expected {n_roots} root phases, got {len(cfg.roots)}")
    rng = np.random.default_rng(cfg.seed)

    def raw():
        for draw in range(cfg.samples):
            stats.examined += 1
            if cfg.roots is not None:
                roots = list(cfg.roots)
            else:
                roots = (2 * math.pi / cfg.alphabet * rng.integers(0, cfg.alphabet, n_roots)).tolist()
            bits = iter(rng.integers(0, 2, d * d).tolist())
            theta = graph.propagate(roots, bits)
            if theta is None:
                stats.inconsistent += 1
                continue
            W = np.exp(1j * theta) / math.sqrt(d)
            yield W, f"random_phases d={d} seed={cfg.seed} draw={draw}"

    yield from _filter(raw(), cfg, stats)


_DISPATCH = {
    "exhaustive_signs": enumerate_sign_matrices,
    "sylvester_orbit": sylvester_orbit,
    "random_phases": random_phase_search,
}


def run_search(cfg: SearchConfig, stats: SearchStats | None = None) -> Iterator[Candidate]:
    return _DISPATCH[cfg.mode](cfg, stats)
