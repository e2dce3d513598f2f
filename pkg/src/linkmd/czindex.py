"""Conley-Zehnder indices of symplectic paths via crossing forms.

The index of a path A is the Maslov-type count of its crossings, the
times where det(A(t) - I) = 0: each regular crossing contributes the
signature of the crossing form Q_t(v) = omega(A(t) v, A'(t) v) on
ker(A(t) - I), with weight 1/2 at segment endpoints and 1 in the
interior.  Values are always exact half-integers.

Block segments are analyzed in closed form (crossing times are rational
and signatures are read off the block parameters); exp-quadratic and
sampled segments are scanned numerically on a grid with bisection /
ternary refinement.  Persistent kernel directions (a shear block keeps
ker(A(t) - I) nontrivial for every t) carry a vanishing form and
contribute nothing; the transversal part of each crossing must be
nondegenerate or the evaluation aborts with DegenerateCrossingError
rather than perturbing silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .paths import (
    BlockSegment,
    DimensionMismatchError,
    EndpointMismatchError,
    ExpQuadraticSegment,
    RotationBlock,
    SampledSegment,
    ShearBlock,
    SymplecticPath,
    omega_matrix,
    segment_value,
    standard_j,
)

HALF = Fraction(1, 2)


class DegenerateCrossingError(ValueError):
    """A crossing form has a (near-)zero eigenvalue; refine or perturb."""

    def __init__(self, message, time=None):
        self.time = time
        super().__init__(message)


class NotUnitaryError(ValueError):
    pass


class NotALoopError(ValueError):
    pass


class ExtensionLeavesNeighborhoodError(ValueError):
    pass


@dataclass(frozen=True)
class CrossingTolerances:
    """Declared numeric thresholds; symbolic paths never touch them."""

    tau_sympl: float = 1e-9
    tau_cont: float = 1e-9
    tau_eig: float = 1e-7
    grid_points: int = 1024


DEFAULT_TOLERANCES = CrossingTolerances()


@dataclass(frozen=True)
class Crossing:
    """One crossing: global time, dim ker(A(t)-I), transversal signature."""

    time: Fraction | float
    kernel_dim: int
    signature: int
    weight: Fraction


@dataclass(frozen=True)
class IndexValue:
    """Index in (1/2N) Z for the declared N (half-integer when N = 1)."""

    value: Fraction
    n_fold: int = 1

    def __post_init__(self):
        if self.n_fold < 1:
            raise ValueError("n_fold must be a positive integer")
        if (2 * self.n_fold * self.value).denominator != 1:
            raise ValueError(
                f"index {self.value} is not in (1/{2 * self.n_fold}) Z"
            )


@dataclass(frozen=True)
class PathIndexReport:
    value: Fraction
    crossings: tuple[Crossing, ...]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# block segments: exact closed forms


def _block_kernel_dim(block, t: Fraction) -> int:
    if isinstance(block, RotationBlock):
        return 2 if block.angle_at(t).denominator == 1 else 0
    if block.a == 0:
        return 2
    return 2 if block.shear_at(t) == 0 else 1


def _block_segment_crossings(seg: BlockSegment) -> list[tuple[Fraction, int, int]]:
    """(local time, kernel dim, signature) for one block segment."""
    events: dict[Fraction, int] = {}
    for block in seg.blocks:
        if isinstance(block, RotationBlock):
            if block.turns == 0:
                continue
            lo = min(block.start, block.start + block.turns)
            hi = max(block.start, block.start + block.turns)
            j = math.ceil(lo)
            while j <= hi:
                t = (j - block.start) / block.turns
                if 0 <= t <= 1:
                    events[t] = events.get(t, 0) + 2 * _sign(block.turns)
                j += 1
        else:
            if block.a == 0 or block.s_start == block.s_end:
                continue
            if min(block.s_start, block.s_end) <= 0 <= max(block.s_start, block.s_end):
                t = block.s_start / (block.s_start - block.s_end)
                events[t] = events.get(t, 0) - _sign(block.a) * _sign(
                    block.s_end - block.s_start
                )
    out = []
    for t in sorted(events):
        kernel = sum(_block_kernel_dim(b, t) for b in seg.blocks)
        out.append((t, kernel, events[t]))
    return out


def block_endpoint_kernel_dim(seg: BlockSegment, t: Fraction) -> int:
    return sum(_block_kernel_dim(b, Fraction(t)) for b in seg.blocks)


# ---------------------------------------------------------------------------
# numeric segments: grid scan with refinement


def _numeric_kernel(a: np.ndarray, cutoff: float) -> np.ndarray:
    _, svals, vt = np.linalg.svd(a - np.eye(a.shape[0]))
    mask = svals < cutoff
    return vt[mask].T


def _crossing_form(a, da, kernel, omega, tau_eig):
    """Signature of omega(A v, A' w) restricted to the kernel basis."""
    form = kernel.T @ (a.T @ omega @ da) @ kernel
    form = 0.5 * (form + form.T)
    eigs = np.linalg.eigvalsh(form)
    if any(abs(e) <= tau_eig for e in eigs):
        return None, eigs
    return int(sum(e > 0 for e in eigs) - sum(e < 0 for e in eigs)), eigs


def _refine_minimum(h, lo, hi, iterations=120):
    for _ in range(iterations):
        third = (hi - lo) / 3.0
        m1, m2 = lo + third, hi - third
        if h(m1) <= h(m2):
            hi = m2
        else:
            lo = m1
    return 0.5 * (lo + hi)


def _refine_sign_change(f, lo, hi, iterations=100):
    flo = f(lo)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if flo * fmid <= 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def _numeric_segment_crossings(value, deriv, dim, tol: CrossingTolerances, resolution=0.0):
    """(local float time, kernel dim, signature) for a numeric segment.

    resolution is the evaluation error floor (nonzero for interpolated
    sampled data); crossings only need to refine down to it.
    """
    omega = omega_matrix(dim)
    eye = np.eye(dim)
    grid = tol.grid_points
    us = np.linspace(0.0, 1.0, grid + 1)

    deriv_scale = max(
        float(np.linalg.norm(deriv(u), 2)) for u in np.linspace(0.0, 1.0, 9)
    )
    if deriv_scale < 1e-12:
        return []  # constant segment

    def h(u):
        return float(np.linalg.svd(value(u) - eye, compute_uv=False)[-1])

    def det_gap(u):
        return float(np.linalg.det(value(u) - eye))

    h_vals = np.array([h(u) for u in us])
    det_vals = np.array([det_gap(u) for u in us])

    accept = max(1e-8, 2.0 * resolution)
    gray = max(1e-5, 20.0 * resolution)
    if float(np.max(h_vals)) < gray:
        raise DegenerateCrossingError(
            "det(A(t) - I) vanishes along the whole segment; represent the "
            "degenerate directions with rotation/shear blocks"
        )

    candidates: list[float] = []
    if h_vals[0] < accept:
        candidates.append(0.0)
    if h_vals[-1] < accept:
        candidates.append(1.0)

    du = 1.0 / grid
    dip = max(accept, 2.0 * (deriv_scale + 1.0) * du)
    for i in range(1, grid):
        if det_vals[i] == 0.0 or det_vals[i] * det_vals[i + 1] < 0:
            candidates.append(_refine_sign_change(det_gap, float(us[i]), float(us[i + 1])))
            continue
        if h_vals[i] <= dip and h_vals[i] <= h_vals[i - 1] and h_vals[i] < h_vals[i + 1]:
            candidates.append(_refine_minimum(h, float(us[i - 1]), float(us[i + 1])))

    crossings = []
    seen: list[float] = []
    for u in sorted(candidates):
        if any(abs(u - v) < 0.5 * du for v in seen):
            continue
        hu = h(u)
        if hu >= gray:
            continue
        if hu > accept:
            raise DegenerateCrossingError(
                f"cannot resolve a crossing candidate near t={u:.6f} "
                f"(residual {hu:.2e}); refine the grid or perturb the path",
                time=u,
            )
        seen.append(u)
        a = value(u)
        cutoff = max(1e-5 * max(1.0, float(np.linalg.norm(a))), 10.0 * accept)
        kernel = _numeric_kernel(a, cutoff=cutoff)
        if kernel.shape[1] == 0:
            continue
        signature, eigs = _crossing_form(a, deriv(u), kernel, omega, tol.tau_eig)
        if signature is None:
            raise DegenerateCrossingError(
                f"crossing form at t={u:.6f} has an eigenvalue within "
                f"{tol.tau_eig} of zero (eigenvalues {eigs}); refine or perturb",
                time=u,
            )
        crossings.append((u, kernel.shape[1], signature))
    return crossings


def _exp_segment_crossings(seg: ExpQuadraticSegment, tol: CrossingTolerances):
    from scipy.linalg import expm

    dim = seg.dimension
    s = np.array([[float(x) for x in row] for row in seg.generator])
    dtau = float(seg.tau_end) - float(seg.tau_start)
    if dtau == 0.0:
        return []
    s_eigs = np.linalg.eigvalsh(s)
    if any(abs(e) <= tol.tau_eig for e in s_eigs):
        raise DegenerateCrossingError(
            "exp generator is singular, so det(A(t) - I) vanishes identically; "
            "use shear/rotation blocks for the degenerate directions"
        )
    j = standard_j(dim)
    js = j @ s

    # diagonalize once when well conditioned; expm fallback otherwise
    evals, evecs = np.linalg.eig(js)
    use_eig = np.linalg.cond(evecs) < 1e8
    vinv = np.linalg.inv(evecs) if use_eig else None

    def value(u):
        tau = float(seg.tau_start) + u * dtau
        if use_eig:
            return ((evecs * np.exp(tau * evals)) @ vinv).real
        return expm(tau * js)

    def deriv(u):
        return dtau * js @ value(u)

    return _numeric_segment_crossings(value, deriv, dim, tol)


def _sampled_segment_crossings(seg: SampledSegment, tol: CrossingTolerances):
    times = [float(t) for t in seg.times]
    mats = [np.array(m, dtype=float) for m in seg.matrices]
    dim = seg.dimension

    def value(u):
        return segment_value(seg, u)

    def deriv(u):
        hi = len(times) - 1
        for i in range(1, len(times)):
            if times[i] >= u:
                hi = i
                break
        lo = hi - 1
        return (mats[hi] - mats[lo]) / (times[hi] - times[lo])

    if all(float(np.linalg.norm(m - mats[0])) < 1e-12 for m in mats):
        return []
    # second differences bound the linear-interpolation error floor
    resolution = 0.0
    for i in range(1, len(mats) - 1):
        resolution = max(
            resolution, 0.5 * float(np.linalg.norm(mats[i + 1] - 2 * mats[i] + mats[i - 1], 2))
        )
    return _numeric_segment_crossings(value, deriv, dim, tol, resolution=resolution)


# ---------------------------------------------------------------------------
# public operations


def cz_index_report(path: SymplecticPath, tol: CrossingTolerances = DEFAULT_TOLERANCES) -> PathIndexReport:
    """Index plus the full crossing list (global times, kernels, signatures)."""
    total = path.total_duration
    acc = Fraction(0)
    value = Fraction(0)
    crossings: list[Crossing] = []
    for seg in path.segments:
        if isinstance(seg, BlockSegment):
            local = _block_segment_crossings(seg)
        elif isinstance(seg, ExpQuadraticSegment):
            local = _exp_segment_crossings(seg, tol)
        else:
            local = _sampled_segment_crossings(seg, tol)
        for t, kernel_dim, signature in local:
            if isinstance(t, Fraction):
                boundary = t == 0 or t == 1
                global_t: Fraction | float = (acc + t * seg.duration) / total
            else:
                boundary = t < 1e-9 or t > 1 - 1e-9
                global_t = (float(acc) + t * float(seg.duration)) / float(total)
            weight = HALF if boundary else Fraction(1)
            value += weight * signature
            crossings.append(Crossing(global_t, kernel_dim, signature, weight))
        acc += seg.duration
    crossings.sort(key=lambda c: float(c.time))
    return PathIndexReport(value=value, crossings=tuple(crossings))


def cz_index(path: SymplecticPath, tol: CrossingTolerances = DEFAULT_TOLERANCES) -> IndexValue:
    """Robbin-Salamon index of the path; exact half-integer."""
    return IndexValue(cz_index_report(path, tol).value, n_fold=1)


def cz_rational(path: SymplecticPath, n_fold: int, tol: CrossingTolerances = DEFAULT_TOLERANCES) -> IndexValue:
    """Index of an N-fold direct-sum trivialization path, divided by N."""
    if n_fold < 1:
        raise ValueError("n_fold must be a positive integer")
    raw = cz_index_report(path, tol).value
    return IndexValue(raw / n_fold, n_fold=n_fold)


def _complexify(a: np.ndarray) -> np.ndarray:
    m = a.shape[0] // 2
    u = np.empty((m, m), dtype=complex)
    for j in range(m):
        for k in range(m):
            u[j, k] = a[2 * j, 2 * k] + 1j * a[2 * j + 1, 2 * k]
    return u


def determinant_loop_degree(path: SymplecticPath, tol: CrossingTolerances = DEFAULT_TOLERANCES) -> int:
    """Winding number of the complex determinant of a unitary loop."""
    dim = path.dimension
    j = standard_j(dim)
    eye = np.eye(dim)
    grid = max(64, tol.grid_points // 4)
    for i in range(grid + 1):
        a = path.value(i / grid)
        scale = max(1.0, float(np.linalg.norm(a)) ** 2)
        if (
            float(np.linalg.norm(a @ j - j @ a)) > 1e-7 * scale
            or float(np.linalg.norm(a.T @ a - eye)) > 1e-7 * scale
        ):
            raise NotUnitaryError("path leaves the unitary subgroup")
    start, end = path.start_matrix(), path.end_matrix()
    if float(np.linalg.norm(end - start)) > max(tol.tau_cont, 1e-9) * max(
        1.0, float(np.linalg.norm(start))
    ):
        raise NotALoopError("path endpoints differ; not a loop")

    if all(
        isinstance(seg, BlockSegment)
        and all(isinstance(b, RotationBlock) for b in seg.blocks)
        for seg in path.segments
    ):
        winding = Fraction(0)
        for seg in path.segments:
            winding += sum((b.turns for b in seg.blocks), Fraction(0))
        if winding.denominator == 1:
            return int(winding)

    total = 0.0
    prev = np.angle(np.linalg.det(_complexify(path.value(0.0))))
    for i in range(1, grid + 1):
        cur = np.angle(np.linalg.det(_complexify(path.value(i / grid))))
        delta = cur - prev
        while delta > math.pi:
            delta -= 2 * math.pi
        while delta < -math.pi:
            delta += 2 * math.pi
        total += delta
        prev = cur
    winding = total / (2 * math.pi)
    rounded = round(winding)
    if abs(winding - rounded) > 0.1:
        raise NotUnitaryError(
            f"determinant winding {winding:.4f} did not resolve to an integer"
        )
    return int(rounded)


def endpoint_kernel_dim(path: SymplecticPath, tol: CrossingTolerances = DEFAULT_TOLERANCES) -> int:
    """dim ker(A(1) - id), exact for block segments, numeric otherwise."""
    last = path.segments[-1]
    if isinstance(last, BlockSegment):
        return block_endpoint_kernel_dim(last, Fraction(1))
    a = path.end_matrix()
    svals = np.linalg.svd(a - np.eye(path.dimension), compute_uv=False)
    return int(sum(s < 1e-6 * max(1.0, float(np.linalg.norm(a))) for s in svals))


@dataclass(frozen=True)
class SmallExtensionReport:
    kernel_dim: int
    extension_index: Fraction
    lower: Fraction
    upper: Fraction

    @property
    def within_bound(self) -> bool:
        return self.lower <= self.extension_index <= self.upper


def small_extension_bound(
    path: SymplecticPath,
    extension: SymplecticPath,
    tol: CrossingTolerances = DEFAULT_TOLERANCES,
    radius: float = 1e-2,
) -> SmallExtensionReport:
    """Check the extension index against [-k/2, k/2], k the endpoint kernel dim.

    The extension must start at the path's endpoint and stay within the
    given operator-norm radius of it.
    """
    if path.dimension != extension.dimension:
        raise DimensionMismatchError("path and extension dimensions differ")
    end = path.end_matrix()
    start = extension.start_matrix()
    if float(np.linalg.norm(end - start)) > tol.tau_cont * max(1.0, float(np.linalg.norm(end))):
        raise EndpointMismatchError("extension does not start at the path's endpoint")
    grid = 256
    for i in range(grid + 1):
        a = extension.value(i / grid)
        if float(np.linalg.norm(a - end, 2)) > radius:
            raise ExtensionLeavesNeighborhoodError(
                f"extension leaves the radius-{radius} neighborhood at t={i / grid:.4f}"
            )
    k = endpoint_kernel_dim(path, tol)
    idx = cz_index_report(extension, tol).value
    return SmallExtensionReport(
        kernel_dim=k,
        extension_index=idx,
        lower=Fraction(-k, 2),
        upper=Fraction(k, 2),
    )
