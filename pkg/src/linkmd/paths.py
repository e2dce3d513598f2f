"""Paths of symplectic matrices: segments, algebra, file format.

A SymplecticPath is a catenation of segments, each with a positive
rational duration (total duration renormalizes to 1 on evaluation).
Segment vocabulary:

* BlockSegment: a direct sum of 2x2 blocks, each either a rotation with
  angle affine in t (measured in full turns, so crossing times stay
  rational) or a lower-triangular unipotent shear [[1,0],[-s(t)a,1]]
  with s affine in t.
* ExpQuadraticSegment: t -> exp(tau(t) J0 S) for a symmetric matrix S,
  tau affine; evaluated numerically.
* SampledSegment: (time, matrix) samples, linearly interpolated.

The standard complex structure J0 acts blockwise as (x, y) -> (-y, x)
in interleaved coordinates (x1, y1, ..., xm, ym), and the symplectic
form is omega(u, v) = <J0 u, v>.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .rationals import RationalFormatError, format_rational, parse_rational

TAU_SYMPL_DEFAULT = 1e-9
TAU_CONT_DEFAULT = 1e-9


class PathFormatError(ValueError):
    pass


class PathValidationError(ValueError):
    pass


class NonSymplecticSegmentError(PathValidationError):
    pass


class DimensionMismatchError(ValueError):
    pass


class EndpointMismatchError(ValueError):
    pass


def standard_j(dimension: int) -> np.ndarray:
    """Block-diagonal J0 with 2x2 blocks [[0,-1],[1,0]]."""
    j = np.zeros((dimension, dimension))
    for k in range(0, dimension, 2):
        j[k, k + 1] = -1.0
        j[k + 1, k] = 1.0
    return j


def omega_matrix(dimension: int) -> np.ndarray:
    """Gram matrix of omega(u, v) = u^T Omega v."""
    return standard_j(dimension).T


@dataclass(frozen=True)
class RotationBlock:
    """2x2 rotation R(2 pi (start + t turns)); angles in full turns."""

    start: Fraction
    turns: Fraction = Fraction(0)

    def angle_at(self, t: Fraction) -> Fraction:
        return self.start + t * self.turns


@dataclass(frozen=True)
class ShearBlock:
    """2x2 unipotent [[1, 0], [-s(t) a, 1]] with s affine from s_start to s_end."""

    a: Fraction
    s_start: Fraction = Fraction(0)
    s_end: Fraction = Fraction(1)

    def shear_at(self, t: Fraction) -> Fraction:
        return self.s_start + t * (self.s_end - self.s_start)


Block = RotationBlock | ShearBlock


@dataclass(frozen=True)
class BlockSegment:
    blocks: tuple[Block, ...]
    duration: Fraction = Fraction(1)

    @property
    def dimension(self) -> int:
        return 2 * len(self.blocks)


@dataclass(frozen=True)
class ExpQuadraticSegment:
    """t -> exp(tau(t) J0 S), tau affine from tau_start to tau_end.

    The generator S must be symmetric; entries may be Fractions or
    floats (conjugation can introduce floats).  Evaluation is numeric.
    """

    generator: tuple[tuple[Fraction | float, ...], ...]
    duration: Fraction = Fraction(1)
    tau_start: Fraction = Fraction(0)
    tau_end: Fraction = Fraction(1)

    @property
    def dimension(self) -> int:
        return len(self.generator)


@dataclass(frozen=True)
class SampledSegment:
    """Strictly increasing sample times over [0, 1], matrices row-major."""

    times: tuple[Fraction, ...]
    matrices: tuple[tuple[tuple[float, ...], ...], ...]
    duration: Fraction = Fraction(1)

    @property
    def dimension(self) -> int:
        return len(self.matrices[0])


Segment = BlockSegment | ExpQuadraticSegment | SampledSegment


def _frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def _check_symplectic(matrix: np.ndarray, tau: float, context: str) -> None:
    dim = matrix.shape[0]
    j = standard_j(dim)
    defect = matrix.T @ j @ matrix - j
    scale = max(1.0, _frobenius(matrix) ** 2)
    if _frobenius(defect) > tau * scale:
        raise NonSymplecticSegmentError(
            f"{context}: matrix is not symplectic within tolerance {tau}"
        )


def _validate_segment(seg: Segment, dimension: int, tau_sympl: float) -> None:
    if seg.duration <= 0:
        raise PathValidationError("segment duration must be positive")
    if isinstance(seg, BlockSegment):
        if seg.dimension != dimension:
            raise DimensionMismatchError(
                f"block segment has dimension {seg.dimension}, path has {dimension}"
            )
        return
    if isinstance(seg, ExpQuadraticSegment):
        if seg.dimension != dimension:
            raise DimensionMismatchError(
                f"exp segment has dimension {seg.dimension}, path has {dimension}"
            )
        gen = seg.generator
        if any(len(row) != dimension for row in gen):
            raise PathValidationError("exp generator must be square")
        for i in range(dimension):
            for k in range(i + 1, dimension):
                left, right = gen[i][k], gen[k][i]
                if isinstance(left, Fraction) and isinstance(right, Fraction):
                    if left != right:
                        raise PathValidationError("exp generator must be symmetric")
                elif abs(float(left) - float(right)) > 1e-12 * max(
                    1.0, abs(float(left))
                ):
                    raise PathValidationError("exp generator must be symmetric")
        return
    if isinstance(seg, SampledSegment):
        if len(seg.times) < 2 or len(seg.times) != len(seg.matrices):
            raise PathValidationError("sampled segment needs matching times/matrices")
        if seg.times[0] != 0 or seg.times[-1] != 1:
            raise PathValidationError("sample times must start at 0 and end at 1")
        for t0, t1 in zip(seg.times, seg.times[1:]):
            if t1 <= t0:
                raise PathValidationError("sample times must be strictly increasing")
        for idx, m in enumerate(seg.matrices):
            arr = np.array(m, dtype=float)
            if arr.shape != (dimension, dimension):
                raise DimensionMismatchError(
                    f"sample {idx} has shape {arr.shape}, path dimension is {dimension}"
                )
            _check_symplectic(arr, tau_sympl, f"sample {idx}")
        return
    raise PathValidationError(f"unknown segment type {type(seg).__name__}")


@dataclass(frozen=True)
class SymplecticPath:
    """Piecewise path in Sp(dimension); immutable, total time rescaled to 1."""

    dimension: int
    segments: tuple[Segment, ...]

    def __post_init__(self):
        if self.dimension < 2 or self.dimension % 2:
            raise PathValidationError("dimension must be even and at least 2")
        if not self.segments:
            raise PathValidationError("path needs at least one segment")
        for seg in self.segments:
            _validate_segment(seg, self.dimension, TAU_SYMPL_DEFAULT)
        for left, right in zip(self.segments, self.segments[1:]):
            a = segment_value(left, 1.0)
            b = segment_value(right, 0.0)
            if _frobenius(a - b) > TAU_CONT_DEFAULT * max(1.0, _frobenius(a)):
                raise PathValidationError(
                    "path is discontinuous at a segment junction"
                )

    @property
    def total_duration(self) -> Fraction:
        return sum((seg.duration for seg in self.segments), Fraction(0))

    def junction_times(self) -> list[Fraction]:
        """Normalized global times of interior segment junctions."""
        total = self.total_duration
        acc = Fraction(0)
        out = []
        for seg in self.segments[:-1]:
            acc += seg.duration
            out.append(acc / total)
        return out

    def start_matrix(self) -> np.ndarray:
        return segment_value(self.segments[0], 0.0)

    def end_matrix(self) -> np.ndarray:
        return segment_value(self.segments[-1], 1.0)

    def value(self, t: float) -> np.ndarray:
        """Evaluate at normalized global time t in [0, 1]."""
        total = float(self.total_duration)
        target = min(max(t, 0.0), 1.0) * total
        acc = 0.0
        for seg in self.segments:
            d = float(seg.duration)
            if target <= acc + d or seg is self.segments[-1]:
                return segment_value(seg, (target - acc) / d)
            acc += d
        raise AssertionError("unreachable")


def _rotation_matrix(angle_turns: float) -> np.ndarray:
    theta = 2.0 * math.pi * angle_turns
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _exp_value(seg: ExpQuadraticSegment, u: float) -> np.ndarray:
    from scipy.linalg import expm

    s = np.array([[float(x) for x in row] for row in seg.generator])
    tau = float(seg.tau_start) + u * (float(seg.tau_end) - float(seg.tau_start))
    return expm(tau * (standard_j(seg.dimension) @ s))


def segment_value(seg: Segment, u: float) -> np.ndarray:
    """Evaluate one segment at local time u in [0, 1] (float matrix)."""
    if isinstance(seg, BlockSegment):
        dim = seg.dimension
        out = np.zeros((dim, dim))
        for k, block in enumerate(seg.blocks):
            if isinstance(block, RotationBlock):
                angle = float(block.start) + u * float(block.turns)
                out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = _rotation_matrix(angle)
            else:
                sv = float(block.s_start) + u * (float(block.s_end) - float(block.s_start))
                out[2 * k, 2 * k] = 1.0
                out[2 * k + 1, 2 * k + 1] = 1.0
                out[2 * k + 1, 2 * k] = -sv * float(block.a)
        return out
    if isinstance(seg, ExpQuadraticSegment):
        return _exp_value(seg, u)
    times = [float(t) for t in seg.times]
    mats = [np.array(m, dtype=float) for m in seg.matrices]
    if u <= times[0]:
        return mats[0]
    if u >= times[-1]:
        return mats[-1]
    hi = next(i for i in range(1, len(times)) if times[i] >= u)
    lo = hi - 1
    w = (u - times[lo]) / (times[hi] - times[lo])
    return (1.0 - w) * mats[lo] + w * mats[hi]


# ---------------------------------------------------------------------------
# constructors


def rotation_segment(blocks, duration=Fraction(1)) -> BlockSegment:
    """blocks: iterable of (start_turns, turns) pairs."""
    return BlockSegment(
        blocks=tuple(
            RotationBlock(Fraction(s), Fraction(v)) for s, v in blocks
        ),
        duration=Fraction(duration),
    )


def shear_segment(coefficients, duration=Fraction(1)) -> BlockSegment:
    """Shear blocks [[1,0],[-t a,1]] for each coefficient a, t from 0 to 1."""
    return BlockSegment(
        blocks=tuple(ShearBlock(a=Fraction(a)) for a in coefficients),
        duration=Fraction(duration),
    )


def exp_quadratic_segment(generator, duration=Fraction(1)) -> ExpQuadraticSegment:
    rows = tuple(
        tuple(x if isinstance(x, float) else Fraction(x) for x in row)
        for row in generator
    )
    return ExpQuadraticSegment(generator=rows, duration=Fraction(duration))


def sampled_segment(samples, duration=Fraction(1)) -> SampledSegment:
    """samples: iterable of (time, matrix) with rational times."""
    times = []
    mats = []
    for t, m in samples:
        times.append(Fraction(t))
        mats.append(tuple(tuple(float(x) for x in row) for row in m))
    return SampledSegment(times=tuple(times), matrices=tuple(mats), duration=Fraction(duration))


def unitary_loop(turns, start=Fraction(0), duration=Fraction(1)) -> SymplecticPath:
    """Loop of blockwise rotations; turns is one integer-ish rational per block."""
    blocks = [(Fraction(start), Fraction(v)) for v in turns]
    return SymplecticPath(2 * len(blocks), (rotation_segment(blocks, duration),))


def constant_identity(dimension: int, duration=Fraction(1)) -> SymplecticPath:
    blocks = [(Fraction(0), Fraction(0))] * (dimension // 2)
    return SymplecticPath(dimension, (rotation_segment(blocks, duration),))


def shear_path(coefficients, duration=Fraction(1)) -> SymplecticPath:
    seg = shear_segment(coefficients, duration)
    return SymplecticPath(seg.dimension, (seg,))


# ---------------------------------------------------------------------------
# path algebra


def catenate(p1: SymplecticPath, p2: SymplecticPath, tau_cont=TAU_CONT_DEFAULT) -> SymplecticPath:
    """Concatenate p2 after p1; p2 must start where p1 ends."""
    if p1.dimension != p2.dimension:
        raise DimensionMismatchError(
            f"cannot catenate paths of dimensions {p1.dimension} and {p2.dimension}"
        )
    end = p1.end_matrix()
    start = p2.start_matrix()
    if _frobenius(end - start) > tau_cont * max(1.0, _frobenius(end)):
        raise EndpointMismatchError("second path does not start at the first path's endpoint")
    return SymplecticPath(p1.dimension, p1.segments + p2.segments)


def reverse(path: SymplecticPath) -> SymplecticPath:
    """Time reversal t -> 1 - t; negates the index."""
    rev_segments = []
    for seg in reversed(path.segments):
        if isinstance(seg, BlockSegment):
            blocks = tuple(
                RotationBlock(b.start + b.turns, -b.turns)
                if isinstance(b, RotationBlock)
                else ShearBlock(b.a, b.s_end, b.s_start)
                for b in seg.blocks
            )
            rev_segments.append(BlockSegment(blocks, seg.duration))
        elif isinstance(seg, ExpQuadraticSegment):
            rev_segments.append(
                replace(seg, tau_start=seg.tau_end, tau_end=seg.tau_start)
            )
        else:
            times = tuple(1 - t for t in reversed(seg.times))
            mats = tuple(reversed(seg.matrices))
            rev_segments.append(SampledSegment(times, mats, seg.duration))
    return SymplecticPath(path.dimension, tuple(rev_segments))


def with_durations(path: SymplecticPath, durations) -> SymplecticPath:
    """Reassign segment durations: an orientation-preserving reparameterization."""
    durations = [Fraction(d) for d in durations]
    if len(durations) != len(path.segments):
        raise PathValidationError("need one duration per segment")
    return SymplecticPath(
        path.dimension,
        tuple(replace(seg, duration=d) for seg, d in zip(path.segments, durations)),
    )


def _split_block(seg: BlockSegment, cut: Fraction) -> tuple[BlockSegment, BlockSegment]:
    first, second = [], []
    for b in seg.blocks:
        if isinstance(b, RotationBlock):
            mid = b.angle_at(cut)
            first.append(RotationBlock(b.start, mid - b.start))
            second.append(RotationBlock(mid, b.start + b.turns - mid))
        else:
            mid = b.shear_at(cut)
            first.append(ShearBlock(b.a, b.s_start, mid))
            second.append(ShearBlock(b.a, mid, b.s_end))
    return (
        BlockSegment(tuple(first), seg.duration * cut),
        BlockSegment(tuple(second), seg.duration * (1 - cut)),
    )


def _split_segment(seg: Segment, cut: Fraction) -> tuple[Segment, Segment]:
    if cut <= 0 or cut >= 1:
        raise ValueError("cut must be interior")
    if isinstance(seg, BlockSegment):
        return _split_block(seg, cut)
    if isinstance(seg, ExpQuadraticSegment):
        mid = seg.tau_start + cut * (seg.tau_end - seg.tau_start)
        return (
            replace(seg, tau_end=mid, duration=seg.duration * cut),
            replace(seg, tau_start=mid, duration=seg.duration * (1 - cut)),
        )
    times = [Fraction(t) for t in seg.times]
    mats = [np.array(m, dtype=float) for m in seg.matrices]
    if cut not in times:
        hi = next(i for i in range(1, len(times)) if times[i] > cut)
        w = (cut - times[hi - 1]) / (times[hi] - times[hi - 1])
        interp = (1 - float(w)) * mats[hi - 1] + float(w) * mats[hi]
        times.insert(hi, cut)
        mats.insert(hi, interp)
    idx = times.index(cut)
    head_t = [t / cut for t in times[: idx + 1]]
    tail_t = [(t - cut) / (1 - cut) for t in times[idx:]]
    as_tuple = lambda m: tuple(tuple(float(x) for x in row) for row in m)
    return (
        SampledSegment(tuple(head_t), tuple(as_tuple(m) for m in mats[: idx + 1]), seg.duration * cut),
        SampledSegment(tuple(tail_t), tuple(as_tuple(m) for m in mats[idx:]), seg.duration * (1 - cut)),
    )


def split_at(path: SymplecticPath, t: Fraction) -> SymplecticPath:
    """Split the segment containing normalized time t; same path, finer pieces."""
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("split time must be interior")
    total = path.total_duration
    target = t * total
    acc = Fraction(0)
    segments = []
    for i, seg in enumerate(path.segments):
        if acc < target < acc + seg.duration:
            cut = (target - acc) / seg.duration
            first, second = _split_segment(seg, cut)
            segments.extend([first, second])
        else:
            segments.append(seg)
        acc += seg.duration
    return SymplecticPath(path.dimension, tuple(segments))


def _refine_to(path: SymplecticPath, junctions) -> SymplecticPath:
    for t in junctions:
        if t not in path.junction_times():
            path = split_at(path, t)
    return path


def _merge_segments(s1: Segment, s2: Segment) -> Segment:
    if isinstance(s1, BlockSegment) and isinstance(s2, BlockSegment):
        return BlockSegment(s1.blocks + s2.blocks, s1.duration)
    if (
        isinstance(s1, ExpQuadraticSegment)
        and isinstance(s2, ExpQuadraticSegment)
        and (s1.tau_start, s1.tau_end) == (s2.tau_start, s2.tau_end)
    ):
        d1, d2 = s1.dimension, s2.dimension
        zero = Fraction(0)
        rows = []
        for i in range(d1):
            rows.append(tuple(s1.generator[i]) + (zero,) * d2)
        for i in range(d2):
            rows.append((zero,) * d1 + tuple(s2.generator[i]))
        return ExpQuadraticSegment(tuple(rows), s1.duration, s1.tau_start, s1.tau_end)
    # fall back to a joint sampled segment
    grid = 257
    times = tuple(Fraction(i, grid - 1) for i in range(grid))
    mats = []
    for t in times:
        a = segment_value(s1, float(t))
        b = segment_value(s2, float(t))
        d1, d2 = a.shape[0], b.shape[0]
        m = np.zeros((d1 + d2, d1 + d2))
        m[:d1, :d1] = a
        m[d1:, d1:] = b
        mats.append(tuple(tuple(float(x) for x in row) for row in m))
    return SampledSegment(times, tuple(mats), s1.duration)


def direct_sum(p1: SymplecticPath, p2: SymplecticPath) -> SymplecticPath:
    """Block-diagonal path; both factors run over normalized time [0, 1].

    Segment boundaries are refined to a common subdivision.  Aligned
    block segments merge exactly; mismatched symbolic/numeric pieces fall
    back to a jointly sampled segment.
    """
    junctions = sorted(set(p1.junction_times()) | set(p2.junction_times()))
    q1 = _refine_to(p1, junctions)
    q2 = _refine_to(p2, junctions)
    segments = []
    for s1, s2 in zip(q1.segments, q2.segments):
        merged = _merge_segments(s1, s2)
        segments.append(replace(merged, duration=s1.duration))
    return SymplecticPath(p1.dimension + p2.dimension, tuple(segments))


def _fraction_matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)
    ]


def _check_exact_symplectic(p) -> None:
    dim = len(p)
    j = [[Fraction(0)] * dim for _ in range(dim)]
    for k in range(0, dim, 2):
        j[k][k + 1] = Fraction(-1)
        j[k + 1][k] = Fraction(1)
    pt = [list(col) for col in zip(*p)]
    lhs = _fraction_matmul(_fraction_matmul(pt, j), p)
    if lhs != j:
        raise PathValidationError("conjugating matrix is not exactly symplectic")


def symplectic_inverse(p):
    """Exact inverse of a symplectic Fraction matrix: P^{-1} = -J0 P^T J0."""
    dim = len(p)
    j = [[Fraction(0)] * dim for _ in range(dim)]
    for k in range(0, dim, 2):
        j[k][k + 1] = Fraction(-1)
        j[k + 1][k] = Fraction(1)
    minus_j = [[-x for x in row] for row in j]
    pt = [list(col) for col in zip(*p)]
    return _fraction_matmul(_fraction_matmul(minus_j, pt), j)


def conjugate(path: SymplecticPath, p_matrix) -> SymplecticPath:
    """The path t -> P A(t) P^{-1} for a constant symplectic P (exact entries).

    Supported segments: exp-quadratic (generator transforms to
    P^{-T} S P^{-1}) and sampled (samples transform numerically).
    """
    p = [[Fraction(x) for x in row] for row in p_matrix]
    if len(p) != path.dimension:
        raise DimensionMismatchError("conjugating matrix has the wrong dimension")
    _check_exact_symplectic(p)
    p_inv = symplectic_inverse(p)
    p_inv_t = [list(col) for col in zip(*p_inv)]
    p_np = np.array([[float(x) for x in row] for row in p])
    p_inv_np = np.array([[float(x) for x in row] for row in p_inv])

    segments = []
    for seg in path.segments:
        if isinstance(seg, ExpQuadraticSegment):
            if all(
                isinstance(x, Fraction) for row in seg.generator for x in row
            ):
                s = [list(row) for row in seg.generator]
                new_s = _fraction_matmul(_fraction_matmul(p_inv_t, s), p_inv)
                gen = tuple(tuple(row) for row in new_s)
            else:
                s = np.array([[float(x) for x in row] for row in seg.generator])
                new_s = p_inv_np.T @ s @ p_inv_np
                gen = tuple(tuple(float(x) for x in row) for row in new_s)
            segments.append(replace(seg, generator=gen))
        elif isinstance(seg, SampledSegment):
            mats = tuple(
                tuple(
                    tuple(float(x) for x in row)
                    for row in (p_np @ np.array(m) @ p_inv_np)
                )
                for m in seg.matrices
            )
            segments.append(replace(seg, matrices=mats))
        else:
            raise PathValidationError(
                "conjugation supports exp-quadratic and sampled segments; "
                "convert block segments first"
            )
    return SymplecticPath(path.dimension, tuple(segments))


def blocks_to_sampled(path: SymplecticPath, samples_per_segment: int = 257) -> SymplecticPath:
    """Numeric resampling of a path (used to conjugate rotation paths)."""
    segments = []
    for seg in path.segments:
        times = tuple(Fraction(i, samples_per_segment - 1) for i in range(samples_per_segment))
        mats = tuple(
            tuple(tuple(float(x) for x in row) for row in segment_value(seg, float(t)))
            for t in times
        )
        segments.append(SampledSegment(times, mats, seg.duration))
    return SymplecticPath(path.dimension, tuple(segments))


# ---------------------------------------------------------------------------
# file format


def load_path(document) -> SymplecticPath:
    """Parse the path file format: {"dimension": 2m, "segments": [...]}.

    Rational parameters are "p/q" strings; rotation angles are in full
    turns.  Sampled matrices are row-major rational arrays.
    """
    if isinstance(document, (bytes, bytearray)):
        document = document.decode("utf-8")
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise PathFormatError(f"invalid JSON: {exc}") from exc
    if isinstance(document, list):
        document = {"segments": document}
    if not isinstance(document, dict) or "segments" not in document:
        raise PathFormatError("expected an object with a 'segments' list")

    segments = []
    for k, raw in enumerate(document["segments"]):
        if not isinstance(raw, dict) or "kind" not in raw:
            raise PathFormatError(f"segments[{k}]: expected an object with a 'kind'")
        kind = raw["kind"]
        try:
            duration = parse_rational(raw.get("duration", 1), f"segments[{k}].duration")
            if kind == "rotation":
                blocks = tuple(
                    RotationBlock(
                        parse_rational(b.get("start", 0), f"segments[{k}].start"),
                        parse_rational(b.get("turns", 0), f"segments[{k}].turns"),
                    )
                    for b in raw["blocks"]
                )
                segments.append(BlockSegment(blocks, duration))
            elif kind == "shear":
                blocks = tuple(
                    ShearBlock(
                        a=parse_rational(b["a"], f"segments[{k}].a"),
                        s_start=parse_rational(b.get("s_start", 0), f"segments[{k}].s_start"),
                        s_end=parse_rational(b.get("s_end", 1), f"segments[{k}].s_end"),
                    )
                    for b in raw["blocks"]
                )
                segments.append(BlockSegment(blocks, duration))
            elif kind == "exp_quadratic":
                gen = tuple(
                    tuple(
                        parse_rational(x, f"segments[{k}].generator")
                        for x in row
                    )
                    for row in raw["generator"]
                )
                segments.append(ExpQuadraticSegment(gen, duration))
            elif kind == "sampled":
                samples = [
                    (
                        parse_rational(s["t"], f"segments[{k}].samples.t"),
                        [
                            [float(parse_rational(x, f"segments[{k}].samples.matrix")) for x in row]
                            for row in s["matrix"]
                        ],
                    )
                    for s in raw["samples"]
                ]
                segments.append(sampled_segment(samples, duration))
            else:
                raise PathFormatError(f"segments[{k}]: unknown kind {kind!r}")
        except (KeyError, TypeError) as exc:
            raise PathFormatError(f"segments[{k}]: {exc}") from exc
        except RationalFormatError as exc:
            raise PathFormatError(str(exc)) from exc

    if "dimension" in document:
        dimension = int(document["dimension"])
    elif segments:
        dimension = segments[0].dimension
    else:
        raise PathFormatError("empty segment list")
    return SymplecticPath(dimension, tuple(segments))


def path_to_document(path: SymplecticPath) -> dict:
    segs = []
    for seg in path.segments:
        if isinstance(seg, BlockSegment):
            if all(isinstance(b, RotationBlock) for b in seg.blocks):
                segs.append(
                    {
                        "kind": "rotation",
                        "duration": format_rational(seg.duration),
                        "blocks": [
                            {"start": format_rational(b.start), "turns": format_rational(b.turns)}
                            for b in seg.blocks
                        ],
                    }
                )
            elif all(isinstance(b, ShearBlock) for b in seg.blocks):
                segs.append(
                    {
                        "kind": "shear",
                        "duration": format_rational(seg.duration),
                        "blocks": [
                            {
                                "a": format_rational(b.a),
                                "s_start": format_rational(b.s_start),
                                "s_end": format_rational(b.s_end),
                            }
                            for b in seg.blocks
                        ],
                    }
                )
            else:
                raise PathFormatError(
                    "mixed rotation/shear block segments have no file form; split them"
                )
        elif isinstance(seg, ExpQuadraticSegment):
            segs.append(
                {
                    "kind": "exp_quadratic",
                    "duration": format_rational(seg.duration),
                    "generator": [
                        [format_rational(Fraction(x)) if isinstance(x, Fraction) else float(x) for x in row]
                        for row in seg.generator
                    ],
                }
            )
        else:
            segs.append(
                {
                    "kind": "sampled",
                    "duration": format_rational(seg.duration),
                    "samples": [
                        {"t": format_rational(t), "matrix": [[float(x) for x in row] for row in m]}
                        for t, m in zip(seg.times, seg.matrices)
                    ],
                }
            )
    return {"dimension": path.dimension, "segments": segs}
