"""Levi-Civita connection on a (generally non-holonomic) frame.

The connection is stored against the frame itself: gamma[i][j] holds the
frame components of the covariant derivative of E_j along E_i.  The free
covariant slot of a differentiated tensor is appended as its FIRST index,
matching the reading order of (nabla_X T)(Y, Z).
"""

from __future__ import annotations

from dataclasses import dataclass

from .frame_geometry import (
    Frame,
    FrameMetric,
    FrameTensor,
    GeometryError,
    decompose,
    lie_bracket,
    vec_add,
    vec_scale,
)
from .symexpr import Expr


@dataclass(frozen=True)
class ConnectionCoeffs:
    """gamma[i][j][k] with nabla_{E_i} E_j = sum_k gamma[i][j][k] E_k."""

    frame: Frame
    gamma: tuple[tuple[tuple[Expr, ...], ...], ...]

    @property
    def dim(self) -> int:
        return self.frame.dim


def frame_brackets(frame: Frame) -> tuple:
    """Frame components of every [E_i, E_j]."""
    n = frame.dim
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(tuple(-e for e in out[j][i]))
            elif j == i:
                row.append(tuple(frame.chart.zero() for _ in range(n)))
            else:
                row.append(decompose(lie_bracket(frame.fields[i], frame.fields[j]), frame))
        out.append(row)
    return tuple(tuple(r) for r in out)


def koszul(frame: Frame, metric: FrameMetric, brackets=None) -> ConnectionCoeffs:
    """Solve the Koszul identity for all frame triples and raise the index.

    2 g(nabla_X Y, Z) = X g(Y,Z) + Y g(X,Z) - Z g(X,Y)
                        + g([X,Y],Z) - g([X,Z],Y) - g([Y,Z],X)
    """
    n = frame.dim
    chart = frame.chart
    if brackets is None:
        brackets = frame_brackets(frame)
    g = metric.g
    ginv = metric.inverse()
    two = chart.const(2)

    def dg(i, j, k):
        return frame.fields[i].apply(g[j][k])

    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            w = []
            for z in range(n):
                rhs = dg(i, j, z) + dg(j, i, z) - dg(z, i, j)
                rhs = rhs + metric.pair(brackets[i][j], frame.unit(z))
                rhs = rhs - metric.pair(brackets[i][z], frame.unit(j))
                rhs = rhs - metric.pair(brackets[j][z], frame.unit(i))
                w.append(rhs / two)
            row.append(tuple(sum((ginv[k][z] * w[z] for z in range(n)), chart.zero()) for k in range(n)))
        gamma.append(tuple(row))
    return ConnectionCoeffs(frame, tuple(gamma))


def cov_deriv_vector(conn: ConnectionCoeffs, x, y) -> tuple[Expr, ...]:
    """Frame components of nabla_X Y for frame-component inputs."""
    frame = conn.frame
    n = conn.dim
    chart = frame.chart
    out = [chart.zero()] * n
    for i in range(n):
        if x[i].is_zero:
            continue
        term = [frame.fields[i].apply(y[k]) for k in range(n)]
        for j in range(n):
            if not y[j].is_zero:
                term = vec_add(term, vec_scale(y[j], conn.gamma[i][j]))
        out = vec_add(out, vec_scale(x[i], term))
    return tuple(out)


def cov_deriv_tensor(conn: ConnectionCoeffs, tensor: FrameTensor, direction=None) -> FrameTensor:
    """Covariant derivative of a (0,2) or (1,3) frame tensor.

    ``direction`` may be a frame index, a frame-component vector, or None;
    None leaves the slot free and prepends it as the first index.
    """
    frame = conn.frame
    n = conn.dim
    chart = frame.chart
    gamma = conn.gamma
    r, s = tensor.valence

    if direction is None:
        per_dir = [cov_deriv_tensor(conn, tensor, w) for w in range(n)]
        return FrameTensor((r, s + 1), tuple(t.comps for t in per_dir))

    if isinstance(direction, int):
        weights = [(direction, chart.one())]
    else:
        weights = [(w, c) for w, c in enumerate(direction) if not c.is_zero]

    if (r, s) == (0, 2):

        def entry(i, j):
            total = chart.zero()
            for w, cw in weights:
                val = frame.fields[w].apply(tensor.comp(i, j))
                for a in range(n):
                    val = val - gamma[w][i][a] * tensor.comp(a, j)
                    val = val - gamma[w][j][a] * tensor.comp(i, a)
                total = total + cw * val
            return total

        return FrameTensor.build((0, 2), n, entry)

    if (r, s) == (1, 3):

        def entry13(x, y, z):
            total = [chart.zero()] * n
            for w, cw in weights:
                base = tensor.comp(x, y, z)
                val = [frame.fields[w].apply(base[u]) for u in range(n)]
                for a in range(n):
                    if not base[a].is_zero:
                        val = vec_add(val, vec_scale(base[a], gamma[w][a]))
                    val = [v - gamma[w][x][a] * c for v, c in zip(val, tensor.comp(a, y, z))]
                    val = [v - gamma[w][y][a] * c for v, c in zip(val, tensor.comp(x, a, z))]
                    val = [v - gamma[w][z][a] * c for v, c in zip(val, tensor.comp(x, y, a))]
                total = vec_add(total, vec_scale(cw, val))
            return tuple(total)

        return FrameTensor.build((1, 3), n, entry13)

    raise GeometryError(f"unsupported valence for covariant derivative: {(r, s)}")


def lie_derivative_metric(frame: Frame, metric: FrameMetric, v) -> FrameTensor:
    """(L_V g)(X,Y) = V g(X,Y) - g([V,X],Y) - g(X,[V,Y]) on frame pairs."""
    n = frame.dim
    vfield = frame.from_components(v)

    def bracket_comps(i):
        return decompose(lie_bracket(vfield, frame.fields[i]), frame)

    with_frame = [bracket_comps(i) for i in range(n)]

    def entry(i, j):
        val = vfield.apply(metric.g[i][j])
        val = val - metric.pair(with_frame[i], frame.unit(j))
        val = val - metric.pair(frame.unit(i), with_frame[j])
        return val

    return FrameTensor.build((0, 2), n, entry)
