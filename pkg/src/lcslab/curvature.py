"""Riemann, Ricci, scalar, Ricci-operator, M-projective and concircular
tensors, with their symmetry and Bianchi self-checks.

Sign and contraction conventions are pinned by a single anchor: on the
bundled reference manifold the Ricci value S(E_3, E_3) must come out as
-4/z^2, which also makes S(X, xi) = (n-1)(alpha^2 - rho) eta(X) hold.  The
contraction implementing that anchor is
S(Y, Z) = sum_{a,b} g^{ab} g(R(E_a, Y) Z, E_b).
"""

from __future__ import annotations

from dataclasses import dataclass

from .frame_geometry import FrameMetric, FrameTensor, vec_add, vec_scale, vec_sub
from .levi_civita import ConnectionCoeffs, cov_deriv_tensor, cov_deriv_vector, frame_brackets
from .symexpr import Expr


def riemann(conn: ConnectionCoeffs, brackets=None) -> FrameTensor:
    """R(E_i, E_j)E_k = nabla_i nabla_j E_k - nabla_j nabla_i E_k - nabla_{[E_i,E_j]} E_k."""
    frame = conn.frame
    n = conn.dim
    if brackets is None:
        brackets = frame_brackets(frame)
    unit = [frame.unit(i) for i in range(n)]

    def entry(i, j, k):
        first = cov_deriv_vector(conn, unit[i], conn.gamma[j][k])
        second = cov_deriv_vector(conn, unit[j], conn.gamma[i][k])
        val = vec_sub(first, second)
        for a in range(n):
            c = brackets[i][j][a]
            if not c.is_zero:
                val = vec_sub(val, vec_scale(c, conn.gamma[a][k]))
        return val

    return FrameTensor.build((1, 3), n, entry)


def riemann_lowered(riem: FrameTensor, metric: FrameMetric) -> FrameTensor:
    """(0,4) components g(R(E_i,E_j)E_k, E_l)."""
    n = metric.dim
    g = metric.g

    def entry(i, j, k, l):
        out = metric.frame.chart.zero()
        for a in range(n):
            c = riem.comp(i, j, k)[a]
            if not c.is_zero:
                out = out + c * g[a][l]
        return out

    return FrameTensor.build((0, 4), n, entry)


def ricci(riem: FrameTensor, metric: FrameMetric) -> FrameTensor:
    n = metric.dim
    ginv = metric.inverse()
    g = metric.g
    chart = metric.frame.chart

    def entry(i, j):
        out = chart.zero()
        for a in range(n):
            vec = riem.comp(a, i, j)
            for b in range(n):
                if ginv[a][b].is_zero:
                    continue
                paired = chart.zero()
                for u in range(n):
                    if not vec[u].is_zero:
                        paired = paired + vec[u] * g[u][b]
                out = out + ginv[a][b] * paired
        return out

    return FrameTensor.build((0, 2), n, entry)


def scalar_curvature(ric: FrameTensor, metric: FrameMetric) -> Expr:
    n = metric.dim
    ginv = metric.inverse()
    out = metric.frame.chart.zero()
    for a in range(n):
        for b in range(n):
            if not ginv[a][b].is_zero:
                out = out + ginv[a][b] * ric.comp(a, b)
    return out


def ricci_operator(ric: FrameTensor, metric: FrameMetric) -> FrameTensor:
    """Q with g(QX, Y) = S(X, Y); comps[i] are the frame components of Q E_i."""
    n = metric.dim
    ginv = metric.inverse()
    chart = metric.frame.chart

    def entry(i):
        return tuple(
            sum((ginv[k][a] * ric.comp(i, a) for a in range(n)), chart.zero()) for k in range(n)
        )

    return FrameTensor.build((1, 1), n, entry)


def m_projective(riem: FrameTensor, ric: FrameTensor, q_op: FrameTensor, metric: FrameMetric) -> FrameTensor:
    """M(X,Y)Z = R(X,Y)Z - [S(Y,Z)X - S(X,Z)Y + g(Y,Z)QX - g(X,Z)QY] / (2(n-1))."""
    n = metric.dim
    chart = metric.frame.chart
    factor = chart.one() / chart.const(2 * (n - 1))
    g = metric.g
    unit = [metric.frame.unit(i) for i in range(n)]

    def entry(x, y, z):
        corr = vec_scale(ric.comp(y, z), unit[x])
        corr = vec_sub(corr, vec_scale(ric.comp(x, z), unit[y]))
        corr = vec_add(corr, vec_scale(g[y][z], q_op.comp(x)))
        corr = vec_sub(corr, vec_scale(g[x][z], q_op.comp(y)))
        return vec_sub(riem.comp(x, y, z), vec_scale(factor, corr))

    return FrameTensor.build((1, 3), n, entry)


def concircular(riem: FrameTensor, scalar: Expr, metric: FrameMetric) -> FrameTensor:
    """C(X,Y)W = R(X,Y)W - r/(n(n-1)) {g(Y,W)X - g(X,W)Y}."""
    n = metric.dim
    chart = metric.frame.chart
    factor = scalar / chart.const(n * (n - 1))
    g = metric.g
    unit = [metric.frame.unit(i) for i in range(n)]

    def entry(x, y, w):
        corr = vec_sub(vec_scale(g[y][w], unit[x]), vec_scale(g[x][w], unit[y]))
        return vec_sub(riem.comp(x, y, w), vec_scale(factor, corr))

    return FrameTensor.build((1, 3), n, entry)


def nabla_riemann(conn: ConnectionCoeffs, riem: FrameTensor) -> FrameTensor:
    """(1,4) tensor (nabla_W R)(X,Y)Z with the direction W as first index."""
    return cov_deriv_tensor(conn, riem, None)


@dataclass(frozen=True)
class CurvatureStack:
    riemann13: FrameTensor
    riemann04: FrameTensor
    ricci: FrameTensor
    q_operator: FrameTensor
    scalar: Expr

    @classmethod
    def compute(cls, conn: ConnectionCoeffs, metric: FrameMetric, brackets=None) -> "CurvatureStack":
        riem = riemann(conn, brackets)
        low = riemann_lowered(riem, metric)
        ric = ricci(riem, metric)
        return cls(
            riemann13=riem,
            riemann04=low,
            ricci=ric,
            q_operator=ricci_operator(ric, metric),
            scalar=scalar_curvature(ric, metric),
        )

    def self_check(self, metric: FrameMetric, nabla_r: FrameTensor | None = None) -> list[tuple[str, bool]]:
        """Exact structural identities of the computed stack."""
        n = metric.dim
        low = self.riemann04
        checks = []
        ok = all(
            (low.comp(i, j, k, l) + low.comp(j, i, k, l)).is_zero
            for i in range(n)
            for j in range(n)
            for k in range(n)
            for l in range(n)
        )
        checks.append(("antisymmetry-first-pair", ok))
        ok = all(
            (low.comp(i, j, k, l) + low.comp(i, j, l, k)).is_zero
            for i in range(n)
            for j in range(n)
            for k in range(n)
            for l in range(n)
        )
        checks.append(("antisymmetry-second-pair", ok))
        ok = all(
            (low.comp(i, j, k, l) - low.comp(k, l, i, j)).is_zero
            for i in range(n)
            for j in range(n)
            for k in range(n)
            for l in range(n)
        )
        checks.append(("pair-symmetry", ok))
        ok = True
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    cyc = vec_add(
                        vec_add(self.riemann13.comp(i, j, k), self.riemann13.comp(j, k, i)),
                        self.riemann13.comp(k, i, j),
                    )
                    ok = ok and all(e.is_zero for e in cyc)
        checks.append(("first-bianchi", ok))
        ok = all((self.ricci.comp(i, j) - self.ricci.comp(j, i)).is_zero for i in range(n) for j in range(n))
        checks.append(("ricci-symmetry", ok))
        ok = True
        for i in range(n):
            for j in range(n):
                paired = metric.pair(self.q_operator.comp(i), metric.frame.unit(j))
                ok = ok and (paired - self.ricci.comp(i, j)).is_zero
        checks.append(("ricci-operator-defining", ok))
        if nabla_r is not None:
            ok = True
            for w in range(n):
                for x in range(n):
                    for y in range(n):
                        for z in range(n):
                            cyc = vec_add(
                                vec_add(nabla_r.comp(w, x, y, z), nabla_r.comp(x, y, w, z)),
                                nabla_r.comp(y, w, x, z),
                            )
                            ok = ok and all(e.is_zero for e in cyc)
            checks.append(("second-bianchi", ok))
        return checks
