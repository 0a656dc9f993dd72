"""Independent numeric twin of the tensor algebra.

Re-derives brackets, connection, curvature, Ricci data and derived tensors
in exact rational arithmetic at a point, from point-evaluated inputs
(component values and their directional derivatives).  The tensor algebra
itself is written out here from scratch, so agreement with the engine's
symbolic results checks every contraction and sign independently of the
symbolic pipeline.
"""

from __future__ import annotations

from fractions import Fraction


def gauss_solve(a, b):
    """Solve a square Fraction system; raises on singular input."""
    n = len(a)
    rows = [list(map(Fraction, a[i])) + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col] / rows[col][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] / rows[i][i] for i in range(n)]


def mat_inverse(a):
    n = len(a)
    cols = [gauss_solve(a, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


class NumericTwin:
    def __init__(self, data, point: dict):
        self.data = data
        self.point = dict(point)
        self.n = data.dim
        frame = data.frame
        n = self.n
        self.coeffs = [[self.ev(c) for c in frame.fields[i].coeffs] for i in range(n)]
        self.g = [[self.ev(e) for e in row] for row in data.metric.g]
        self.ginv = mat_inverse(self.g)

    def ev(self, expr) -> Fraction:
        return expr.eval(self.point)

    # -- brackets --------------------------------------------------------

    def brackets_coordinate(self):
        """[E_i, E_j] coordinate components from evaluated coefficient
        derivatives: sum_a X^a d_a Y^b - Y^a d_a X^b."""
        data = self.data
        n = self.n
        chart = data.chart
        dcoef = [
            [[self.ev(data.frame.fields[i].coeffs[b].diff(v)) for v in chart.coords] for b in range(n)]
            for i in range(n)
        ]
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                vec = []
                for b in range(n):
                    total = Fraction(0)
                    for a in range(n):
                        total += self.coeffs[i][a] * dcoef[j][b][a]
                        total -= self.coeffs[j][a] * dcoef[i][b][a]
                    vec.append(total)
                out[i][j] = vec
        return out

    def decompose(self, vec):
        """Frame components of a coordinate vector at the point."""
        n = self.n
        a = [[self.coeffs[i][j] for i in range(n)] for j in range(n)]
        return gauss_solve(a, vec)

    def brackets_frame(self):
        coord = self.brackets_coordinate()
        return [[self.decompose(coord[i][j]) for j in range(self.n)] for i in range(self.n)]

    # -- connection --------------------------------------------------------

    def gamma(self):
        """Koszul solve from evaluated metric derivatives and brackets."""
        data = self.data
        n = self.n
        dg = [
            [[self.ev(data.frame.fields[i].apply(data.metric.g[j][k])) for k in range(n)] for j in range(n)]
            for i in range(n)
        ]
        cb = self.brackets_frame()

        def pair(u, v):
            return sum(u[a] * self.g[a][b] * v[b] for a in range(n) for b in range(n))

        def unit(k):
            return [Fraction(int(a == k)) for a in range(n)]

        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                w = []
                for z in range(n):
                    rhs = dg[i][j][z] + dg[j][i][z] - dg[z][i][j]
                    rhs += pair(cb[i][j], unit(z)) - pair(cb[i][z], unit(j)) - pair(cb[j][z], unit(i))
                    w.append(rhs / 2)
                out[i][j] = [sum(self.ginv[k][z] * w[z] for z in range(n)) for k in range(n)]
        return out

    # -- curvature ----------------------------------------------------------

    def riemann(self):
        """R(E_i,E_j)E_k from evaluated Gamma and its evaluated directional
        derivatives, plus the evaluated frame brackets."""
        data = self.data
        n = self.n
        gam = [[[self.ev(c) for c in data.connection.gamma[i][j]] for j in range(n)] for i in range(n)]
        dgam = [
            [
                [[self.ev(data.frame.fields[w].apply(data.connection.gamma[i][j][k])) for k in range(n)] for j in range(n)]
                for i in range(n)
            ]
            for w in range(n)
        ]
        cb = self.brackets_frame()
        out = [[[None] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    vec = []
                    for u in range(n):
                        total = dgam[i][j][k][u] - dgam[j][i][k][u]
                        for a in range(n):
                            total += gam[j][k][a] * gam[i][a][u]
                            total -= gam[i][k][a] * gam[j][a][u]
                            total -= cb[i][j][a] * gam[a][k][u]
                        vec.append(total)
                    out[i][j][k] = vec
        return out

    def ricci(self, riem):
        n = self.n
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                total = Fraction(0)
                for a in range(n):
                    for b in range(n):
                        paired = sum(riem[a][i][j][u] * self.g[u][b] for u in range(n))
                        total += self.ginv[a][b] * paired
                out[i][j] = total
        return out

    def scalar(self, ric):
        n = self.n
        return sum(self.ginv[a][b] * ric[a][b] for a in range(n) for b in range(n))

    def q_operator(self, ric):
        n = self.n
        return [[sum(self.ginv[k][a] * ric[i][a] for a in range(n)) for k in range(n)] for i in range(n)]

    def m_projective(self, riem, ric, q):
        n = self.n
        factor = Fraction(1, 2 * (n - 1))
        out = [[[None] * n for _ in range(n)] for _ in range(n)]
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    vec = []
                    for u in range(n):
                        corr = ric[y][z] * Fraction(int(u == x)) - ric[x][z] * Fraction(int(u == y))
                        corr += self.g[y][z] * q[x][u] - self.g[x][z] * q[y][u]
                        vec.append(riem[x][y][z][u] - factor * corr)
                    out[x][y][z] = vec
        return out

    def concircular(self, riem, scalar):
        n = self.n
        factor = scalar / (n * (n - 1))
        out = [[[None] * n for _ in range(n)] for _ in range(n)]
        for x in range(n):
            for y in range(n):
                for w in range(n):
                    vec = []
                    for u in range(n):
                        corr = self.g[y][w] * Fraction(int(u == x)) - self.g[x][w] * Fraction(int(u == y))
                        vec.append(riem[x][y][w][u] - factor * corr)
                    out[x][y][w] = vec
        return out

    def lie_metric(self, v_comps):
        """(L_V g)(E_i, E_j) from evaluated derivative inputs."""
        data = self.data
        n = self.n
        vfield = data.frame.from_components(v_comps)
        dgv = [[self.ev(vfield.apply(data.metric.g[i][j])) for j in range(n)] for i in range(n)]
        from lcslab.frame_geometry import lie_bracket

        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            bvi = self.decompose([self.ev(c) for c in lie_bracket(vfield, data.frame.fields[i]).coeffs])
            for j in range(n):
                bvj = self.decompose([self.ev(c) for c in lie_bracket(vfield, data.frame.fields[j]).coeffs])
                pair_i = sum(bvi[a] * self.g[a][b] * Fraction(int(b == j)) for a in range(n) for b in range(n))
                pair_j = sum(Fraction(int(a == i)) * self.g[a][b] * bvj[b] for a in range(n) for b in range(n))
                out[i][j] = dgv[i][j] - pair_i - pair_j
        return out
