"""Charts, vector fields, frames, the frame metric, and exact linear algebra.

Two bases coexist throughout the engine: the coordinate basis d/dx_i (used
for directional derivatives and Lie brackets) and the frame basis E_1..E_n
(used for all tensor components).  Conversion between them is always
explicit, via ``decompose``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .symexpr import Expr, Var, parse


class GeometryError(Exception):
    pass


class SingularFrameError(GeometryError):
    pass


class DegenerateMetricError(GeometryError):
    pass


class SignatureError(GeometryError):
    """Metric is not Lorentzian (-,+,...,+) at the sample point."""


@dataclass(frozen=True)
class Chart:
    coords: tuple[Var, ...]

    def __post_init__(self):
        names = [v.name for v in self.coords]
        if len(set(names)) != len(names):
            raise GeometryError(f"duplicate coordinate names: {names}")
        if not names:
            raise GeometryError("chart needs at least one coordinate")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def zero(self) -> Expr:
        return Expr.zero(self.coords)

    def one(self) -> Expr:
        return Expr.one(self.coords)

    def const(self, value) -> Expr:
        return Expr.constant(self.coords, value)

    def parse(self, text: str) -> Expr:
        return parse(text, self.coords)


@dataclass(frozen=True)
class VectorField:
    """Coordinate-basis components of a vector field."""

    chart: Chart
    coeffs: tuple[Expr, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.chart.dim:
            raise GeometryError("component count does not match chart dimension")

    def apply(self, f: Expr) -> Expr:
        """Directional derivative X(f) = sum_i X^i df/dx_i."""
        out = self.chart.zero()
        for c, v in zip(self.coeffs, self.chart.coords):
            if not c.is_zero:
                out = out + c * f.diff(v)
        return out


def apply(x: VectorField, f: Expr) -> Expr:
    return x.apply(f)


def lie_bracket(x: VectorField, y: VectorField) -> VectorField:
    """[X,Y] in coordinate components: X(Y^j) - Y(X^j)."""
    if x.chart != y.chart:
        raise GeometryError("vector fields live on different charts")
    return VectorField(x.chart, tuple(x.apply(yc) - y.apply(xc) for xc, yc in zip(x.coeffs, y.coeffs)))


@dataclass(frozen=True)
class Frame:
    fields: tuple[VectorField, ...]

    def __post_init__(self):
        n = self.chart.dim
        if len(self.fields) != n:
            raise GeometryError("frame must have one field per dimension")
        if matrix_det(self.coeff_matrix()).is_zero:
            raise SingularFrameError("frame coefficient matrix is singular")

    @property
    def chart(self) -> Chart:
        return self.fields[0].chart

    @property
    def dim(self) -> int:
        return self.chart.dim

    def coeff_matrix(self) -> list[list[Expr]]:
        """Rows are frame fields, columns coordinate components."""
        return [list(f.coeffs) for f in self.fields]

    def from_components(self, comps) -> VectorField:
        """The coordinate vector field sum_i comps_i E_i."""
        chart = self.chart
        out = [chart.zero()] * chart.dim
        for c, f in zip(comps, self.fields):
            if not c.is_zero:
                out = [o + c * fc for o, fc in zip(out, f.coeffs)]
        return VectorField(chart, tuple(out))

    def unit(self, i: int) -> tuple[Expr, ...]:
        """Frame components of E_i."""
        chart = self.chart
        return tuple(chart.one() if j == i else chart.zero() for j in range(self.dim))


def decompose(x: VectorField, frame: Frame) -> tuple[Expr, ...]:
    """Frame components c with sum_i c_i E_i = x, solved exactly."""
    n = frame.dim
    rows = frame.coeff_matrix()
    # unknowns multiply frame fields, so the system matrix has E_i as columns
    a = [[rows[i][j] for i in range(n)] for j in range(n)]
    b = list(x.coeffs)
    sol = solve_square(a, b)
    if sol is None:
        raise SingularFrameError("frame coefficient matrix is singular")
    return tuple(sol)


@dataclass(frozen=True)
class FrameMetric:
    """Symmetric Lorentzian inner products g(E_i, E_j) of a frame."""

    frame: Frame
    g: tuple[tuple[Expr, ...], ...]
    signature: tuple[int, int] = field(compare=False, default=(0, 0))

    def __post_init__(self):
        n = self.frame.dim
        if len(self.g) != n or any(len(row) != n for row in self.g):
            raise GeometryError("metric must be a square matrix over the frame")
        for i in range(n):
            for j in range(i):
                if self.g[i][j] != self.g[j][i]:
                    raise GeometryError(f"metric not symmetric at ({i},{j})")
        if matrix_det([list(r) for r in self.g]).is_zero:
            raise DegenerateMetricError("metric determinant is identically zero")

    @classmethod
    def checked(cls, frame: Frame, g, sample_point=None) -> "FrameMetric":
        """Validate symmetry, nondegeneracy, and Lorentzian signature.

        The signature is decided by exact rational inertia at a sample
        point (default: every coordinate = 2); a global symbolic signature
        test is not decidable in general.
        """
        g = tuple(tuple(row) for row in g)
        metric = cls(frame, g)
        if sample_point is None:
            sample_point = {v: Fraction(2) for v in frame.chart.coords}
        try:
            numeric = [[e.eval(sample_point) for e in row] for row in g]
        except Exception as exc:
            raise SignatureError(f"cannot evaluate metric at the sample point: {exc}") from None
        pos, neg, zero = symmetric_inertia(numeric)
        if zero:
            raise DegenerateMetricError("metric is degenerate at the sample point")
        if neg != 1:
            raise SignatureError(
                f"metric signature at the sample point is ({pos},{neg}); "
                "expected one negative and the rest positive"
            )
        return cls(frame, g, signature=(pos, neg))

    @property
    def dim(self) -> int:
        return self.frame.dim

    def pair(self, u, v) -> Expr:
        """u^T g v for frame-component vectors u, v."""
        out = self.frame.chart.zero()
        for i, ui in enumerate(u):
            if ui.is_zero:
                continue
            for j, vj in enumerate(v):
                if not vj.is_zero:
                    out = out + ui * self.g[i][j] * vj
        return out

    def inverse(self) -> tuple[tuple[Expr, ...], ...]:
        inv = matrix_inverse([list(r) for r in self.g])
        if inv is None:
            raise DegenerateMetricError("metric determinant is identically zero")
        return tuple(tuple(r) for r in inv)

    def lower(self, u) -> tuple[Expr, ...]:
        """Covariant components g(u, E_j)."""
        n = self.dim
        return tuple(self.pair(u, self.frame.unit(j)) for j in range(n))

    def raise_form(self, w) -> tuple[Expr, ...]:
        """Frame components of the metric dual of a 1-form."""
        ginv = self.inverse()
        n = self.dim
        zero = self.frame.chart.zero()
        return tuple(sum((ginv[i][j] * w[j] for j in range(n)), zero) for i in range(n))


def metric_pair(metric: FrameMetric, u, v) -> Expr:
    return metric.pair(u, v)


def inverse_metric(metric: FrameMetric):
    return metric.inverse()


@dataclass(frozen=True)
class FrameTensor:
    """Dense frame-component array of valence (r,s), r in {0,1}, s in 1..4.

    Covariant slots are indexed first, in the reading order of the tensor;
    for r=1 the leaf value is the frame-component tuple of the output
    vector, for r=0 the leaf is a scalar Expr.
    """

    valence: tuple[int, int]
    comps: tuple

    @classmethod
    def build(cls, valence, n: int, fn) -> "FrameTensor":
        r, s = valence
        if r not in (0, 1) or s not in (1, 2, 3, 4):
            raise GeometryError(f"unsupported valence {valence}")

        def rec(prefix):
            if len(prefix) == s:
                leaf = fn(*prefix)
                return tuple(leaf) if r == 1 else leaf
            return tuple(rec(prefix + (i,)) for i in range(n))

        return cls((r, s), rec(()))

    @property
    def dim(self) -> int:
        return len(self.comps)

    def comp(self, *idx):
        out = self.comps
        for i in idx:
            out = out[i]
        return out

    def items(self):
        """Yield ((covariant indices), leaf) over all components."""
        r, s = self.valence

        def rec(prefix, node):
            if len(prefix) == s:
                yield prefix, node
                return
            for i, sub in enumerate(node):
                yield from rec(prefix + (i,), sub)

        yield from rec((), self.comps)

    def scalars(self):
        """Yield every scalar entry, flattening vector leaves."""
        r, _ = self.valence
        for _, leaf in self.items():
            if r == 1:
                yield from leaf
            else:
                yield leaf

    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.scalars())

    def sub(self, other: "FrameTensor") -> "FrameTensor":
        if self.valence != other.valence:
            raise GeometryError("valence mismatch")
        r, _ = self.valence
        n = self.dim
        if r == 1:
            return FrameTensor.build(
                self.valence, n, lambda *ix: tuple(a - b for a, b in zip(self.comp(*ix), other.comp(*ix)))
            )
        return FrameTensor.build(self.valence, n, lambda *ix: self.comp(*ix) - other.comp(*ix))


# -- exact linear algebra over the function field ---------------------------


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Expr, u):
    return tuple(c * a for a in u)


def matrix_det(a: list[list[Expr]]) -> Expr:
    """Determinant by cofactor expansion; exact and division-free."""
    n = len(a)
    if n == 1:
        return a[0][0]
    total = None
    for j in range(n):
        if a[0][j].is_zero:
            continue
        minor = [[a[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = a[0][j] * matrix_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        anchor = a[0][0]
        return anchor - anchor
    return total


def _pick_pivot(rows: list, col: int, start: int):
    """Deterministic pivot: smallest stored form, ties to the lowest row."""
    best = None
    best_key = None
    for r in range(start, len(rows)):
        e = rows[r][col]
        if e.is_zero:
            continue
        key = (e.size, r)
        if best_key is None or key < best_key:
            best_key, best = key, r
    return best


def solve_square(a: list[list[Expr]], b: list[Expr]):
    """Solve a square system exactly; None when the matrix is singular."""
    n = len(a)
    rows = [list(a[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        p = _pick_pivot(rows, col, col)
        if p is None:
            return None
        rows[col], rows[p] = rows[p], rows[col]
        pivot = rows[col][col]
        for r in range(n):
            if r == col:
                continue
            factor = rows[r][col]
            if factor.is_zero:
                continue
            scale = factor / pivot
            rows[r] = [x - scale * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] / rows[i][i] for i in range(n)]


def matrix_inverse(a: list[list[Expr]]):
    """Gauss-Jordan inverse; None when singular."""
    n = len(a)
    zero = a[0][0] - a[0][0]
    one = zero + 1
    rows = [list(a[i]) + [one if j == i else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        p = _pick_pivot(rows, col, col)
        if p is None:
            return None
        rows[col], rows[p] = rows[p], rows[col]
        pivot = rows[col][col]
        rows[col] = [x / pivot for x in rows[col]]
        for r in range(n):
            if r == col:
                continue
            factor = rows[r][col]
            if factor.is_zero:
                continue
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [row[n:] for row in rows]


def symmetric_inertia(m: list[list[Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric rational
    matrix, by congruence diagonalization (Sylvester's law of inertia)."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    pos = neg = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                for j in range(n):
                    a[k][j], a[swap][j] = a[swap][j], a[k][j]
                for i in range(n):
                    a[i][k], a[i][swap] = a[i][swap], a[i][k]
            else:
                off = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if off is None:
                    zero += 1
                    continue
                # congruence by (row_k += row_off) makes the diagonal nonzero
                for j in range(n):
                    a[k][j] += a[off][j]
                for i in range(n):
                    a[i][k] += a[i][off]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for j in range(n):
                    a[i][j] -= f * a[k][j]
                for j in range(n):
                    a[j][i] -= f * a[j][k]
    return pos, neg, zero
