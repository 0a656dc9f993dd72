"""Residual checkers and exact fitters for the recurrence and soliton
conditions, plus the derived-condition tensors.

Gate discipline: a derived consequence is asserted only when its hypothesis
residual is exactly zero and its nondegeneracy guard is nonzero in the
function field; otherwise the same quantities are reported informationally.
Every assertion made here is therefore literally checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .frame_geometry import FrameTensor, vec_scale, vec_sub
from .lcs_structure import ClassifierVerdict, classify, solve_two_unknowns
from .manifold import ManifoldData
from .symexpr import Expr


class RecurrenceKind(Enum):
    SGR = "SGR"  # semi-generalized recurrent: nabla R = A x R + B x (g-term)
    SGRR = "SGRR"  # Ricci variant: nabla S = A x S + n B x g
    SGPR = "SGPR"  # phi-recurrent variant: phi^2(nabla R) = A x R + B x (g-term)


@dataclass(frozen=True)
class RecurrenceForms:
    """1-forms A, B on the frame plus their metric-dual vectors."""

    a: tuple[Expr, ...]
    b: tuple[Expr, ...]
    rho1: tuple[Expr, ...]
    rho2: tuple[Expr, ...]

    @classmethod
    def from_covectors(cls, data: ManifoldData, a, b) -> "RecurrenceForms":
        return cls(tuple(a), tuple(b), data.metric.raise_form(a), data.metric.raise_form(b))


@dataclass(frozen=True)
class NoSolution:
    """Witness that a recurrence fit is inconsistent."""

    kind: RecurrenceKind
    direction: int
    component: tuple[int, ...]
    needed: Expr
    detail: str

    def describe(self) -> str:
        idx = ",".join(str(i + 1) for i in self.component)
        return f"direction E{self.direction + 1}, component ({idx}): {self.detail}"


def _sgr_rows(data: ManifoldData, w: int):
    """Rows (coef_A, coef_B, rhs) of the direction-w system for nabla R."""
    n = data.dim
    riem = data.stack.riemann13
    nabla_r = data.nabla_riemann
    g = data.metric.g
    chart = data.chart
    rows = []
    index = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs_vec = nabla_r.comp(w, x, y, z)
                r_vec = riem.comp(x, y, z)
                for u in range(n):
                    gterm = g[y][z] if u == x else chart.zero()
                    rows.append((r_vec[u], gterm, lhs_vec[u]))
                    index.append((x, y, z, u))
    return rows, index


def _sgrr_rows(data: ManifoldData, w: int):
    n = data.dim
    ric = data.stack.ricci
    nabla_s = data.nabla_ricci
    g = data.metric.g
    n_const = data.chart.const(n)
    rows = []
    index = []
    for i in range(n):
        for j in range(n):
            rows.append((ric.comp(i, j), n_const * g[i][j], nabla_s.comp(w, i, j)))
            index.append((i, j))
    return rows, index


def recurrence_residual(data: ManifoldData, kind: RecurrenceKind, forms: RecurrenceForms):
    """Exact residual tensor of the recurrence condition; flag true iff zero."""
    n = data.dim
    g = data.metric.g
    chart = data.chart
    unit = [data.frame.unit(i) for i in range(n)]

    if kind is RecurrenceKind.SGRR:
        ric = data.stack.ricci
        nabla_s = data.nabla_ricci
        n_const = chart.const(n)

        def entry(w, i, j):
            return nabla_s.comp(w, i, j) - forms.a[w] * ric.comp(i, j) - n_const * forms.b[w] * g[i][j]

        res = FrameTensor.build((0, 3), n, entry)
        return res, res.is_zero()

    riem = data.stack.riemann13
    nabla_r = data.nabla_riemann
    if kind is RecurrenceKind.SGPR:
        st = data.structure

        def lhs_vec(w, x, y, z):
            return st.phi_of(st.phi_of(nabla_r.comp(w, x, y, z)))

    else:

        def lhs_vec(w, x, y, z):
            return nabla_r.comp(w, x, y, z)

    def entry14(w, x, y, z):
        val = vec_sub(lhs_vec(w, x, y, z), vec_scale(forms.a[w], riem.comp(x, y, z)))
        return vec_sub(val, vec_scale(forms.b[w] * g[y][z], unit[x]))

    res = FrameTensor.build((1, 4), n, entry14)
    return res, res.is_zero()


def recurrence_fit(data: ManifoldData, kind: RecurrenceKind):
    """Fit the 1-forms A, B direction by direction from the overdetermined
    exact linear system; returns RecurrenceForms or a NoSolution witness.

    Directions where the system is underdetermined get A(E_i) = B(E_i) = 0.
    """
    if kind not in (RecurrenceKind.SGR, RecurrenceKind.SGRR):
        raise ValueError(f"fit supports SGR and SGRR, not {kind}")
    n = data.dim
    a_comps = []
    b_comps = []
    for w in range(n):
        rows, index = _sgr_rows(data, w) if kind is RecurrenceKind.SGR else _sgrr_rows(data, w)
        sol, witness = solve_two_unknowns(rows)
        if sol is None:
            p, q, rhs = rows[witness]
            if p.is_zero and q.is_zero:
                detail = f"the condition forces 0 = {rhs}"
            else:
                detail = "no values of the forms satisfy this component together with the others"
            return NoSolution(kind, w, index[witness], rhs, detail)
        a_comps.append(sol[0])
        b_comps.append(sol[1])
    return RecurrenceForms.from_covectors(data, a_comps, b_comps)


@dataclass(frozen=True)
class SgrPredictions:
    """Scalar-curvature consequences of the recurrence hypothesis.

    ``gated`` is true only when the hypothesis residual vanishes; then (and
    only then) the comparisons are assertions rather than information.
    """

    gated: bool
    r_engine: Expr
    r_predicted: Expr | None
    r_note: str
    r_matches: bool | None
    opposition: tuple[Expr, ...] | None
    opposition_note: str
    opposition_zero: bool | None


def sgr_predictions(data: ManifoldData, forms: RecurrenceForms) -> SgrPredictions:
    """Evaluate r = {2(n-1)(alpha^2-rho) eta(rho1) - (n^2+2) B(xi)} / A(xi)
    and the opposition relation A + (n^2/r) B = 0."""
    n = data.dim
    chart = data.chart
    st = data.structure
    _, gate = recurrence_residual(data, RecurrenceKind.SGR, forms)
    r_engine = data.stack.scalar

    a_xi = forms.a[data.xi_index]
    k2 = st.alpha * st.alpha - st.rho
    if a_xi.is_zero:
        r_pred = None
        r_note = "A(xi) is identically zero; the prediction formula divides by it"
        r_matches = None
    else:
        eta_rho1 = st.eta_of(forms.rho1)
        r_pred = (chart.const(2 * (n - 1)) * k2 * eta_rho1 - chart.const(n * n + 2) * forms.b[data.xi_index]) / a_xi
        r_note = ""
        r_matches = (r_pred - r_engine).is_zero

    if not r_engine.is_constant:
        opposition = None
        opposition_note = "scalar curvature is not constant; the opposition relation needs a nonzero constant"
        opposition_zero = None
    elif r_engine.is_zero:
        opposition = None
        opposition_note = "scalar curvature is zero; the opposition relation divides by it"
        opposition_zero = None
    else:
        factor = chart.const(n * n) / r_engine
        opposition = tuple(forms.a[i] + factor * forms.b[i] for i in range(n))
        opposition_note = ""
        opposition_zero = all(e.is_zero for e in opposition)

    return SgrPredictions(
        gated=gate,
        r_engine=r_engine,
        r_predicted=r_pred,
        r_note=r_note,
        r_matches=r_matches,
        opposition=opposition,
        opposition_note=opposition_note,
        opposition_zero=opposition_zero,
    )


@dataclass(frozen=True)
class XiDerivativeIdentity:
    """Result of checking g((nabla_W R)(xi,Y)Z, xi) against
    -(2 alpha rho - beta){g(Y,Z) + eta(Y)eta(Z)} eta(W)."""

    passed: bool
    sign_flipped: bool
    coefficient: Expr  # 2 alpha rho - beta, for the variant that was reported
    residual: FrameTensor


def nabla_r_xi_identity(data: ManifoldData, beta: Expr | None = None) -> XiDerivativeIdentity:
    """Check the xi-direction second-derivative identity on a verified
    structure; if it fails only under the adopted sign convention for beta,
    the sign-flipped alternative is checked and flagged."""
    st = data.structure
    if st.alpha.is_zero:
        raise ValueError("identity needs a structure with nonzero alpha")

    def residual_for(beta_value: Expr):
        n = data.dim
        g = data.metric.g
        nabla_r = data.nabla_riemann
        coeff = 2 * st.alpha * st.rho - beta_value

        def entry(w, y, z):
            vec = None
            for a in range(n):
                term = vec_scale(st.xi[a], nabla_r.comp(w, a, y, z))
                vec = term if vec is None else tuple(p + q for p, q in zip(vec, term))
            lhs = data.metric.pair(vec, st.xi)
            rhs = -coeff * (g[y][z] + st.eta[y] * st.eta[z]) * st.eta[w]
            return lhs - rhs

        return coeff, FrameTensor.build((0, 3), data.dim, entry)

    base_beta = st.beta if beta is None else beta
    coeff, res = residual_for(base_beta)
    if res.is_zero():
        return XiDerivativeIdentity(True, False, coeff, res)
    coeff_alt, res_alt = residual_for(-base_beta)
    if res_alt.is_zero():
        return XiDerivativeIdentity(True, True, coeff_alt, res_alt)
    return XiDerivativeIdentity(False, False, coeff, res)


@dataclass(frozen=True)
class SolitonParams:
    """Soliton scalar lambda, conformal pressure p, and the derived
    k = lambda - (p/2 + 1/n) - alpha (None when no alpha is available)."""

    lam: Expr
    p: Expr
    k: Expr | None = None

    @classmethod
    def derive(cls, lam: Expr, p: Expr, alpha: Expr, n: int) -> "SolitonParams":
        half = Fraction(1, 2)
        k = lam - (half * p + Fraction(1, n)) - alpha
        return cls(lam, p, k)


def soliton_lambda(alpha: Expr, p: Expr, n: int) -> tuple[Expr, Expr]:
    """The printed soliton scalar lambda = p/2 + ((n+1)/n) alpha, together
    with the independently re-derived trace value p/2 + ((n-1)/n) alpha.

    The second comes from tracing S = k g - alpha eta x eta with
    g(xi, xi) = -1 and the flow constraint r = -1; the two disagree, so
    both are always returned and reported side by side.
    """
    half_p = Fraction(1, 2) * p
    printed = half_p + Fraction(n + 1, n) * alpha
    traced = half_p + Fraction(n - 1, n) * alpha
    return printed, traced


@dataclass(frozen=True)
class SolitonCheck:
    residual: FrameTensor
    is_soliton: bool
    eta_einstein_residual: FrameTensor | None
    params: SolitonParams


def soliton_residual(data: ManifoldData, v, params: SolitonParams) -> SolitonCheck:
    """Exact residual of  L_V g + 2 S - [2 lambda - (p + 2/n)] g.

    With V = xi on a manifold carrying a verified structure, the residual
    of the eta-Einstein shape S = k g - alpha eta x eta is also reported.
    """
    n = data.dim
    g = data.metric.g
    lie = data.lie_metric(v)
    ric = data.stack.ricci
    factor = 2 * params.lam - (params.p + Fraction(2, n))

    def entry(i, j):
        return lie.comp(i, j) + 2 * ric.comp(i, j) - factor * g[i][j]

    res = FrameTensor.build((0, 2), n, entry)

    eta_res = None
    if tuple(v) == data.xi_components() and params.k is not None:
        try:
            st = data.structure
        except Exception:
            st = None
        if st is not None:

            def eta_entry(i, j):
                return ric.comp(i, j) - params.k * g[i][j] + st.alpha * st.eta[i] * st.eta[j]

            eta_res = FrameTensor.build((0, 2), n, eta_entry)

    return SolitonCheck(res, res.is_zero(), eta_res, params)


@dataclass(frozen=True)
class DerivedConditions:
    """The action tensors R(xi,X).M and C(xi,X).S with their zero flags,
    nondegeneracy guards, and gated Einstein conclusions."""

    rxm: FrameTensor
    rxm_zero: bool
    cxs: FrameTensor
    cxs_zero: bool
    guard_rxm: Expr  # alpha^2 - rho
    guard_rxm_nonzero: bool
    guard_cxs: Expr  # n(n-1)(alpha^2 - rho) + 1
    guard_cxs_nonzero: bool
    mproj_xi_residual: FrameTensor  # eta(M(X,Y)xi), identically zero on LCS
    einstein_from_rxm: ClassifierVerdict | None
    einstein_from_cxs: ClassifierVerdict | None


def derived_condition_residuals(data: ManifoldData) -> DerivedConditions:
    st = data.structure
    n = data.dim
    chart = data.chart
    mproj = data.m_projective
    conc = data.concircular
    ric = data.stack.ricci
    riem = data.stack.riemann13

    def xi_slot(tensor, x, y):
        """T(xi, E_x)E_y for a (1,3) tensor, contracting xi into slot one."""
        vec = None
        for a in range(n):
            term = vec_scale(st.xi[a], tensor.comp(a, x, y))
            vec = term if vec is None else tuple(p + q for p, q in zip(vec, term))
        return vec

    r_xi = [[xi_slot(riem, x, u) for u in range(n)] for x in range(n)]

    def r_xi_apply(x, vec):
        out = None
        for j in range(n):
            if vec[j].is_zero:
                continue
            term = vec_scale(vec[j], r_xi[x][j])
            out = term if out is None else tuple(p + q for p, q in zip(out, term))
        return out if out is not None else tuple(chart.zero() for _ in range(n))

    def contract_slot(tensor, vec, fixed_a, fixed_b, slot):
        """tensor(...) with ``vec`` fed into the given argument slot."""
        out = None
        for j in range(n):
            if vec[j].is_zero:
                continue
            idx = {1: (j, fixed_a, fixed_b), 2: (fixed_a, j, fixed_b), 3: (fixed_a, fixed_b, j)}[slot]
            term = vec_scale(vec[j], tensor.comp(*idx))
            out = term if out is None else tuple(p + q for p, q in zip(out, term))
        return out if out is not None else tuple(chart.zero() for _ in range(n))

    def rxm_entry(x, u, v, w):
        # eta(R(xi,X) M(U,V)W) - eta(M(R(xi,X)U, V)W)
        #                      - eta(M(U, R(xi,X)V)W) - eta(M(U,V) R(xi,X)W)
        total = st.eta_of(r_xi_apply(x, mproj.comp(u, v, w)))
        total = total - st.eta_of(contract_slot(mproj, r_xi[x][u], v, w, 1))
        total = total - st.eta_of(contract_slot(mproj, r_xi[x][v], u, w, 2))
        total = total - st.eta_of(contract_slot(mproj, r_xi[x][w], u, v, 3))
        return total

    rxm = FrameTensor.build((0, 4), n, rxm_entry)

    c_xi = [[xi_slot(conc, x, y) for y in range(n)] for x in range(n)]

    def s_of(vec, z):
        return sum((vec[u] * ric.comp(u, z) for u in range(n)), chart.zero())

    def cxs_entry(x, y, z):
        return s_of(c_xi[x][y], z) + s_of(c_xi[x][z], y)

    cxs = FrameTensor.build((0, 3), n, cxs_entry)

    def mproj_xi_entry(i, j):
        vec = None
        for a in range(n):
            term = vec_scale(st.xi[a], mproj.comp(i, j, a))
            vec = term if vec is None else tuple(p + q for p, q in zip(vec, term))
        return st.eta_of(vec)

    mproj_xi = FrameTensor.build((0, 2), n, mproj_xi_entry)

    guard_rxm = st.alpha * st.alpha - st.rho
    guard_cxs = chart.const(n * (n - 1)) * guard_rxm + 1
    rxm_zero = rxm.is_zero()
    cxs_zero = cxs.is_zero()
    guard_rxm_nonzero = not guard_rxm.is_zero
    guard_cxs_nonzero = not guard_cxs.is_zero

    verdict_rxm = classify(ric, data.metric, st.eta) if rxm_zero and guard_rxm_nonzero else None
    verdict_cxs = classify(ric, data.metric, st.eta) if cxs_zero and guard_cxs_nonzero else None

    return DerivedConditions(
        rxm=rxm,
        rxm_zero=rxm_zero,
        cxs=cxs,
        cxs_zero=cxs_zero,
        guard_rxm=guard_rxm,
        guard_rxm_nonzero=guard_rxm_nonzero,
        guard_cxs=guard_cxs,
        guard_cxs_nonzero=guard_cxs_nonzero,
        mproj_xi_residual=mproj_xi,
        einstein_from_rxm=verdict_rxm,
        einstein_from_cxs=verdict_cxs,
    )
