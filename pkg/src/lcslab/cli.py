"""Command-line interface: definition files, structured reports, and the
built-in conformance case.

Definition files are UTF-8 JSON with keys name, coords, frame, metric, xi
(1-based frame index of the structure field), and optional sample_point.
Frame rows hold coordinate-basis coefficient expressions; metric rows hold
frame components, and entries below the diagonal may be null (they are
mirrored from above).  A built-in name (example51, flat3, desitter3) is
usable wherever a path is expected.

Exit codes: 0 when no entry failed (info and mismatch entries included),
1 when any check failed, 2 when the definition could not be loaded.

The ``conformance`` command diffs every engine-derived quantity of the
bundled reference manifold against the published component tables it was
transcribed from.  Where the two disagree, the report carries both values
with status ``mismatch``; engine values are the ones validated by the
structural self-checks, and all downstream computation uses them.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .builtin_manifolds import BUILTINS, builtin_names
from .conditions import (
    NoSolution,
    RecurrenceForms,
    RecurrenceKind,
    SolitonParams,
    derived_condition_residuals,
    nabla_r_xi_identity,
    recurrence_fit,
    recurrence_residual,
    sgr_predictions,
    soliton_lambda,
    soliton_residual,
)
from .frame_geometry import Chart, Frame, FrameMetric, GeometryError, VectorField
from .lcs_structure import EinsteinKind, NotLcsError, classify, derive_structure, verify_axioms
from .manifold import ManifoldData
from .symexpr import Expr, ExprError, Var, parse


class LoadError(Exception):
    pass


# -- definition loading -----------------------------------------------------


@dataclass
class ManifoldDef:
    name: str
    coords: list[str]
    frame: list[list[str]]
    metric: list[list[str]]
    xi: int  # 1-based frame index
    sample_point: dict[str, str] = field(default_factory=dict)
    source_text: str = ""  # raw file contents, for line numbers in errors


def _line_of(raw: str, needle: str) -> str:
    """Best-effort line locator for error messages on definition files."""
    if not raw:
        return ""
    pos = raw.find(json.dumps(needle))
    if pos < 0:
        pos = raw.find(needle)
    if pos < 0:
        return ""
    return f" (line {raw.count(chr(10), 0, pos) + 1})"


def load(path_or_name: str, sample_override: dict | None = None) -> ManifoldDef:
    """Read and validate a manifold definition; raises LoadError."""
    raw = ""
    if path_or_name in BUILTINS:
        payload = BUILTINS[path_or_name]
    else:
        path = Path(path_or_name)
        if not path.exists():
            raise LoadError(f"no such file or built-in definition: {path_or_name} (built-ins: {', '.join(builtin_names())})")
        raw = path.read_text(encoding="utf-8")
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise LoadError(f"{path_or_name}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None

    problems: list[str] = []
    if not isinstance(payload, dict):
        raise LoadError(f"{path_or_name}: definition must be a JSON object")

    name = payload.get("name") or (path_or_name if path_or_name in BUILTINS else Path(path_or_name).stem)
    coords = payload.get("coords")
    if not isinstance(coords, list) or not coords or not all(isinstance(c, str) for c in coords):
        raise LoadError(f"{path_or_name}: 'coords' must be a nonempty list of variable names")
    n = len(coords)
    try:
        variables = tuple(Var(c) for c in coords)
        if len(set(variables)) != n:
            problems.append("duplicate coordinate names")
    except ValueError as exc:
        problems.append(str(exc))

    frame_rows = payload.get("frame")
    if not isinstance(frame_rows, list) or len(frame_rows) != n or any(
        not isinstance(r, list) or len(r) != n for r in frame_rows
    ):
        problems.append(f"'frame' must be a {n}x{n} array of expression strings")
        frame_rows = []

    metric_rows = payload.get("metric")
    norm_metric: list[list[str]] = []
    if not isinstance(metric_rows, list) or len(metric_rows) != n:
        problems.append(f"'metric' must have {n} rows")
    else:
        grid: list[list[str | None]] = [[None] * n for _ in range(n)]
        for i, row in enumerate(metric_rows):
            if not isinstance(row, list):
                problems.append(f"metric row {i + 1} is not a list")
                continue
            if len(row) == n:
                entries = row
                offset = 0
            elif len(row) == n - i:
                entries = row  # upper triangle from the diagonal
                offset = i
            else:
                problems.append(f"metric row {i + 1} must have {n} entries (or {n - i} from the diagonal)")
                continue
            for k, cell in enumerate(entries):
                grid[i][offset + k] = cell
        for i in range(n):
            for j in range(n):
                if grid[i][j] is None:
                    grid[i][j] = grid[j][i]
                if grid[i][j] is None:
                    problems.append(f"metric entry ({i + 1},{j + 1}) is missing")
                    grid[i][j] = "0"
        for i in range(n):
            for j in range(i + 1, n):
                if grid[i][j] is not None and grid[j][i] is not None and grid[i][j] != grid[j][i]:
                    # textual asymmetry is fine if the expressions agree; checked later
                    pass
        norm_metric = [[str(c) for c in row] for row in grid]

    xi = payload.get("xi")
    if not isinstance(xi, int) or not 1 <= xi <= n:
        problems.append(f"'xi' must be a frame index between 1 and {n}")
        xi = 1

    sample = dict(payload.get("sample_point") or {})
    if sample_override:
        sample.update(sample_override)

    if problems:
        raise LoadError(f"{path_or_name}: " + "; ".join(problems))
    return ManifoldDef(
        name=str(name),
        coords=list(coords),
        frame=[list(r) for r in frame_rows],
        metric=norm_metric,
        xi=xi,
        sample_point={str(k): str(v) for k, v in sample.items()},
        source_text=raw,
    )


def build_manifold(defn: ManifoldDef) -> ManifoldData:
    """Turn a validated definition into engine state; raises LoadError."""
    problems: list[str] = []
    raw = defn.source_text
    variables = tuple(Var(c) for c in defn.coords)
    chart = Chart(variables)

    def parse_cell(text: str, where: str) -> Expr:
        try:
            return parse(text, variables)
        except ExprError as exc:
            problems.append(f"{where}: {exc} in {text!r}{_line_of(raw, text)}")
            return chart.zero()

    fields = []
    for i, row in enumerate(defn.frame):
        coeffs = tuple(parse_cell(c, f"frame[{i + 1}][{j + 1}]") for j, c in enumerate(row))
        fields.append(VectorField(chart, coeffs))
    g = [
        [parse_cell(c, f"metric[{i + 1}][{j + 1}]") for j, c in enumerate(row)]
        for i, row in enumerate(defn.metric)
    ]
    if problems:
        raise LoadError("; ".join(problems))

    for i in range(chart.dim):
        for j in range(i + 1, chart.dim):
            if g[i][j] != g[j][i]:
                raise LoadError(f"metric entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ as expressions")

    sample = {v: Fraction(2) for v in variables}
    try:
        for k, v in defn.sample_point.items():
            var = Var(k)
            if var not in sample:
                raise LoadError(f"sample_point names unknown coordinate {k!r}")
            sample[var] = Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise LoadError(f"bad sample_point: {exc}") from None

    try:
        frame = Frame(tuple(fields))
        metric = FrameMetric.checked(frame, g, sample)
    except GeometryError as exc:
        raise LoadError(str(exc)) from None
    return ManifoldData(defn.name, frame, metric, defn.xi - 1, sample or {})


# -- reports ----------------------------------------------------------------

PASS, FAIL, INFO, MISMATCH = "pass", "fail", "info", "mismatch"


@dataclass
class ReportEntry:
    check_id: str
    status: str
    title: str
    engine: str | None = None
    published: str | None = None
    residual: str | None = None
    note: str | None = None


@dataclass
class Report:
    command: str
    manifold: str
    notes: list[str] = field(default_factory=list)
    entries: list[ReportEntry] = field(default_factory=list)

    def add(self, check_id, status, title, engine=None, published=None, residual=None, note=None):
        self.entries.append(ReportEntry(check_id, status, title, engine, published, residual, note))

    @property
    def exit_code(self) -> int:
        return 1 if any(e.status == FAIL for e in self.entries) else 0

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, INFO: 0, MISMATCH: 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    def to_text(self) -> str:
        lines = [f"lcslab {self.command}: {self.manifold}"]
        for note in self.notes:
            lines.append(f"note: {note}")
        width = max((len(e.status) for e in self.entries), default=4)
        for e in self.entries:
            lines.append(f"[{e.status:<{width}}] {e.check_id}: {e.title}")
            if e.engine is not None:
                lines.append(f"{' ' * (width + 3)}engine:    {e.engine}")
            if e.published is not None:
                lines.append(f"{' ' * (width + 3)}published: {e.published}")
            if e.residual is not None:
                lines.append(f"{' ' * (width + 3)}residual:  {e.residual}")
            if e.note is not None:
                lines.append(f"{' ' * (width + 3)}note:      {e.note}")
        c = self.counts()
        lines.append(f"summary: {c[PASS]} pass, {c[FAIL]} fail, {c[MISMATCH]} mismatch, {c[INFO]} info")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "manifold": self.manifold,
            "notes": self.notes,
            "entries": [
                {
                    "check_id": e.check_id,
                    "status": e.status,
                    "title": e.title,
                    "engine": e.engine,
                    "published": e.published,
                    "residual": e.residual,
                    "note": e.note,
                }
                for e in self.entries
            ],
            "summary": self.counts(),
            "exit_code": self.exit_code,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


CONVENTION_NOTE = (
    "Ricci convention: S(Y,Z) = sum g^{ab} g(R(E_a,Y)Z, E_b), pinned so the "
    "reference manifold has S(E3,E3) = -4/z^2"
)


def format_vector(comps) -> str:
    parts = []
    for i, c in enumerate(comps):
        if c.is_zero:
            continue
        text = str(c)
        if text == "1":
            parts.append(f"E{i + 1}")
        elif text == "-1":
            parts.append(f"-E{i + 1}")
        elif "+" in text or " - " in text or "/" in text:
            parts.append(f"({text}) E{i + 1}")
        else:
            parts.append(f"{text} E{i + 1}")
    return " + ".join(parts) if parts else "0"


def first_nonzero(tensor):
    for idx, leaf in tensor.items():
        if tensor.valence[0] == 1:
            for u, e in enumerate(leaf):
                if not e.is_zero:
                    return idx + (u,), e
        else:
            if not leaf.is_zero:
                return idx, leaf
    return None, None


def residual_excerpt(tensor) -> str | None:
    idx, value = first_nonzero(tensor)
    if idx is None:
        return None
    pos = ",".join(str(i + 1) for i in idx)
    return f"component ({pos}) = {value}"


# -- commands ---------------------------------------------------------------


def _structure_or_report(data: ManifoldData, report: Report):
    try:
        return derive_structure(data, data.xi_index, allow_zero_alpha=True)
    except NotLcsError as exc:
        report.add("structure", FAIL, "structure extraction", note=str(exc))
        return None


def cmd_check_lcs(data: ManifoldData, report: Report) -> None:
    st = _structure_or_report(data, report)
    if st is None:
        return
    report.add("structure.alpha", INFO, "alpha", engine=str(st.alpha))
    report.add("structure.rho", INFO, "rho = -xi(alpha)", engine=str(st.rho))
    report.add("structure.beta", INFO, "beta from d(rho) = beta eta", engine=str(st.beta))
    k2 = st.alpha * st.alpha - st.rho
    report.add("structure.alpha2-rho", INFO, "alpha^2 - rho", engine=str(k2))
    for check in verify_axioms(data, st):
        report.add(
            f"axiom.{check.axiom}",
            PASS if check.passed else FAIL,
            check.description,
            note=check.detail or None,
        )
    verdict = classify(data.stack.ricci, data.metric, st.eta)
    if verdict.kind is EinsteinKind.NEITHER:
        report.add("classification", INFO, "Ricci shape", engine="neither Einstein nor eta-Einstein")
    else:
        report.add(
            "classification",
            INFO,
            "Ricci shape S = a g + b eta x eta",
            engine=f"{verdict.kind.value} with a = {verdict.a}, b = {verdict.b}",
        )


def cmd_curvature(data: ManifoldData, report: Report) -> None:
    n = data.dim
    for i in range(n):
        for j in range(n):
            report.add(
                f"connection.{i + 1}{j + 1}",
                INFO,
                f"nabla_E{i + 1} E{j + 1}",
                engine=format_vector(data.connection.gamma[i][j]),
            )
    riem = data.stack.riemann13
    shown = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                vec = riem.comp(i, j, k)
                if all(e.is_zero for e in vec):
                    continue
                report.add(
                    f"riemann.{i + 1}{j + 1}{k + 1}",
                    INFO,
                    f"R(E{i + 1},E{j + 1})E{k + 1}",
                    engine=format_vector(vec),
                )
                shown += 1
    if not shown:
        report.add("riemann", INFO, "curvature tensor", engine="0 (flat)")
    for i in range(n):
        for j in range(i, n):
            value = data.stack.ricci.comp(i, j)
            if not value.is_zero:
                report.add(f"ricci.{i + 1}{j + 1}", INFO, f"S(E{i + 1},E{j + 1})", engine=str(value))
    report.add("scalar", INFO, "scalar curvature r", engine=str(data.stack.scalar))
    for i in range(n):
        report.add(f"ricci-operator.{i + 1}", INFO, f"Q E{i + 1}", engine=format_vector(data.stack.q_operator.comp(i)))
    for label, tensor in (("m-projective", data.m_projective), ("concircular", data.concircular)):
        if tensor.is_zero():
            report.add(label, INFO, f"{label} tensor", engine="0")
            continue
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    vec = tensor.comp(i, j, k)
                    if all(e.is_zero for e in vec):
                        continue
                    report.add(
                        f"{label}.{i + 1}{j + 1}{k + 1}",
                        INFO,
                        f"{label}(E{i + 1},E{j + 1})E{k + 1}",
                        engine=format_vector(vec),
                    )
    for name, ok in data.stack.self_check(data.metric, data.nabla_riemann):
        report.add(f"self-check.{name}", PASS if ok else FAIL, name)


def _load_forms(data: ManifoldData, forms_path: str) -> RecurrenceForms:
    try:
        payload = json.loads(Path(forms_path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise LoadError(f"cannot read forms file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise LoadError(f"{forms_path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    n = data.dim
    try:
        a_texts = payload["A"]
        b_texts = payload["B"]
    except (TypeError, KeyError):
        raise LoadError(f"{forms_path}: forms file needs 'A' and 'B' arrays") from None
    if len(a_texts) != n or len(b_texts) != n:
        raise LoadError(f"{forms_path}: 'A' and 'B' must each have {n} entries")
    try:
        a = [parse(str(t), data.chart.coords) for t in a_texts]
        b = [parse(str(t), data.chart.coords) for t in b_texts]
    except ExprError as exc:
        raise LoadError(f"{forms_path}: {exc}") from None
    return RecurrenceForms.from_covectors(data, a, b)


def cmd_check_recurrence(data: ManifoldData, report: Report, kind: RecurrenceKind, forms: RecurrenceForms) -> None:
    for i, (a, b) in enumerate(zip(forms.a, forms.b)):
        report.add(f"forms.{i + 1}", INFO, f"A(E{i + 1}), B(E{i + 1})", engine=f"{a}, {b}")
    try:
        residual, is_zero = recurrence_residual(data, kind, forms)
    except NotLcsError as exc:
        report.add("recurrence", FAIL, f"{kind.value} residual", note=f"needs a concircular structure: {exc}")
        return
    report.add(
        f"recurrence.{kind.value}",
        PASS if is_zero else FAIL,
        f"{kind.value} condition with the given forms",
        residual=None if is_zero else residual_excerpt(residual),
        note="residual is identically zero" if is_zero else "residual is nonzero",
    )
    if kind is RecurrenceKind.SGR:
        try:
            pred = sgr_predictions(data, forms)
        except NotLcsError as exc:
            report.add("predictions", INFO, "scalar-curvature predictions", note=str(exc))
            return
        gate_note = None if pred.gated else "hypothesis residual nonzero; reported informationally"
        if pred.r_predicted is None:
            report.add("predictions.scalar", INFO, "predicted scalar curvature", note=pred.r_note)
        else:
            status = (PASS if pred.r_matches else FAIL) if pred.gated else INFO
            report.add(
                "predictions.scalar",
                status,
                "predicted vs engine scalar curvature",
                engine=f"engine {pred.r_engine}, predicted {pred.r_predicted}",
                note=gate_note,
            )
        if pred.opposition is None:
            report.add("predictions.opposition", INFO, "A + (n^2/r) B", note=pred.opposition_note)
        else:
            status = (PASS if pred.opposition_zero else FAIL) if pred.gated else INFO
            report.add(
                "predictions.opposition",
                status,
                "A + (n^2/r) B = 0",
                engine=", ".join(str(e) for e in pred.opposition),
                note=gate_note,
            )


def cmd_fit(data: ManifoldData, report: Report, kind: RecurrenceKind) -> None:
    try:
        result = recurrence_fit(data, kind)
    except NotLcsError as exc:
        report.add("fit", FAIL, f"{kind.value} fit", note=f"needs a concircular structure: {exc}")
        return
    if isinstance(result, NoSolution):
        report.add(
            f"fit.{kind.value}",
            INFO,
            f"{kind.value} fit has no exact solution",
            note=result.describe(),
        )
        return
    for i, (a, b) in enumerate(zip(result.a, result.b)):
        report.add(f"fit.{kind.value}.{i + 1}", INFO, f"A(E{i + 1}), B(E{i + 1})", engine=f"{a}, {b}")
    report.add(
        f"fit.{kind.value}.duals",
        INFO,
        "metric duals rho1, rho2",
        engine=f"{format_vector(result.rho1)}; {format_vector(result.rho2)}",
    )
    _, is_zero = recurrence_residual(data, kind, result)
    report.add(
        f"fit.{kind.value}.roundtrip",
        PASS if is_zero else FAIL,
        "fitted forms reproduce the condition exactly",
    )


def cmd_soliton(data: ManifoldData, report: Report, p_text: str, lambda_text: str | None) -> None:
    chart = data.chart
    try:
        p = chart.parse(p_text)
    except ExprError as exc:
        raise LoadError(f"bad --p expression: {exc}") from None

    alpha = None
    try:
        alpha = data.structure.alpha
    except NotLcsError:
        pass

    lam_printed = lam_traced = None
    if alpha is not None:
        lam_printed, lam_traced = soliton_lambda(alpha, p, data.dim)
        report.add("lambda.printed", INFO, "lambda = p/2 + ((n+1)/n) alpha", engine=str(lam_printed))
        report.add("lambda.traced", INFO, "lambda from the trace with g(xi,xi) = -1 and r = -1", engine=str(lam_traced))
        if lam_printed != lam_traced:
            report.add(
                "lambda.difference",
                INFO,
                "the two lambda derivations disagree",
                engine=str(lam_printed - lam_traced),
                note="both are reported; neither is preferred silently",
            )
    if lambda_text is not None:
        try:
            lam = chart.parse(lambda_text)
        except ExprError as exc:
            raise LoadError(f"bad --lambda expression: {exc}") from None
    elif lam_printed is not None:
        lam = lam_printed
    else:
        report.add("soliton", FAIL, "soliton residual", note="no structure alpha available; pass --lambda explicitly")
        return

    if not lam.is_constant:
        report.add(
            "lambda.constancy",
            INFO,
            "lambda is not constant",
            engine=str(lam),
            note="treated as a scalar field; the derivations presume a scalar",
        )
    if alpha is not None:
        params = SolitonParams.derive(lam, p, alpha, data.dim)
        report.add("soliton.k", INFO, "k = lambda - (p/2 + 1/n) - alpha", engine=str(params.k))
    else:
        params = SolitonParams(lam, p)
    check = soliton_residual(data, data.xi_components(), params)
    report.add(
        "soliton.residual",
        INFO,
        "L_xi g + 2S - [2 lambda - (p + 2/n)] g",
        engine="0 (conformal soliton)" if check.is_soliton else "nonzero (not a conformal soliton)",
        residual=residual_excerpt(check.residual),
    )
    if check.eta_einstein_residual is not None:
        zero = check.eta_einstein_residual.is_zero()
        report.add(
            "soliton.eta-einstein",
            INFO,
            "S - k g + alpha eta x eta",
            engine="0" if zero else "nonzero",
            residual=residual_excerpt(check.eta_einstein_residual),
        )


def cmd_derived_conditions(data: ManifoldData, report: Report) -> None:
    try:
        out = derived_condition_residuals(data)
    except NotLcsError as exc:
        report.add("derived-conditions", FAIL, "derived conditions", note=f"needs a concircular structure: {exc}")
        return
    report.add(
        "mproj-xi",
        PASS if out.mproj_xi_residual.is_zero() else FAIL,
        "eta(M(X,Y)xi) = 0",
        residual=residual_excerpt(out.mproj_xi_residual),
    )
    report.add(
        "rxm",
        INFO,
        "R(xi,X) acting on the M-projective tensor",
        engine="0" if out.rxm_zero else "nonzero",
        residual=residual_excerpt(out.rxm),
    )
    report.add(
        "cxs",
        INFO,
        "C(xi,X) acting on the Ricci tensor",
        engine="0" if out.cxs_zero else "nonzero",
        residual=residual_excerpt(out.cxs),
    )
    report.add("guard.rxm", INFO, "guard alpha^2 - rho", engine=str(out.guard_rxm))
    report.add("guard.cxs", INFO, "guard n(n-1)(alpha^2 - rho) + 1", engine=str(out.guard_cxs))
    if out.einstein_from_rxm is not None:
        ok = out.einstein_from_rxm.kind is EinsteinKind.EINSTEIN
        report.add(
            "einstein.rxm",
            PASS if ok else FAIL,
            "vanishing action + nonzero guard imply an Einstein manifold",
            engine=out.einstein_from_rxm.kind.value
            + (f" with a = {out.einstein_from_rxm.a}" if out.einstein_from_rxm.a is not None else ""),
        )
    else:
        report.add("einstein.rxm", INFO, "Einstein conclusion not gated", note="hypothesis or guard not met")
    if out.einstein_from_cxs is not None:
        ok = out.einstein_from_cxs.kind is EinsteinKind.EINSTEIN
        report.add(
            "einstein.cxs",
            PASS if ok else FAIL,
            "vanishing action + nonzero guard imply an Einstein manifold",
            engine=out.einstein_from_cxs.kind.value
            + (f" with a = {out.einstein_from_cxs.a}" if out.einstein_from_cxs.a is not None else ""),
        )
    else:
        report.add("einstein.cxs", INFO, "Einstein conclusion not gated", note="hypothesis or guard not met")
    try:
        ident = nabla_r_xi_identity(data)
        report.add(
            "xi-derivative-identity",
            PASS if ident.passed else FAIL,
            "g((nabla_W R)(xi,Y)Z, xi) = -(2 alpha rho - beta){g(Y,Z) + eta(Y)eta(Z)} eta(W)",
            engine=f"2 alpha rho - beta = {ident.coefficient}",
            residual=residual_excerpt(ident.residual),
            note="passes under the sign-flipped beta convention" if ident.sign_flipped else None,
        )
    except (NotLcsError, ValueError) as exc:
        report.add("xi-derivative-identity", INFO, "xi derivative identity", note=str(exc))


# -- conformance -------------------------------------------------------------

PUBLISHED_BRACKETS = {
    (0, 1): ("0", "-z", "0"),
    (0, 2): ("-1/z", "0", "0"),
    (1, 2): ("0", "-1/z", "0"),
}

PUBLISHED_CONNECTION = {
    (0, 0): ("0", "0", "-1/z"),
    (0, 1): ("0", "0", "0"),
    (0, 2): ("-1/z", "0", "0"),
    (1, 0): ("0", "z", "0"),
    (1, 1): ("-z", "0", "-1/z"),
    (1, 2): ("0", "-1/z", "0"),
    (2, 0): ("0", "0", "0"),
    (2, 1): ("0", "0", "0"),
    (2, 2): ("0", "0", "0"),
}

PUBLISHED_CURVATURE = {
    (1, 2, 2): ("0", "-2/z^2", "0"),
    (0, 2, 2): ("-2/z^2", "0", "0"),
    (0, 1, 1): ("1/z^2 - z^2", "0", "0"),
    (1, 2, 1): ("0", "0", "-2/z^2"),
    (0, 1, 0): ("0", "z^2 - 1/z^2", "0"),
    (0, 2, 0): ("0", "0", "-2/z^2"),
}

PUBLISHED_RICCI = {
    (0, 0): "-(z^2 + 1/z^2)",
    (1, 1): "-(z^2 + 1/z^2)",
    (2, 2): "-4/z^2",
}

PUBLISHED_PHI = {0: ("1", "0", "0"), 1: ("0", "1", "0"), 2: ("0", "0", "0")}

PUBLISHED_ALPHA = "-1/z"
PUBLISHED_RHO = "-1/z^2"

# published covariant derivative of the Ricci tensor, as a full tensor:
# direction -> {(i, j): coefficient}; everything not listed is zero
PUBLISHED_NABLA_RICCI = {
    0: {(0, 2): "-(z + 5/z^3)", (2, 0): "-(z + 5/z^3)"},
    1: {(1, 2): "-(z + 5/z^3)", (2, 1): "-(z + 5/z^3)"},
    2: {},
}

# published recurrence 1-forms; the nonzero entries depend on the vector
# arguments a_i, b_i, c_i and are recorded verbatim as text
PUBLISHED_FORMS_A = (
    "(a1 c2 + c1 a2) / (z (a1 a2 + b1 b2))",
    "(b1 c2 + c1 b2) / (z (a1 a2 + b1 b2))",
    "0",
)
PUBLISHED_FORMS_B = (
    "-4 (a1 c2 + c1 a2) / (3 z^3 (a1 a2 + b1 b2))",
    "-4 (b1 c2 + c1 b2) / (3 z^3 (a1 a2 + b1 b2))",
    "0",
)


def cmd_conformance(data: ManifoldData, report: Report) -> None:
    chart = data.chart
    pub = lambda text: chart.parse(text)

    def diff_vector(check_id, title, engine_vec, published_texts):
        published_vec = tuple(pub(t) for t in published_texts)
        same = all(a == b for a, b in zip(engine_vec, published_vec))
        report.add(
            check_id,
            PASS if same else MISMATCH,
            title,
            engine=format_vector(engine_vec),
            published=format_vector(published_vec),
        )
        return same

    for (i, j), texts in sorted(PUBLISHED_BRACKETS.items()):
        diff_vector(f"bracket.{i + 1}{j + 1}", f"[E{i + 1},E{j + 1}]", data.brackets[i][j], texts)

    for (i, j), texts in sorted(PUBLISHED_CONNECTION.items()):
        diff_vector(f"connection.{i + 1}{j + 1}", f"nabla_E{i + 1} E{j + 1}", data.connection.gamma[i][j], texts)

    riem = data.stack.riemann13
    for (i, j, k), texts in sorted(PUBLISHED_CURVATURE.items()):
        diff_vector(f"riemann.{i + 1}{j + 1}{k + 1}", f"R(E{i + 1},E{j + 1})E{k + 1}", riem.comp(i, j, k), texts)

    st = _structure_or_report(data, report)
    if st is None:
        return
    for check_id, engine_value, published_text, title in (
        ("structure.alpha", st.alpha, PUBLISHED_ALPHA, "alpha"),
        ("structure.rho", st.rho, PUBLISHED_RHO, "rho"),
    ):
        same = engine_value == pub(published_text)
        report.add(check_id, PASS if same else MISMATCH, title, engine=str(engine_value), published=published_text)
    report.add(
        "structure.beta",
        INFO,
        "beta from d(rho) = beta eta",
        engine=str(st.beta),
        note="no published value; the proportionality convention mirrors the one for rho",
    )
    for i, texts in sorted(PUBLISHED_PHI.items()):
        diff_vector(f"structure.phi.{i + 1}", f"phi E{i + 1}", st.phi.comp(i), texts)
    eta_ok = st.eta_of(st.xi) == chart.const(-1)
    report.add("structure.eta-xi", PASS if eta_ok else FAIL, "eta(E3) = -1", engine=str(st.eta_of(st.xi)), published="-1")

    ric = data.stack.ricci
    for (i, j), text in sorted(PUBLISHED_RICCI.items()):
        engine_value = ric.comp(i, j)
        published_value = pub(text)
        same = engine_value == published_value
        report.add(
            f"ricci.{i + 1}{j + 1}",
            PASS if same else MISMATCH,
            f"S(E{i + 1},E{j + 1})",
            engine=str(engine_value),
            published=text,
            note=None
            if same
            else "engine value validated by direct contraction of the engine curvature tensor "
            "and exact rational evaluation; downstream checks use it",
        )

    nabla_s = data.nabla_ricci
    n = data.dim
    for w in range(n):
        published_map = PUBLISHED_NABLA_RICCI[w]
        diffs = []
        for i in range(n):
            for j in range(n):
                engine_value = nabla_s.comp(w, i, j)
                published_value = pub(published_map.get((i, j), "0"))
                if engine_value != published_value:
                    diffs.append(f"({i + 1},{j + 1}): engine {engine_value}, published {published_value}")
        report.add(
            f"nabla-ricci.{w + 1}",
            PASS if not diffs else MISMATCH,
            f"(nabla_E{w + 1} S) components",
            engine="matches" if not diffs else "; ".join(diffs[:3]) + ("; ..." if len(diffs) > 3 else ""),
            published="full table as printed",
            note=None if not diffs else "derived from the published Ricci values, which the engine also flags",
        )

    fit = recurrence_fit(data, RecurrenceKind.SGRR)
    if isinstance(fit, NoSolution):
        report.add(
            "forms.fit",
            MISMATCH,
            "Ricci-recurrence 1-forms A, B",
            engine=f"no exact 1-forms exist: {fit.describe()}",
            published=f"A = {PUBLISHED_FORMS_A}; B = {PUBLISHED_FORMS_B}",
            note="the published entries depend on the vector arguments, so they are not 1-forms on the manifold",
        )
        report.add(
            "recurrence.SGRR",
            MISMATCH,
            "semi-generalized Ricci recurrence",
            engine="condition has no exact solution with genuine 1-forms",
            published="manifold is reported to satisfy the condition",
        )
    else:
        same = all(e.is_zero for e in (fit.a[2], fit.b[2]))
        report.add(
            "forms.fit",
            PASS if same else MISMATCH,
            "Ricci-recurrence 1-forms A, B",
            engine="; ".join(f"A(E{i + 1}) = {a}, B(E{i + 1}) = {b}" for i, (a, b) in enumerate(zip(fit.a, fit.b))),
            published=f"A = {PUBLISHED_FORMS_A}; B = {PUBLISHED_FORMS_B}",
        )

    for name, ok in data.stack.self_check(data.metric, data.nabla_riemann):
        report.add(f"self-check.{name}", PASS if ok else FAIL, name)

    axiom_checks = verify_axioms(data, st)
    bad = [c for c in axiom_checks if not c.passed]
    report.add(
        "axioms",
        PASS if not bad else FAIL,
        f"structure axioms ({len(axiom_checks)} checks)",
        note=None if not bad else "; ".join(c.axiom for c in bad),
    )


# -- dispatch -----------------------------------------------------------------


def run(command: str, data: ManifoldData, options: dict) -> Report:
    report = Report(command=command, manifold=data.name, notes=[CONVENTION_NOTE])
    if command == "check-lcs":
        cmd_check_lcs(data, report)
    elif command == "curvature":
        cmd_curvature(data, report)
    elif command == "check":
        kind = RecurrenceKind(options["kind"])
        forms = _load_forms(data, options["forms"])
        cmd_check_recurrence(data, report, kind, forms)
    elif command == "fit":
        kind = RecurrenceKind(options["kind"])
        if kind is RecurrenceKind.SGPR:
            raise LoadError("fit supports SGR and SGRR")
        cmd_fit(data, report, kind)
    elif command == "soliton":
        cmd_soliton(data, report, options.get("p", "0"), options.get("lam"))
    elif command == "derived-conditions":
        cmd_derived_conditions(data, report)
    elif command == "conformance":
        cmd_conformance(data, report)
    else:
        raise LoadError(f"unknown command {command!r}")
    return report


def _parse_sample(text: str | None) -> dict | None:
    if not text:
        return None
    out = {}
    for piece in text.split(","):
        if "=" not in piece:
            raise LoadError(f"bad --sample entry {piece!r}; use name=value")
        key, _, value = piece.partition("=")
        out[key.strip()] = value.strip()
    return out


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcslab", description="Exact curvature engine for framed Lorentzian manifolds")
    parser.add_argument("--version", action="version", version=f"lcslab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("definition", nargs="?", default="example51", help="definition file or built-in name")
        p.add_argument("--json", action="store_true", help="emit the report as JSON")
        p.add_argument("--sample", help="signature sample point, e.g. x=2,y=2,z=2")

    add_common(sub.add_parser("check-lcs", help="derive the structure and verify every axiom"))
    add_common(sub.add_parser("curvature", help="connection, curvature, Ricci, scalar, derived tensors"))

    p = sub.add_parser("check", help="test a recurrence condition with given 1-forms")
    p.add_argument("kind", choices=[k.value for k in RecurrenceKind])
    add_common(p)
    p.add_argument("--forms", required=True, help="JSON file with 'A' and 'B' expression arrays")

    p = sub.add_parser("fit", help="solve exactly for recurrence 1-forms")
    p.add_argument("kind", choices=[RecurrenceKind.SGR.value, RecurrenceKind.SGRR.value])
    add_common(p)

    p = sub.add_parser("soliton", help="conformal soliton residual and scalar")
    add_common(p)
    p.add_argument("--V", default="xi", choices=["xi"], help="soliton vector field (the structure field)")
    p.add_argument("--p", default="0", help="conformal pressure expression")
    p.add_argument("--lambda", dest="lam", default=None, help="soliton scalar expression (default: derived)")

    add_common(sub.add_parser("derived-conditions", help="action tensors, guards, and gated conclusions"))
    add_common(sub.add_parser("conformance", help="diff engine values against the published tables"))
    return parser


def main(argv=None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        sample = _parse_sample(getattr(args, "sample", None))
        defn = load(args.definition, sample)
        data = build_manifold(defn)
        options = {
            "kind": getattr(args, "kind", None),
            "forms": getattr(args, "forms", None),
            "p": getattr(args, "p", "0"),
            "lam": getattr(args, "lam", None),
        }
        report = run(args.command, data, options)
    except LoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
