"""Bundled manifold state: frame, metric, connection and curvature caches.

Everything downstream (structure extraction, condition checkers, the CLI)
works from one of these.  Derived data is computed once, lazily, and the
underlying values are immutable, so sharing is safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .curvature import CurvatureStack
from .curvature import concircular as _concircular
from .curvature import m_projective as _m_projective
from .curvature import nabla_riemann as _nabla_riemann
from .frame_geometry import Frame, FrameMetric, FrameTensor
from .levi_civita import ConnectionCoeffs, cov_deriv_tensor, frame_brackets, koszul, lie_derivative_metric


@dataclass(eq=False)
class ManifoldData:
    name: str
    frame: Frame
    metric: FrameMetric
    xi_index: int
    sample_point: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.xi_index < self.frame.dim:
            raise ValueError(f"frame index {self.xi_index} out of range")

    @property
    def chart(self):
        return self.frame.chart

    @property
    def dim(self) -> int:
        return self.frame.dim

    @cached_property
    def brackets(self):
        return frame_brackets(self.frame)

    @cached_property
    def connection(self) -> ConnectionCoeffs:
        return koszul(self.frame, self.metric, self.brackets)

    @cached_property
    def stack(self) -> CurvatureStack:
        return CurvatureStack.compute(self.connection, self.metric, self.brackets)

    @cached_property
    def nabla_ricci(self) -> FrameTensor:
        return cov_deriv_tensor(self.connection, self.stack.ricci, None)

    @cached_property
    def nabla_riemann(self) -> FrameTensor:
        return _nabla_riemann(self.connection, self.stack.riemann13)

    @cached_property
    def m_projective(self) -> FrameTensor:
        return _m_projective(self.stack.riemann13, self.stack.ricci, self.stack.q_operator, self.metric)

    @cached_property
    def concircular(self) -> FrameTensor:
        return _concircular(self.stack.riemann13, self.stack.scalar, self.metric)

    @cached_property
    def structure(self):
        from .lcs_structure import derive_structure

        return derive_structure(self, self.xi_index)

    def lie_metric(self, v) -> FrameTensor:
        return lie_derivative_metric(self.frame, self.metric, v)

    def xi_components(self):
        return self.frame.unit(self.xi_index)
