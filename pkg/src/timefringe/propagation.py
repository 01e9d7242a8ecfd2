"""Kernel application: a closed-form complex-Gaussian engine (fast path and
oracle) and a Simpson quadrature engine (general path), plus Hamilton-relation
drift diagnostics.

The closed-form engine rests on one completed-square integral,

    int dx' C exp(i beta (x-x')^2) exp(-a x'^2 + b x')
        = C sqrt(pi/gamma) exp(i beta x^2 + (b - 2 i beta x)^2 / (4 gamma)),
    gamma = a - i beta,

applied once per axis (the covariant kernel factorizes, with effective mass
-M c^2 on the time axis). Components carry log-amplitudes so widely displaced
gates never overflow intermediate exponentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError
from .kernels import axis_prefactor
from .numerics import simpson_weights
from .packets import (GAUSSIAN, GaussianSpatialPacket, Grid1D, Grid2D,
                      SpacetimePacket, evaluate_packet, expectations,
                      field_norm2, packet_on_grid)

CLOSED_FORM = "closed_form"
QUADRATURE = "quadrature"
ENGINES = (CLOSED_FORM, QUADRATURE)

SCHRODINGER = "schrodinger_control"
FLOQUET = "floquet"
STUECKELBERG = "stueckelberg"
THEORIES = (SCHRODINGER, FLOQUET, STUECKELBERG)

MIN_SAMPLES_PER_CYCLE = 8  # below this the quadrature silently decoheres


@dataclass(frozen=True)
class GaussianComponent1D:
    """f(u) = exp(logamp - a u^2 + b u) with Re(a) > 0."""

    logamp: complex
    a: complex
    b: complex

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        return np.exp(self.logamp - self.a * u * u + self.b * u)

    @property
    def intensity_mean(self) -> float:
        return float(self.b.real / (2.0 * self.a.real))

    @property
    def intensity_sigma(self) -> float:
        return 1.0 / (2.0 * math.sqrt(self.a.real))


def gaussian_component(center: float, width: float, wavenumber: float = 0.0,
                       logamp: complex = 0.0) -> GaussianComponent1D:
    """Normalized Gaussian envelope exp(-(u-center)^2 / 2 width^2) times a
    plane wave exp(i wavenumber u), with an extra log-amplitude factor."""
    a = 0.5 / (width * width)
    b = center / (width * width) + 1j * wavenumber
    log_norm = -0.25 * math.log(math.pi * width * width)
    return GaussianComponent1D(
        logamp=logamp + log_norm - center * center / (2.0 * width * width),
        a=complex(a), b=complex(b))


def propagate_component(comp: GaussianComponent1D, mu: float, s: float,
                        hbar: float = 1.0) -> GaussianComponent1D:
    """Apply the per-axis kernel with effective mass mu for parameter s."""
    beta = mu / (2.0 * hbar * s)
    gamma = comp.a - 1j * beta
    if gamma.real <= 0:
        raise DomainError("non-normalizable component: Re(gamma) <= 0")
    log_c = np.log(complex(axis_prefactor(mu, s, hbar)))
    logamp = (comp.logamp + log_c + 0.5 * np.log(np.pi / gamma)
              + comp.b * comp.b / (4.0 * gamma))
    a_new = -1j * beta + beta * beta / gamma
    b_new = -1j * beta * comp.b / gamma
    return GaussianComponent1D(logamp=complex(logamp), a=complex(a_new),
                               b=complex(b_new))


def component_overlap(f: GaussianComponent1D,
                      g: GaussianComponent1D) -> complex:
    """int f(u) conj(g(u)) du in closed form."""
    a = f.a + np.conj(g.a)
    b = f.b + np.conj(g.b)
    return complex(np.exp(f.logamp + np.conj(g.logamp) + b * b / (4.0 * a))
                   * np.sqrt(np.pi / a))


def spatial_component(packet: GaussianSpatialPacket,
                      hbar: float = 1.0) -> GaussianComponent1D:
    return gaussian_component(packet.center_x, packet.width_sigma_x,
                              packet.mean_momentum_p0 / hbar,
                              logamp=1j * packet.global_phase)


def gate_component(gate, mean_energy: float,
                   hbar: float = 1.0) -> GaussianComponent1D:
    if gate.profile != GAUSSIAN:
        raise DomainError("closed-form engine handles Gaussian gates only")
    amp = complex(gate.amplitude)
    if amp == 0:
        raise DomainError("zero-amplitude gate has no log-amplitude")
    comp = gaussian_component(gate.center_t, gate.width_delta_t,
                              -mean_energy / hbar, logamp=np.log(amp))
    # gate envelopes are not individually normalized
    return GaussianComponent1D(
        logamp=comp.logamp + 0.25 * math.log(math.pi * gate.width_delta_t**2),
        a=comp.a, b=comp.b)


@dataclass(frozen=True)
class SeparableTerm:
    x: GaussianComponent1D
    t: GaussianComponent1D


def packet_terms(packet: SpacetimePacket, hbar: float = 1.0) -> list:
    xc = spatial_component(packet.spatial, hbar)
    return [SeparableTerm(x=xc, t=gate_component(g, packet.mean_energy_E0, hbar))
            for g in packet.gates]


def propagate_terms(terms: list, theory: str, s: float, mass: float = 1.0,
                    c: float = 1.0, hbar: float = 1.0) -> list:
    if theory == STUECKELBERG:
        return [SeparableTerm(x=propagate_component(tm.x, mass, s, hbar),
                              t=propagate_component(tm.t, -mass * c * c, s, hbar))
                for tm in terms]
    raise DomainError(f"propagate_terms supports stueckelberg only, got {theory}")


def evaluate_terms(terms: list, x, t) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    field = np.zeros((x.size, t.size), dtype=complex)
    for tm in terms:
        field += np.outer(tm.x(x), tm.t(t))
    return field


def terms_norm2(terms: list) -> float:
    total = 0.0 + 0.0j
    for tj in terms:
        for tk in terms:
            total += (component_overlap(tj.x, tk.x)
                      * component_overlap(tj.t, tk.t))
    return float(total.real)


@dataclass(frozen=True)
class PropagationResult:
    field: np.ndarray
    grid: object                 # Grid1D or Grid2D
    norm_before: float
    norm_after: float
    engine: str
    terms: list | None = None    # closed-form representation when available

    @property
    def norm_drift(self) -> float:
        return abs(self.norm_after - self.norm_before) / self.norm_before


@dataclass(frozen=True)
class HamiltonDiagnostics:
    slope_x: float
    slope_t: float
    predicted_slope_x: float
    predicted_slope_t: float


def _odd(n: int) -> int:
    return n if n % 2 == 1 else n + 1


def _required_samples(k_max: float, span: float,
                      samples_per_cycle: float) -> int:
    cycles = k_max * span / (2.0 * math.pi)
    return _odd(max(33, int(math.ceil(cycles * samples_per_cycle)) + 1))


def _check_quadrature_resolution(axis: str, n: int, span: float,
                                 k_max: float) -> None:
    if n < 2:
        raise ResolutionError(f"{axis} grid needs >= 2 points")
    h = span / (n - 1)
    if k_max * h > 2.0 * math.pi / MIN_SAMPLES_PER_CYCLE:
        need = _required_samples(k_max, span, MIN_SAMPLES_PER_CYCLE)
        kwargs = {"required_n_x": need} if axis == "x" else {"required_n_t": need}
        raise ResolutionError(
            f"{axis} grid gives {2 * math.pi / (k_max * h):.2f} samples per "
            f"kernel-phase cycle (< {MIN_SAMPLES_PER_CYCLE}); need n >= {need}",
            **kwargs)


def _axis_operator(x_out: np.ndarray, x_in: np.ndarray, mu: float, s: float,
                   hbar: float) -> np.ndarray:
    """Weighted kernel matrix for one axis: K[i, j] w_j."""
    pref = complex(axis_prefactor(mu, s, hbar))
    du = x_out[:, None] - x_in[None, :]
    k = pref * np.exp(1j * mu * du * du / (2.0 * hbar * s))
    w = simpson_weights(len(x_in), x_in[1] - x_in[0])
    return k * w[None, :]


# ---------------------------------------------------------------- Schrodinger

def schrodinger_closed_form(packet: GaussianSpatialPacket, t_elapsed: float,
                            mass: float = 1.0,
                            hbar: float = 1.0) -> GaussianComponent1D:
    comp = spatial_component(packet, hbar)
    if t_elapsed == 0.0:
        return comp
    return propagate_component(comp, mass, t_elapsed, hbar)


def auto_grid_1d(packet: GaussianSpatialPacket, t_elapsed: float,
                 mass: float = 1.0, hbar: float = 1.0, n_x: int | None = None,
                 pad_sigmas: float = 6.5) -> Grid1D:
    comp = schrodinger_closed_form(packet, t_elapsed, mass, hbar)
    mean, sig = comp.intensity_mean, comp.intensity_sigma
    lo = min(mean - pad_sigmas * sig,
             packet.center_x - pad_sigmas * packet.width_sigma_x)
    hi = max(mean + pad_sigmas * sig,
             packet.center_x + pad_sigmas * packet.width_sigma_x)
    if n_x is None:
        k_max = (abs(mass) * (hi - lo) / (hbar * abs(t_elapsed))
                 if t_elapsed else 0.0)
        k_max += abs(packet.mean_momentum_p0) / hbar
        n_x = _required_samples(k_max, hi - lo, 16.0)
    return Grid1D(x_min=lo, x_max=hi, n_x=n_x)


def propagate_schrodinger(packet: GaussianSpatialPacket, t_elapsed: float,
                          engine: str = CLOSED_FORM,
                          grid: Grid1D | None = None,
                          input_grid: Grid1D | None = None, mass: float = 1.0,
                          hbar: float = 1.0,
                          samples_per_cycle: float = 48.0) -> PropagationResult:
    """Spread-and-drift evolution of the spatial Gaussian by t_elapsed."""
    if t_elapsed < 0:
        raise DomainError("t_elapsed must be >= 0")
    if engine not in ENGINES:
        raise DomainError(f"engine must be one of {ENGINES}")
    if grid is None:
        grid = auto_grid_1d(packet, t_elapsed, mass, hbar)
    x = grid.x
    wx_out = simpson_weights(grid.n_x, grid.dx)
    comp0 = spatial_component(packet, hbar)

    if t_elapsed == 0.0:
        field = comp0(x)
        n2 = float(wx_out @ np.abs(field) ** 2)
        return PropagationResult(field=field, grid=grid, norm_before=n2,
                                 norm_after=n2, engine=engine, terms=None)

    if engine == CLOSED_FORM:
        comp = propagate_component(comp0, mass, t_elapsed, hbar)
        field = comp(x)
        n_before = float(component_overlap(comp0, comp0).real)
        n_after = float(component_overlap(comp, comp).real)
        return PropagationResult(field=field, grid=grid, norm_before=n_before,
                                 norm_after=n_after, engine=engine,
                                 terms=[comp])

    if input_grid is None:
        w = packet.width_sigma_x
        lo = packet.center_x - 7.5 * w
        hi = packet.center_x + 7.5 * w
        k_max = (abs(mass) * (max(grid.x_max, hi) - min(grid.x_min, lo))
                 / (hbar * t_elapsed)) + abs(packet.mean_momentum_p0) / hbar
        input_grid = Grid1D(lo, hi, _required_samples(k_max, hi - lo,
                                                      samples_per_cycle))
    x_in = input_grid.x
    k_max = (abs(mass) * float(np.max(np.abs(x[:, None] - x_in[None, :])))
             / (hbar * t_elapsed)) + abs(packet.mean_momentum_p0) / hbar
    _check_quadrature_resolution("x", input_grid.n_x,
                                 input_grid.x_max - input_grid.x_min, k_max)
    psi_in = comp0(x_in)
    op = _axis_operator(x, x_in, mass, t_elapsed, hbar)
    field = op @ psi_in
    w_in = simpson_weights(input_grid.n_x, input_grid.dx)
    n_before = float(w_in @ np.abs(psi_in) ** 2)
    n_after = float(wx_out @ np.abs(field) ** 2)
    return PropagationResult(field=field, grid=grid, norm_before=n_before,
                             norm_after=n_after, engine=engine, terms=None)


# -------------------------------------------------------- Floquet/Stueckelberg

def auto_input_grid(packet: SpacetimePacket, n_x: int = 0, n_t: int = 0,
                    pad_sigmas: float = 7.5) -> Grid2D:
    w_x = packet.spatial.width_sigma_x
    lo_x = packet.spatial.center_x - pad_sigmas * w_x
    hi_x = packet.spatial.center_x + pad_sigmas * w_x
    lo_t = min(g.center_t - pad_sigmas * g.width_delta_t for g in packet.gates)
    hi_t = max(g.center_t + pad_sigmas * g.width_delta_t for g in packet.gates)
    return Grid2D(lo_x, hi_x, n_x or 513, lo_t, hi_t, n_t or 513)


def auto_output_grid(packet: SpacetimePacket, theory: str, s: float,
                     mass: float = 1.0, c: float = 1.0, hbar: float = 1.0,
                     n_x: int | None = None, n_t: int | None = None,
                     pad_sigmas: float = 6.5,
                     samples_per_cycle: float = 16.0) -> Grid2D:
    """Grid covering the propagated envelope and resolving its chirp."""
    xc = propagate_component(spatial_component(packet.spatial, hbar),
                             mass, s, hbar)
    lo_x = xc.intensity_mean - pad_sigmas * xc.intensity_sigma
    hi_x = xc.intensity_mean + pad_sigmas * xc.intensity_sigma
    if theory == FLOQUET:
        lo_t = min(g.center_t - 1.25 * pad_sigmas * g.width_delta_t
                   for g in packet.gates) + s
        hi_t = max(g.center_t + 1.25 * pad_sigmas * g.width_delta_t
                   for g in packet.gates) + s
    elif theory == STUECKELBERG:
        tcs = [propagate_component(gate_component(g, packet.mean_energy_E0, hbar),
                                   -mass * c * c, s, hbar)
               for g in packet.gates]
        lo_t = min(tc.intensity_mean - pad_sigmas * tc.intensity_sigma
                   for tc in tcs)
        hi_t = max(tc.intensity_mean + pad_sigmas * tc.intensity_sigma
                   for tc in tcs)
    else:
        raise DomainError(f"no space-time grid for theory {theory!r}")
    if n_x is None:
        k_max = (abs(mass) * (hi_x - lo_x) / (hbar * abs(s))
                 + abs(packet.spatial.mean_momentum_p0) / hbar)
        n_x = min(2048, _required_samples(k_max, hi_x - lo_x, samples_per_cycle))
    if n_t is None:
        if theory == FLOQUET:
            w_min = min(g.width_delta_t for g in packet.gates)
            n_t = _odd(max(129, int(math.ceil((hi_t - lo_t) / (w_min / 12.0)))))
        else:
            k_max = (mass * c * c * (hi_t - lo_t) / (hbar * abs(s))
                     + abs(packet.mean_energy_E0) / hbar)
            n_t = min(2048, _required_samples(k_max, hi_t - lo_t,
                                              samples_per_cycle))
    return Grid2D(lo_x, hi_x, n_x, lo_t, hi_t, n_t)


def propagate_floquet(packet: SpacetimePacket, delta_s: float,
                      engine: str = CLOSED_FORM, grid: Grid2D | None = None,
                      input_grid: Grid2D | None = None, mass: float = 1.0,
                      hbar: float = 1.0,
                      samples_per_cycle: float = 48.0) -> PropagationResult:
    """Exact time shift by delta_s composed with spatial free propagation.

    The delta constraint is applied analytically: the temporal factor of the
    output is the input gate structure evaluated at t - delta_s, so the
    temporal intensity marginal shifts without changing shape.
    """
    if delta_s <= 0:
        raise DomainError("delta_s must be > 0")
    if engine not in ENGINES:
        raise DomainError(f"engine must be one of {ENGINES}")
    if grid is None:
        grid = auto_output_grid(packet, FLOQUET, delta_s, mass, 1.0, hbar)
    x, t = grid.x, grid.t
    temporal = packet.gate_sum(t - delta_s, hbar)
    n_before = packet.temporal_norm2()  # spatial factor is unit-norm

    if engine == CLOSED_FORM:
        xc = propagate_component(spatial_component(packet.spatial, hbar),
                                 mass, delta_s, hbar)
        field = np.outer(xc(x), temporal)
        n_after = (float(component_overlap(xc, xc).real)
                   * packet.temporal_norm2())
    else:
        auto = input_grid is None
        if auto:
            input_grid = auto_input_grid(packet)
        x_in = input_grid.x
        k_max = (abs(mass) * float(np.max(np.abs(x[:, None] - x_in[None, :])))
                 / (hbar * delta_s)
                 + abs(packet.spatial.mean_momentum_p0) / hbar)
        span = input_grid.x_max - input_grid.x_min
        needed = _required_samples(k_max, span, samples_per_cycle)
        if auto and input_grid.n_x < needed:
            x_in = np.linspace(input_grid.x_min, input_grid.x_max, needed)
        _check_quadrature_resolution("x", len(x_in), span, k_max)
        op = _axis_operator(x, x_in, mass, delta_s, hbar)
        spatial = op @ packet.spatial.amplitude(x_in, hbar)
        field = np.outer(spatial, temporal)
        n_after = field_norm2(np.abs(field) ** 2, grid)
    return PropagationResult(field=field, grid=grid, norm_before=n_before,
                             norm_after=n_after, engine=engine, terms=None)


def propagate_stueckelberg(packet: SpacetimePacket, s_elapsed: float,
                           engine: str = CLOSED_FORM,
                           grid: Grid2D | None = None,
                           input_grid: Grid2D | None = None, mass: float = 1.0,
                           c: float = 1.0, hbar: float = 1.0,
                           samples_per_cycle: float = 48.0) -> PropagationResult:
    """Covariant evolution: both axes spread, the time axis with effective
    mass -M c^2, which is what chirps the gates and produces temporal fringes."""
    if s_elapsed <= 0:
        raise DomainError("s_elapsed must be > 0")
    if engine not in ENGINES:
        raise DomainError(f"engine must be one of {ENGINES}")
    if grid is None:
        grid = auto_output_grid(packet, STUECKELBERG, s_elapsed, mass, c, hbar)

    if engine == CLOSED_FORM:
        terms0 = packet_terms(packet, hbar)
        terms = propagate_terms(terms0, STUECKELBERG, s_elapsed, mass, c, hbar)
        field = evaluate_terms(terms, grid.x, grid.t)
        return PropagationResult(field=field, grid=grid,
                                 norm_before=terms_norm2(terms0),
                                 norm_after=terms_norm2(terms),
                                 engine=engine, terms=terms)

    auto = input_grid is None
    if auto:
        input_grid = auto_input_grid(packet)
    x_in, t_in = input_grid.x, input_grid.t
    span_x = input_grid.x_max - input_grid.x_min
    span_t = input_grid.t_max - input_grid.t_min
    kx_max = (abs(mass) * float(max(abs(grid.x_max - input_grid.x_min),
                                    abs(grid.x_min - input_grid.x_max)))
              / (hbar * s_elapsed)
              + abs(packet.spatial.mean_momentum_p0) / hbar)
    kt_max = (mass * c * c * float(max(abs(grid.t_max - input_grid.t_min),
                                       abs(grid.t_min - input_grid.t_max)))
              / (hbar * s_elapsed) + abs(packet.mean_energy_E0) / hbar)
    need_x = _required_samples(kx_max, span_x, samples_per_cycle)
    need_t = _required_samples(kt_max, span_t, samples_per_cycle)
    if auto and (input_grid.n_x < need_x or input_grid.n_t < need_t):
        input_grid = Grid2D(input_grid.x_min, input_grid.x_max,
                            max(input_grid.n_x, need_x),
                            input_grid.t_min, input_grid.t_max,
                            max(input_grid.n_t, need_t))
        x_in, t_in = input_grid.x, input_grid.t
    _check_quadrature_resolution("x", input_grid.n_x, span_x, kx_max)
    _check_quadrature_resolution("t", input_grid.n_t, span_t, kt_max)

    field_in = packet_on_grid(packet, input_grid, hbar)
    op_x = _axis_operator(grid.x, x_in, mass, s_elapsed, hbar)
    op_t = _axis_operator(grid.t, t_in, -mass * c * c, s_elapsed, hbar)
    field = op_x @ field_in @ op_t.T
    n_before = field_norm2(np.abs(field_in) ** 2, input_grid)
    n_after = field_norm2(np.abs(field) ** 2, grid)
    return PropagationResult(field=field, grid=grid, norm_before=n_before,
                             norm_after=n_after, engine=engine, terms=None)


def hamilton_diagnostics(packet: SpacetimePacket, theory: str, s_samples,
                         mass: float = 1.0, c: float = 1.0,
                         hbar: float = 1.0) -> HamiltonDiagnostics:
    """Least-squares drift slopes of <x>(s) and <t>(s) against the
    predictions p0/M and E0/(M c^2) (dt/ds = 1 for the time-shift theory)."""
    s_samples = list(s_samples)
    if len(s_samples) < 3:
        raise DomainError("need at least 3 s samples")
    if len(set(s_samples)) < 3:
        raise DomainError("degenerate s samples")
    means_x, means_t = [], []
    for s in s_samples:
        if theory == STUECKELBERG:
            res = propagate_stueckelberg(packet, s, CLOSED_FORM,
                                         mass=mass, c=c, hbar=hbar)
        elif theory == FLOQUET:
            res = propagate_floquet(packet, s, CLOSED_FORM,
                                    mass=mass, hbar=hbar)
        else:
            raise DomainError(f"no Hamilton diagnostics for theory {theory!r}")
        mom = expectations(res.field, res.grid, hbar)
        means_x.append(mom.mean_x)
        means_t.append(mom.mean_t)
    sx = float(np.polyfit(s_samples, means_x, 1)[0])
    st = float(np.polyfit(s_samples, means_t, 1)[0])
    pred_t = (packet.mean_energy_E0 / (mass * c * c)
              if theory == STUECKELBERG else 1.0)
    return HamiltonDiagnostics(
        slope_x=sx, slope_t=st,
        predicted_slope_x=packet.spatial.mean_momentum_p0 / mass,
        predicted_slope_t=pred_t)
