"""Field tensors, the 10-component packing, and bilinear observables.

Observables of a superposition of plane waves are bilinear, so they are
assembled from per-pair blocks: mode j enters through Psi_bar and mode k
through Psi.  Each block is an exact number (on exact inputs) multiplying
the phase exp(i q.x), with q = s_k p_k - s_j p_j.  Derivatives act
mode-wise: d_mu Psi_k -> i b_mu Psi_k with b = s_k p_k, and
d_mu Psi_bar_j -> i a_mu Psi_bar_j with a = -s_j p_j.

Stored amplitudes carry the metric factor i explicitly in every component
with a 4 index, so Psi_bar is the ordinary conjugate transpose times eta.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .dkp_matrices import representation
from .errors import PreconditionError
from .exact import (
    I,
    ZERO,
    CRational,
    conj_vector,
    is_exact,
    make_vector,
    to_exact,
    vector_is_zero,
    vector_to_float,
)
from .index_algebra import (
    BIVECTOR_PAIRS,
    CANONICAL_INDICES,
    SPACETIME,
    Bivector,
    canonical_position,
)
from .momentum_kernel import FourMomentum, ModelParams, equation_matrix

# Fixed by requiring Lambda Psi = 0 <=> tensor equation; see test_equivalence.
PACKING_SIGN = -1

CURRENT_FORMS = ("canonical", "literal")


class FieldTensor:
    """Antisymmetric 4x4 amplitude f_{mu nu} (1-based access via ``f[mu, nu]``)."""

    def __init__(self, matrix):
        arr = np.array(matrix, dtype=object)
        if arr.shape != (4, 4):
            raise ValueError(f"field tensor needs shape (4, 4), got {arr.shape}")
        exact = all(is_exact(x) for x in arr.flat)
        if exact:
            arr = np.array([[to_exact(x) for x in row] for row in arr], dtype=object)
        else:
            arr = np.array([[complex(x) for x in row] for row in arr], dtype=np.complex128)
        if exact:
            ok = all(arr[i, j] == -arr[j, i] for i in range(4) for j in range(4))
        else:
            ok = np.allclose(arr, -arr.T, atol=0.0)
        if not ok:
            raise ValueError("field tensor must be antisymmetric")
        self.a = arr

    @classmethod
    def from_canonical(cls, values) -> "FieldTensor":
        """From the six components f12, f13, f14, f23, f24, f34."""
        vals = list(values)
        exact = all(is_exact(v) for v in vals)
        zero = ZERO if exact else 0j
        m = [[zero] * 4 for _ in range(4)]
        for (a, b), v in zip(BIVECTOR_PAIRS, vals):
            v = to_exact(v) if exact else complex(v)
            m[a - 1][b - 1] = v
            m[b - 1][a - 1] = -v
        return cls(m)

    @property
    def exact(self) -> bool:
        return self.a.dtype == object

    def __getitem__(self, key):
        mu, nu = key
        return self.a[mu - 1, nu - 1]

    def canonical(self) -> list:
        return [self[a, b] for a, b in BIVECTOR_PAIRS]

    def is_zero(self, tol: float | None = None) -> bool:
        if self.exact and tol is None:
            return not any(self.a.flat)
        return float(np.max(np.abs(vector_to_float(self.a.flatten())))) <= (tol or 0.0)

    def __eq__(self, other):
        if not isinstance(other, FieldTensor):
            return NotImplemented
        return bool(np.all(self.a == other.a))

    __hash__ = None

    def __repr__(self):
        return f"FieldTensor({self.canonical()})"


@dataclass
class Psi10:
    components: np.ndarray
    scale: Fraction | float | None = None

    @property
    def exact(self) -> bool:
        return self.components.dtype == object

    def vector_part(self) -> np.ndarray:
        return self.components[:4]

    def bivector_block(self) -> FieldTensor:
        return FieldTensor.from_canonical(self.components[4:])

    def is_zero(self, tol: float | None = None) -> bool:
        return vector_is_zero(self.components, tol)


def _as_components(psi) -> np.ndarray:
    if isinstance(psi, Psi10):
        return psi.components
    if isinstance(psi, np.ndarray):
        return psi
    return make_vector(psi)


def pack_wavefunction(f: FieldTensor, p: FourMomentum, freq_sign: int, scale,
                      sign: int = PACKING_SIGN) -> Psi10:
    """psi_[mu nu] = f_{mu nu};  psi_mu = sign (1/scale) (pm i p_nu) f_{mu nu}."""
    if not scale > 0:
        raise PreconditionError(f"packing scale must be positive, got {scale}")
    exact = f.exact and p.exact and is_exact(scale)
    comps = p.components
    out = []
    for mu in SPACETIME:
        acc = ZERO if exact else 0j
        for nu in SPACETIME:
            acc = acc + comps[nu - 1] * f[mu, nu]
        if exact:
            out.append(acc * I * (freq_sign * sign) / to_exact(scale))
        else:
            out.append(complex(acc) * 1j * freq_sign * sign / float(scale))
    out.extend(f.canonical())
    return Psi10(make_vector(out), scale)


def component_residual(f: FieldTensor, p: FourMomentum, freq_sign: int, params) -> FieldTensor:
    """Tensor equation with d -> pm i p; the frequency sign drops out (two derivatives)."""
    comps = p.components
    exact = f.exact and p.exact and params.exact
    zero = ZERO if exact else 0j
    pF = []
    for beta in SPACETIME:
        acc = zero
        for mu in SPACETIME:
            acc = acc + comps[mu - 1] * f[mu, beta]
        pF.append(acc)
    p2 = p.p_squared
    diag = (params.A - 1) / 2 * p2
    if params.branch == "massive":
        diag = diag + params.B / 2 * params.m ** 2
    if exact:
        diag = to_exact(diag)
    res = [[zero] * 4 for _ in range(4)]
    for a, b in itertools.product(SPACETIME, repeat=2):
        if a == b:
            continue
        res[a - 1][b - 1] = (-(comps[a - 1] * pF[b - 1]) + comps[b - 1] * pF[a - 1]
                             - f[a, b] * diag)
    return FieldTensor(res)


def matrix_residual(psi, p: FourMomentum, freq_sign: int, params) -> Psi10:
    """Lambda_pm(p) psi for the branch of ``params``."""
    v = _as_components(psi)
    return Psi10(equation_matrix(p, params, freq_sign) @ v, params.scale)


def residual_map(res: FieldTensor, scale) -> Psi10:
    """Image of a tensor residual under the linear map to the matrix residual.

    Vector rows vanish identically after packing; bivector rows equal
    -(1/scale) times the tensor residual.
    """
    exact = res.exact and is_exact(scale)
    vals = [ZERO if exact else 0j] * 4
    for v in res.canonical():
        vals.append(-v / to_exact(scale) if exact else -complex(v) / float(scale))
    return Psi10(make_vector(vals), scale)


_ETA_DIAG = None


def _eta_diag() -> np.ndarray:
    global _ETA_DIAG
    if _ETA_DIAG is None:
        eta = representation().eta
        _ETA_DIAG = np.array([eta.a[i, i] for i in range(10)], dtype=object)
    return _ETA_DIAG


def bar_covector(psi) -> np.ndarray:
    """Psi_bar = Psi^dagger eta, as a row covector."""
    v = _as_components(psi)
    c = conj_vector(v)
    if v.dtype == object:
        return c * _eta_diag()
    return c * vector_to_float(_eta_diag())


def invariant(psi):
    """Psi_bar Psi."""
    v = _as_components(psi)
    return bar_covector(v) @ v


# --- plane-wave modes ------------------------------------------------------

@dataclass(frozen=True)
class PlaneWaveMode:
    amplitude: Union[Psi10, FieldTensor, np.ndarray]
    momentum: FourMomentum
    freq_sign: int = 1

    def psi(self, params) -> np.ndarray:
        if isinstance(self.amplitude, FieldTensor):
            return pack_wavefunction(self.amplitude, self.momentum, self.freq_sign,
                                     params.scale).components
        return _as_components(self.amplitude)


def _net_wave_vector(pj: FourMomentum, sj: int, pk: FourMomentum, sk: int) -> tuple:
    """q = s_k p_k - s_j p_j as (q1, q2, q3, q0)."""
    return tuple(sk * x - sj * y for x, y in zip(
        (*pk.spatial, pk.p0), (*pj.spatial, pj.p0)))


def _euclid(q: tuple, exact: bool) -> tuple:
    if exact:
        return tuple(to_exact(x) for x in q[:3]) + (I * q[3],)
    return tuple(complex(x) for x in q[:3]) + (1j * float(q[3]),)


def _phase(q: tuple, x) -> complex | int:
    if x is None or not any(q):
        return 1
    x1, x2, x3, t = x
    return cmath.exp(1j * (float(q[0]) * x1 + float(q[1]) * x2 + float(q[2]) * x3
                           - float(q[3]) * t))


@dataclass
class _Pair:
    j: int
    k: int
    q: tuple
    a: tuple  # Psi_bar_j derivative factor: d -> i a
    b: tuple  # Psi_k derivative factor: d -> i b
    bar: np.ndarray
    psi: np.ndarray
    psi_j: np.ndarray
    exact: bool


def _pairs(modes: Sequence[PlaneWaveMode], params) -> list[_Pair]:
    psis = [m.psi(params) for m in modes]
    exact = params.exact and all(m.momentum.exact for m in modes) and all(
        v.dtype == object for v in psis)
    if not exact:
        psis = [vector_to_float(v) for v in psis]
    bars = [bar_covector(v) for v in psis]
    comps = [m.momentum.components for m in modes]
    if not exact:
        comps = [tuple(complex(c) for c in cs) for cs in comps]
    out = []
    for j, mj in enumerate(modes):
        for k, mk in enumerate(modes):
            a = tuple(-mj.freq_sign * c for c in comps[j])
            b = tuple(mk.freq_sign * c for c in comps[k])
            q = _net_wave_vector(mj.momentum, mj.freq_sign, mk.momentum, mk.freq_sign)
            out.append(_Pair(j, k, q, a, b, bars[j], psis[k], psis[j], exact))
    return out


class _Bilinears:
    """Psi_bar_j M Psi_k for the handful of matrices the densities need."""

    def __init__(self, pair: _Pair):
        rep = representation()
        mats = {"pbar": rep.p_bar, "p": rep.p}
        for mu in SPACETIME:
            mats[mu] = rep.b(mu)
        self.v = {}
        for key, M in mats.items():
            self.v[key] = pair.bar @ (M @ pair.psi)

    def __getitem__(self, key):
        return self.v[key]


def _num(x, exact):
    return to_exact(x) if exact else complex(x)


def _lagrangian_block(pr: _Pair, params, bl: _Bilinears):
    ex = pr.exact
    i = I if ex else 1j
    half = _num(Fraction(1, 2), ex)
    g = _num(params.grad_coeff, ex)
    scale = _num(params.scale, ex)
    Bh = _num(Fraction(params.mass_term_B) / 2 if ex else params.mass_term_B / 2, ex)
    ab = sum((x * y for x, y in zip(pr.a, pr.b)), ZERO if ex else 0j)
    out = ZERO if ex else 0j
    for mu in SPACETIME:
        out = out + i * half * (pr.a[mu - 1] - pr.b[mu - 1]) * bl[mu]
    out = out - scale * (bl["pbar"] + Bh * bl["p"]) - g * ab * bl["p"]
    return out


def _current_block(pr: _Pair, params, bl: _Bilinears, form: str):
    ex = pr.exact
    i = I if ex else 1j
    g = _num(params.grad_coeff, ex)
    second = g if form == "literal" else g * i
    return [i * bl[mu] + second * i * (pr.b[mu - 1] - pr.a[mu - 1]) * bl["p"]
            for mu in SPACETIME]


def _emt_block(pr: _Pair, params, bl: _Bilinears, form: str, L):
    ex = pr.exact
    i = I if ex else 1j
    half = _num(Fraction(1, 2), ex)
    g = _num(params.grad_coeff, ex)
    a, b = pr.a, pr.b
    T = []
    for mu in SPACETIME:
        row = []
        for nu in SPACETIME:
            val = i * half * (a[nu - 1] - b[nu - 1]) * bl[mu]
            if form == "literal":
                second = a[mu - 1] * a[nu - 1] + b[mu - 1] * b[nu - 1]
            else:
                second = a[mu - 1] * b[nu - 1] + a[nu - 1] * b[mu - 1]
            val = val - g * second * bl["p"]
            if mu == nu:
                val = val - L
            row.append(val)
        T.append(row)
    return T


def _check_form(form):
    if form not in CURRENT_FORMS:
        raise ValueError(f"unknown form {form!r}; choose from {CURRENT_FORMS}")


def lagrangian_blocks(modes, params) -> list[tuple[int, int, tuple, object]]:
    return [(pr.j, pr.k, pr.q, _lagrangian_block(pr, params, _Bilinears(pr)))
            for pr in _pairs(modes, params)]


def current_blocks(modes, params, form: str = "canonical"):
    _check_form(form)
    return [(pr.j, pr.k, pr.q, _current_block(pr, params, _Bilinears(pr), form))
            for pr in _pairs(modes, params)]


def energy_momentum_blocks(modes, params, form: str = "canonical"):
    _check_form(form)
    out = []
    for pr in _pairs(modes, params):
        bl = _Bilinears(pr)
        L = _lagrangian_block(pr, params, bl)
        out.append((pr.j, pr.k, pr.q, _emt_block(pr, params, bl, form, L)))
    return out


def _assemble(blocks, x, shape_fn):
    exact_origin = x is None
    total = None
    for _, _, q, val in blocks:
        ph = _phase(q, x)
        term = shape_fn(val, ph, exact_origin)
        total = term if total is None else _add(total, term)
    return total


def _add(u, v):
    if isinstance(u, list):
        return [_add(x, y) for x, y in zip(u, v)]
    return u + v


def _scale_by(val, ph, exact_origin):
    if isinstance(val, list):
        return [_scale_by(v, ph, exact_origin) for v in val]
    if exact_origin:
        return val
    return complex(val) * ph


def lagrangian_matrix_form(modes, params, x=None):
    """Lagrangian density of the PDK form at spacetime point x = (x1, x2, x3, t).

    With ``x=None`` the phases are 1 and the value stays exact.
    """
    if not modes:
        return 0
    return _assemble(lagrangian_blocks(modes, params), x, _scale_by)


def _pc_conj(v: np.ndarray) -> np.ndarray:
    """Component conjugate that leaves the metric i alone: (-1)^{#4} conj."""
    c = conj_vector(v)
    signs = [-1 if _has_time_index(idx) else 1 for idx in CANONICAL_INDICES]
    return np.array([s * x for s, x in zip(signs, c)], dtype=c.dtype)


def _has_time_index(idx) -> bool:
    if isinstance(idx, Bivector):
        return 4 in (idx.mu, idx.nu)
    return idx.mu == 4


def _comp(v: np.ndarray, idx) -> object:
    """Signed component access; [mu mu] is zero."""
    if isinstance(idx, Bivector) and idx.degenerate:
        return 0
    pos, sign = canonical_position(idx)
    return v[pos - 1] * sign


def _component_half(u, du, v, dv, params, ex):
    """One bracket of the component Lagrangian; u is the starred field."""
    zero = ZERO if ex else 0j
    i = I if ex else 1j
    half = _num(Fraction(1, 2), ex)
    m = _num(params.scale, ex)
    mB2 = _num(Fraction(params.scale) * params.mass_term_B / 2 if ex
               else params.scale * params.mass_term_B / 2, ex)
    g = _num(params.grad_coeff, ex)
    dudv = sum((x * y for x, y in zip(du, dv)), zero)
    acc = zero
    for rho, mu in itertools.product(SPACETIME, repeat=2):
        ub, vb = _comp(u, Bivector(rho, mu)), _comp(v, Bivector(rho, mu))
        acc = acc + ub * (i * dv[mu - 1]) * v[rho - 1]
        acc = acc - u[rho - 1] * (i * dv[mu - 1]) * vb
        if rho < mu:
            # quadratic bivector terms: each independent component once
            acc = acc + mB2 * ub * vb
            # -g (d u)(d v) with d u -> i du, d v -> i dv
            acc = acc + g * dudv * ub * vb
    for mu in SPACETIME:
        acc = acc - m * u[mu - 1] * v[mu - 1]
    return half * acc


def lagrangian_component_blocks(modes, params):
    out = []
    for pr in _pairs(modes, params):
        u = _pc_conj(pr.psi_j)
        X = _component_half(u, pr.a, pr.psi, pr.b, params, pr.exact)
        Y = _component_half(pr.psi, pr.b, u, pr.a, params, pr.exact)
        out.append((pr.j, pr.k, pr.q, X + Y))
    return out


def lagrangian_component_form(modes, params, x=None):
    """Same density summed over explicit components, with the (-1)^{#4} conj convention."""
    if not modes:
        return 0
    return _assemble(lagrangian_component_blocks(modes, params), x, _scale_by)


def current_density(modes, params, x=None, form: str = "canonical"):
    """j_mu from the Noether prescription applied to the PDK Lagrangian.

    ``form="canonical"`` carries the factor i on the P term as obtained from
    the Lagrangian; ``form="literal"`` omits it (agrees only at A = 1).
    """
    if not modes:
        return [0, 0, 0, 0]
    return _assemble(current_blocks(modes, params, form), x, _scale_by)


def energy_momentum_density(modes, params, x=None, form: str = "canonical"):
    """T_{mu nu}; ``literal`` uses second derivatives on one field per term."""
    if not modes:
        return [[0] * 4 for _ in range(4)]
    return _assemble(energy_momentum_blocks(modes, params, form), x, _scale_by)


# --- conservation ----------------------------------------------------------

def _mode_is_solution(mode: PlaneWaveMode, params) -> bool:
    r = matrix_residual(mode.psi(params), mode.momentum, mode.freq_sign, params)
    if r.exact:
        return r.is_zero()
    v = vector_to_float(mode.psi(params))
    return r.is_zero(tol=1e-9 * max(1.0, float(np.max(np.abs(v)))) * max(1.0, float(abs(mode.momentum.p0))))


def conservation_residual(modes, params, which: str = "current", form: str = "canonical") -> float:
    """Largest relative momentum-space divergence over all mode pairs.

    For each pair the divergence is q_mu X_mu (current) or q_mu X_{mu nu}
    (energy-momentum, each nu), divided by max(1, sum |q_mu X_mu|).
    Exactly 0.0 on exact inputs when conservation holds.
    """
    if which not in ("current", "energy-momentum"):
        raise ValueError(f"unknown observable {which!r}")
    for n, mode in enumerate(modes):
        if not _mode_is_solution(mode, params):
            raise PreconditionError(f"mode {n} is off-shell (Lambda Psi != 0)")
    worst = 0.0
    if which == "current":
        blocks = [(q, [val]) for _, _, q, val in current_blocks(modes, params, form)]
    else:
        blocks = [(q, [[T[mu][nu] for mu in range(4)] for nu in range(4)])
                  for _, _, q, T in energy_momentum_blocks(modes, params, form)]
    for q, columns in blocks:
        exact = all(isinstance(x, CRational) for col in columns for x in col)
        qe = _euclid(q, exact and all(isinstance(x, Fraction) for x in q))
        for col in columns:
            div = sum((qm * xm for qm, xm in zip(qe, col)), ZERO if exact else 0j)
            if exact and isinstance(div, CRational) and not div:
                continue
            norm = sum(abs(complex(qm)) * abs(complex(xm)) for qm, xm in zip(qe, col))
            worst = max(worst, abs(complex(div)) / max(1.0, norm))
    return worst


# --- mode helpers ------------------------------------------------------------

def solution_basis(p: FourMomentum, params, freq_sign: int = 1) -> list[np.ndarray]:
    """Kernel of Lambda_pm(p): the amplitudes of plane-wave solutions."""
    return equation_matrix(p, params, freq_sign).nullspace()


def spin_mode(p: FourMomentum, params: ModelParams, freq_sign: int, s: int) -> PlaneWaveMode:
    from .momentum_kernel import dyad_factor
    col, _ = dyad_factor(p, params, freq_sign, s)
    return PlaneWaveMode(col, p, freq_sign)
