"""Momentum-space operator of the generalized equation and its spectral data.

Metric is Euclidean: p_mu = (p1, p2, p3, i*p0), p^2 = |p|^2 - p0^2, and a
physical mass shell reads p^2 = -M^2.  Frequency signs are the integers +1
and -1 (plane wave exp(+-ipx)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dkp_matrices import representation
from .errors import ConsistencyError, PreconditionError
from .exact import (
    ONE,
    I,
    Mat10,
    is_exact,
    rational_sqrt,
    sqrt_value,
    to_exact,
)
from .index_algebra import SPACETIME, biv, epsilon_term, vec

FLOAT_SHELL_RTOL = 1e-10
DEGENERACY_RTOL = 1e-12

MINIMAL_CASES = ("offshell-massive", "onshell-nondegenerate", "onshell-degenerate", "massless")


def _q(x):
    """Keep exact inputs as Fraction, everything else as float."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if type(x).__name__ == "mpq":
        return Fraction(int(x.numerator), int(x.denominator))
    return float(x)


@dataclass(frozen=True)
class FourMomentum:
    p1: Fraction | float
    p2: Fraction | float
    p3: Fraction | float
    p0: Fraction | float

    def __post_init__(self):
        for name in ("p1", "p2", "p3", "p0"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    @classmethod
    def from_spatial(cls, spatial, p0) -> "FourMomentum":
        return cls(*spatial, p0)

    @property
    def spatial(self) -> tuple:
        return (self.p1, self.p2, self.p3)

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in (self.p1, self.p2, self.p3, self.p0))

    @property
    def p4(self):
        return I * self.p0 if self.exact else 1j * self.p0

    @property
    def components(self) -> tuple:
        """(p1, p2, p3, i*p0) on this momentum's backend."""
        if self.exact:
            return tuple(to_exact(x) for x in self.spatial) + (self.p4,)
        return tuple(complex(x) for x in self.spatial) + (self.p4,)

    @property
    def spatial_squared(self):
        return self.p1 ** 2 + self.p2 ** 2 + self.p3 ** 2

    @property
    def p_squared(self):
        return self.spatial_squared - self.p0 ** 2

    def scaled(self, t) -> "FourMomentum":
        return FourMomentum(self.p1 * t, self.p2 * t, self.p3 * t, self.p0 * t)

    def reflected(self) -> "FourMomentum":
        """Same energy, opposite three-momentum."""
        return FourMomentum(-self.p1, -self.p2, -self.p3, self.p0)

    def is_zero(self) -> bool:
        return not any((self.p1, self.p2, self.p3, self.p0))


@dataclass(frozen=True)
class ModelParams:
    """Massive branch: dimensionless A, B and mass parameter m > 0."""

    A: Fraction | float
    B: Fraction | float
    m: Fraction | float

    branch = "massive"

    def __post_init__(self):
        for name in ("A", "B", "m"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if not self.m > 0:
            raise PreconditionError(f"massive branch needs m > 0, got m={self.m} "
                                    "(use MasslessParams for m = 0)")

    @property
    def scale(self):
        return self.m

    @property
    def grad_coeff(self):
        """Coefficient g of (d Psi_bar) P (d Psi) in the Lagrangian: (1-A)/(2m)."""
        return (1 - self.A) / (2 * self.m)

    @property
    def mass_term_B(self):
        return self.B

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in (self.A, self.B, self.m))

    def lam(self, p_squared):
        return (self.A - 1) / (2 * self.m) * p_squared + self.B / 2 * self.m


@dataclass(frozen=True)
class MasslessParams:
    """Massless branch: mass scale kappa > 0 and the coefficient C.

    The bivector row carries (C/kappa) d^2, which reproduces the massless
    tensor equation when C = (1 - A)/2; see :meth:`from_A`.
    """

    kappa: Fraction | float
    C: Fraction | float

    branch = "massless"

    def __post_init__(self):
        for name in ("kappa", "C"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if not self.kappa > 0:
            raise PreconditionError(f"massless branch needs kappa > 0, got {self.kappa}")

    @classmethod
    def from_A(cls, A, kappa) -> "MasslessParams":
        return cls(kappa=kappa, C=(1 - _q(A)) / 2)

    @property
    def A(self):
        return 1 - 2 * self.C

    @property
    def B(self):
        return 0

    @property
    def m(self):
        return self.kappa

    @property
    def scale(self):
        return self.kappa

    @property
    def grad_coeff(self):
        return self.C / self.kappa

    @property
    def mass_term_B(self):
        return 0

    @property
    def exact(self) -> bool:
        return isinstance(self.kappa, Fraction) and isinstance(self.C, Fraction)

    def lam(self, p_squared):
        return -self.C / self.kappa * p_squared


@dataclass(frozen=True)
class SpectrumResult:
    M: Fraction | float | None
    M_prime: Fraction | float | None
    M_squared: Fraction | float | None
    M_prime_squared: Fraction | float | None
    primary_ok: bool
    secondary_ok: bool


# --- basic building blocks -------------------------------------------------

def _backend_exact(p: FourMomentum, params) -> bool:
    return p.exact and params.exact


def p_hat(p: FourMomentum) -> Mat10:
    """beta_mu p_mu with p_4 = i p0."""
    rep = representation()
    out = Mat10.zeros(exact=p.exact)
    for beta, comp in zip(rep.beta, p.components):
        if comp:
            out = out + beta * comp
    return out


def lambda_param(p_squared, params):
    """((A-1)/(2m)) p^2 + (B/2) m; for the massless branch -(C/kappa) p^2."""
    if isinstance(params, ModelParams) and params.m == 0:
        raise PreconditionError("lambda needs m != 0")
    return params.lam(_q(p_squared))


def _scalar_eq(a, b, ref) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(a - b) <= DEGENERACY_RTOL * max(abs(ref), 1e-300)


def equation_matrix(p: FourMomentum, params, freq_sign: int = 1) -> Mat10:
    """Lambda_pm = pm i p_hat + scale P_bar + lambda(p^2) P."""
    _check_sign(freq_sign)
    rep = representation()
    lam = params.lam(p.p_squared)
    ip = p_hat(p) * (I * freq_sign if p.exact else 1j * freq_sign)
    return ip + rep.p_bar * params.scale + rep.p * lam


def _check_sign(freq_sign):
    if freq_sign not in (1, -1):
        raise ValueError(f"frequency sign must be +1 or -1, got {freq_sign!r}")


def is_on_shell(p: FourMomentum, params) -> bool:
    """p^2 + lambda m = 0 (massive) or lambda = 0 at p^2 = 0 (massless)."""
    if isinstance(params, MasslessParams):
        lhs = p.p_squared
    else:
        lhs = p.p_squared + params.lam(p.p_squared) * params.m
    if isinstance(lhs, Fraction) and params.exact:
        return lhs == 0
    scale = max(1.0, float(p.p0) ** 2, float(p.spatial_squared))
    return abs(lhs) <= FLOAT_SHELL_RTOL * scale


def is_secondary_shell(p: FourMomentum, params) -> bool:
    """The lambda = 0 branch (mass M')."""
    lam = params.lam(p.p_squared)
    if isinstance(lam, Fraction):
        return lam == 0
    return abs(lam) <= FLOAT_SHELL_RTOL * max(1.0, float(params.scale))


# --- off-shell operator identities ---------------------------------------

def quadratic_identity_residual(p, params, freq_sign=1) -> Mat10:
    """Lambda^2 + p_hat^2 - (m+lambda) Lambda + lambda m."""
    L = equation_matrix(p, params, freq_sign)
    ph = p_hat(p)
    m, lam = params.scale, params.lam(p.p_squared)
    one = Mat10.identity(L.exact)
    return L @ L + ph @ ph - L * (m + lam) + one * (lam * m)


def cubic_identity_residual(p, params, freq_sign=1) -> Mat10:
    """Lambda^3 - (m+lambda)Lambda^2 + lambda m Lambda minus its closed form."""
    rep = representation()
    L = equation_matrix(p, params, freq_sign)
    ph = p_hat(p)
    ph2 = ph @ ph
    m, lam = params.scale, params.lam(p.p_squared)
    L2 = L @ L
    lhs = L2 @ L - L2 * (m + lam) + L * (lam * m)
    i = I if L.exact else 1j
    rhs = ph * (-freq_sign * i * p.p_squared) - ph2 @ rep.p_bar * m - ph2 @ rep.p * lam
    return lhs - rhs


def phat_cube_residual(p: FourMomentum) -> Mat10:
    ph = p_hat(p)
    return ph @ ph @ ph - ph * p.p_squared


def phat_square_blocks(p: FourMomentum) -> tuple[Mat10, Mat10]:
    """Closed forms of p_hat^2 P_bar and p_hat^2 P summed from matrix units."""
    comps = dict(zip(SPACETIME, p.components))
    pbar_block = Mat10.zeros(p.exact)
    p_block = Mat10.zeros(p.exact)
    for mu in SPACETIME:
        pbar_block = pbar_block + epsilon_term(vec(mu), vec(mu)) * p.p_squared
        for nu in SPACETIME:
            c = comps[mu] * comps[nu]
            if not c:
                continue
            pbar_block = pbar_block - epsilon_term(vec(nu), vec(mu)) * c
            for lam in SPACETIME:
                p_block = p_block + epsilon_term(biv(lam, mu), biv(lam, nu)) * c
    return pbar_block, p_block


def phat_square_block_residuals(p: FourMomentum) -> list[Mat10]:
    rep = representation()
    ph = p_hat(p)
    ph2 = ph @ ph
    pbar_block, p_block = phat_square_blocks(p)
    return [ph2 @ rep.p_bar - pbar_block, rep.p_bar @ ph2 - pbar_block,
            ph2 @ rep.p - p_block, rep.p @ ph2 - p_block]


# --- minimal polynomials ----------------------------------------------------

def minimal_residual(p: FourMomentum, params, case: str, freq_sign: int = 1) -> Mat10:
    """Evaluate the minimal polynomial appropriate to ``case``; zero if it holds."""
    if case not in MINIMAL_CASES:
        raise ValueError(f"unknown case {case!r}; choose from {MINIMAL_CASES}")
    L = equation_matrix(p, params, freq_sign)
    one = Mat10.identity(L.exact)
    m = params.scale
    lam = params.lam(p.p_squared)

    if case == "massless":
        if not isinstance(params, MasslessParams):
            raise PreconditionError("massless case needs MasslessParams")
        if not _scalar_eq(lam, 0, params.kappa):
            raise PreconditionError("massless minimal polynomial needs lambda = 0 "
                                    "(p lightlike, or C = 0)")
        X = L @ (L - one * m)
        return X @ (X + one * p.p_squared)

    if not isinstance(params, ModelParams):
        raise PreconditionError(f"case {case!r} needs massive ModelParams")
    if case == "offshell-massive":
        X = (L - one * m) @ (L - one * lam)
        return X @ (X + one * p.p_squared)
    if not is_on_shell(p, params):
        raise PreconditionError(f"case {case!r} needs p on the mass shell p^2 + lambda m = 0")
    if case == "onshell-nondegenerate":
        if _scalar_eq(lam, 0, m) or _scalar_eq(lam, m, m):
            raise PreconditionError("onshell-nondegenerate needs lambda not in {0, m}")
        return L @ (L - one * (lam + m)) @ (L - one * m) @ (L - one * lam)
    if not _scalar_eq(lam, m, m):
        raise PreconditionError("onshell-degenerate needs lambda = m")
    return L @ (L - one * m) @ (L - one * (2 * m))


# --- spectrum ---------------------------------------------------------------

def mass_spectrum(params: ModelParams) -> SpectrumResult:
    """Physical masses M (lambda != 0) and M' (lambda = 0) with validity flags."""
    A, B, m = params.A, params.B, params.m
    M = M2 = Mp = Mp2 = None
    primary_ok = A != -1 and B / (A + 1) >= 0
    secondary_ok = A != 1 and B / (A - 1) >= 0
    if primary_ok:
        M2 = m * m * B / (A + 1)
        M = sqrt_value(M2)
    if secondary_ok:
        Mp2 = m * m * B / (A - 1)
        Mp = sqrt_value(Mp2)
    return SpectrumResult(M, Mp, M2, Mp2, primary_ok, secondary_ok)


def onshell_energy(p_spatial, M):
    """p0 = sqrt(|p|^2 + M^2); exact when that is a rational square."""
    if M < 0:
        raise PreconditionError("mass must be non-negative")
    return onshell_energy_from_square(p_spatial, _q(M) ** 2)


def onshell_energy_from_square(p_spatial, M_squared):
    s = sum(_q(x) ** 2 for x in p_spatial) + _q(M_squared)
    return sqrt_value(s)


def onshell_momentum(p_spatial, params: ModelParams, branch: str = "primary") -> FourMomentum:
    """Momentum on the M (primary) or M' (secondary) shell for given three-momentum."""
    spec = mass_spectrum(params)
    M2 = spec.M_squared if branch == "primary" else spec.M_prime_squared
    if M2 is None:
        raise PreconditionError(f"{branch} mass branch is not realized for A={params.A}, B={params.B}")
    return FourMomentum(*p_spatial, onshell_energy_from_square(p_spatial, M2))


# --- projectors -------------------------------------------------------------

def _require_massive_onshell(p, params):
    if not isinstance(params, ModelParams):
        raise PreconditionError("projectors exist only on the massive branch")
    if not is_on_shell(p, params):
        raise PreconditionError("p is off-shell: p^2 + lambda m != 0")


def mass_projector(p: FourMomentum, params: ModelParams, freq_sign: int = 1,
                   form: str = "auto") -> Mat10:
    """Projector onto the solutions of Lambda_pm Psi = 0.

    ``form``: ``auto`` picks the cubic form for lambda != m and the PDK form
    for lambda == m; ``cubic`` and ``explicit`` force the normalized cubic
    polynomial and its expanded p_hat form; ``pdk`` forces the lambda == m form.
    """
    _check_sign(freq_sign)
    _require_massive_onshell(p, params)
    m, lam = params.m, params.lam(p.p_squared)
    if _scalar_eq(lam, 0, m):
        raise PreconditionError("degenerate spectrum: lambda = 0")
    if _scalar_eq(lam, -m, m):
        raise PreconditionError("degenerate spectrum: lambda + m = 0")
    degenerate = _scalar_eq(lam, m, m)
    if form == "auto":
        form = "pdk" if degenerate else "cubic"

    L = equation_matrix(p, params, freq_sign)
    exact = L.exact
    one = Mat10.identity(exact)
    i = I if exact else 1j
    if form == "cubic":
        N = -ONE / to_exact(lam * m * (lam + m)) if exact else -1.0 / (lam * m * (lam + m))
        return (L - one * (lam + m)) @ (L - one * m) @ (L - one * lam) * N
    if form == "explicit":
        rep = representation()
        N = -ONE / to_exact(lam * m * (lam + m)) if exact else -1.0 / (lam * m * (lam + m))
        ph = p_hat(p)
        s = freq_sign
        inner = ph @ rep.p * (s * i * m) + ph @ rep.p_bar * (s * i * lam) - one * (lam * m)
        return ph @ inner * (-s * N * i)
    if form == "pdk":
        if not degenerate:
            raise PreconditionError("pdk form needs lambda = m")
        sip = p_hat(p) * (freq_sign * i)
        return sip @ (sip - one * m) / (2 * m * m)
    raise ValueError(f"unknown projector form {form!r}")


# --- spin -------------------------------------------------------------------

def _levi_civita3(a, b, c) -> int:
    return (a - b) * (b - c) * (c - a) // 2


def spin_operator(p_spatial) -> Mat10:
    """sigma_p = -(i/|p|) eps_abc p_a beta_b beta_c."""
    comps = [_q(x) for x in p_spatial]
    if not any(comps):
        raise PreconditionError("spin operator needs a nonzero three-momentum")
    exact = all(isinstance(x, Fraction) for x in comps)
    norm2 = sum(x * x for x in comps)
    if exact:
        norm = rational_sqrt(norm2)
        if norm is None:
            raise PreconditionError(f"|p|^2 = {norm2} has no rational root; "
                                    "use float components for irrational |p|")
        pref = -I / to_exact(norm)
    else:
        pref = -1j / math.sqrt(norm2)
    rep = representation()
    out = Mat10.zeros(exact)
    for a in (1, 2, 3):
        if not comps[a - 1]:
            continue
        for b in (1, 2, 3):
            for c in (1, 2, 3):
                e = _levi_civita3(a, b, c)
                if e:
                    out = out + rep.b(b) @ rep.b(c) * (e * comps[a - 1])
    return out * pref


def spin_projector(p_spatial, s: int) -> Mat10:
    if s not in (-1, 0, 1):
        raise ValueError(f"spin projection must be -1, 0 or +1, got {s}")
    sig = spin_operator(p_spatial)
    one = Mat10.identity(sig.exact)
    if s == 0:
        return one - sig @ sig
    return sig @ (sig + one * s) * Fraction(1, 2)


# --- dyads and normalization -----------------------------------------------

def dyad_matrix(p, params, freq_sign, s) -> Mat10:
    return mass_projector(p, params, freq_sign) @ spin_projector(p.spatial, s)


def dyad_factor(p: FourMomentum, params: ModelParams, freq_sign: int, s: int):
    """Factor Pi S_(s) = column . row with Lambda column = 0.

    The column is the first nonzero column of the dyad; the row is the
    matching row scaled so that the outer product reproduces the dyad.
    """
    D = dyad_matrix(p, params, freq_sign, s)
    tol = None if D.exact else 1e-9 * max(1.0, D.max_abs())
    if D.rank(tol=tol or 1e-9) != 1:
        raise ConsistencyError(f"Pi S_({s}) has rank {D.rank()} instead of 1")
    if not (D @ D - D).is_zero(tol):
        raise ConsistencyError(f"Pi S_({s}) is not idempotent")
    absval = [[abs(complex(x)) for x in row] for row in D.a]
    k, j = max(((r, c) for r in range(10) for c in range(10)), key=lambda rc: absval[rc[0]][rc[1]])
    col = D.a[:, j].copy()
    row = D.a[k, :] / D.a[k, j]
    if D.exact:
        row = row.astype(object)
    return col, row


def normalization_trace(p: FourMomentum, params: ModelParams, freq_sign: int, s: int):
    """((m+lambda)/(2 p0)) tr(beta_4 Pi S_(s)); charge norm of one mode."""
    _require_massive_onshell(p, params)
    lam = params.lam(p.p_squared)
    D = dyad_matrix(p, params, freq_sign, s)
    tr = (representation().b(4) @ D).trace()
    w = (params.m + lam) / (2 * p.p0)
    if D.exact:
        return tr * to_exact(w)
    return complex(tr) * float(w)


def cross_charge_matrix(p: FourMomentum, params: ModelParams) -> Mat10:
    """Pi_+(p) beta_4 Pi_-(p~) with p~ the reflected momentum.

    Rows of Pi_+ span the bar-conjugate positive-frequency solutions and
    columns of Pi_- the negative-frequency ones whose plane waves overlap
    them, so this product vanishing is the cross normalization.
    """
    plus = mass_projector(p, params, 1)
    minus = mass_projector(p.reflected(), params, -1)
    return plus @ representation().b(4) @ minus


# --- massless ---------------------------------------------------------------

def massless_operator(p: FourMomentum, kappa, freq_sign: int = 1) -> Mat10:
    """pm i p_hat + kappa P_bar (the massless operator with the C term dropped)."""
    return equation_matrix(p, MasslessParams(kappa=kappa, C=0), freq_sign)


def massless_degeneracy_report(p: FourMomentum, kappa, freq_sign: int = 1) -> tuple[int, int]:
    """(dim ker Lambda, dim ker Lambda^2) at a lightlike momentum."""
    if p.is_zero():
        raise PreconditionError("massless degeneracy needs p != 0")
    ps = p.p_squared
    if (isinstance(ps, Fraction) and ps != 0) or (not isinstance(ps, Fraction)
                                                 and abs(ps) > FLOAT_SHELL_RTOL * max(1.0, float(p.p0) ** 2)):
        raise PreconditionError(f"massless degeneracy needs lightlike p, got p^2 = {ps}")
    L = massless_operator(p, kappa, freq_sign)
    return 10 - L.rank(), 10 - (L @ L).rank()
