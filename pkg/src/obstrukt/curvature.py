"""At-a-point Kahler tensor calculus from potential jets.

All quantities derive from the jet of the potential log H about the working
point through exact truncated-Taylor arithmetic:

    g_{a bbar}     = d_a dbar_b (log H)
    G              = det(g),   R_{a bbar} = -d_a dbar_b (log G)
    Gamma^c_{ab}   = g^{c nubar} d_a g_{b nubar}
    R_{m nbar a bbar} = d_m dbar_n g_{a bbar}
                        - g^{c dbar} (dbar_n g_{c bbar})(d_m g_{a dbar})

Index conventions: for a Hermitian matrix M[i, j] = T_{i jbar}, the inverse
metric entries are g^{i jbar} = (M^-1)[j, i], so the Ricci endomorphism
R_a{}^b = R_{a cbar} g^{b cbar} is the plain matrix product Ric @ inv(g), and
the raised Ricci of the Lichnerowicz operator is
R^{a bbar} = (inv(g) @ Ric @ inv(g)).T.

Covariant derivatives of tensors with lower holomorphic ('h') and lower
antiholomorphic ('a') slots use the pure Christoffel symbols only (the mixed
ones vanish on a Kahler manifold): nabla_c corrects 'h' slots, nabla_cbar
corrects 'a' slots with the conjugate symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .charts import KahlerChart
from .errors import DegenerateMetricError, PreconditionError
from .jets import ComplexJet, Jet, jet_log, jet_reciprocal

_HERM_TOL = 1e-10


def _det_jet(entries):
    """Determinant of a small matrix of ComplexJets (n <= 3)."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    if n == 2:
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    if n == 3:
        a = entries
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    raise NotImplementedError("determinants implemented for n <= 3")


def _inv_jet(entries, det=None):
    """Inverse of a small matrix of ComplexJets via the adjugate."""
    n = len(entries)
    det = det if det is not None else _det_jet(entries)
    rdet = ComplexJet(jet_reciprocal(det.as_real()), det.im * 0.0)
    if n == 1:
        return [[rdet]]
    if n == 2:
        a = entries
        return [
            [a[1][1] * rdet, -a[0][1] * rdet],
            [-a[1][0] * rdet, a[0][0] * rdet],
        ]
    a = entries
    cof = [[None] * 3 for _ in range(3)]
    idx = ((1, 2), (0, 2), (0, 1))
    for i in range(3):
        for j in range(3):
            r, c = idx[i], idx[j]
            m = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
            cof[j][i] = m * ((-1.0) ** (i + j)) * rdet  # adjugate transpose
    return cof


class ChartJets:
    """Cached jet pipeline for one (chart, point, order)."""

    def __init__(self, chart: KahlerChart, z, order: int):
        if order < 2:
            raise PreconditionError("chart jets need order >= 2")
        self.chart = chart
        self.z = np.atleast_1d(np.asarray(z, dtype=complex))
        self.n = chart.dim
        self.order = order

    @cached_property
    def pot(self) -> Jet:
        return self.chart.potential_jet(self.z, self.order)

    @cached_property
    def cpot(self) -> ComplexJet:
        return ComplexJet.from_real(self.pot)

    @cached_property
    def g(self):
        """g_{a bbar} jets, order-2 below the potential."""
        n = self.n
        return [[self.cpot.d(a).dbar(b) for b in range(n)] for a in range(n)]

    @cached_property
    def g_mat(self):
        m = np.array([[e.value for e in row] for row in self.g])
        try:
            np.linalg.cholesky(m)
        except np.linalg.LinAlgError:
            raise DegenerateMetricError(
                f"{self.chart.label}: Levi form not positive definite at {self.z}"
            )
        return m

    @cached_property
    def g_inv_mat(self):
        return np.linalg.inv(self.g_mat)

    @cached_property
    def det_g(self) -> ComplexJet:
        return _det_jet(self.g)

    @cached_property
    def log_det_g(self) -> Jet:
        return jet_log(self.det_g.as_real())

    @cached_property
    def g_inv(self):
        """Jets of the inverse matrix of (g_{a bbar}); entry [i][j] inverts M[i][j]."""
        return _inv_jet(self.g, det=self.det_g)

    def ginv_jet(self, hol, anti) -> ComplexJet:
        """Jet of g^{hol antibar} = (M^-1)[anti, hol]."""
        return self.g_inv[anti][hol]

    @cached_property
    def ricci(self):
        """R_{a bbar} jets (order-4 below the potential)."""
        n = self.n
        ld = ComplexJet.from_real(self.log_det_g)
        return [[-(ld.d(a).dbar(b)) for b in range(n)] for a in range(n)]

    @cached_property
    def ricci_mat(self):
        return np.array([[e.value for e in row] for row in self.ricci])

    @cached_property
    def scalar_jet(self) -> Jet:
        n = self.n
        out = None
        for a in range(n):
            for b in range(n):
                t = self.ginv_jet(a, b) * self.ricci[a][b]
                out = t if out is None else out + t
        return out.as_real()

    @cached_property
    def central_jet(self) -> Jet:
        det_ric = _det_jet(self.ricci)
        k = det_ric.order
        return (det_ric * ComplexJet.from_real(
            jet_reciprocal(self.det_g.as_real().truncate(k))
        )).as_real()

    @cached_property
    def lambda_jet(self) -> Jet:
        """Lambda = K_{a bbar} K^{a bbar} with K the trace-modified Ricci."""
        K = self.k_jets
        n = self.n
        out = None
        for a in range(n):
            for b in range(n):
                kup = None
                for mu in range(n):
                    for nu in range(n):
                        t = self.ginv_jet(a, mu) * self.ginv_jet(nu, b) * K[nu][mu]
                        kup = t if kup is None else kup + t
                term = K[a][b] * kup
                out = term if out is None else out + term
        return out.as_real()

    @cached_property
    def k_jets(self):
        """K_{a bbar} = (R_{a bbar} - R g_{a bbar} / (2(n+1))) / (n+2)."""
        n = self.n
        R = ComplexJet.from_real(self.scalar_jet)
        c = 1.0 / (2 * (n + 1))
        return [
            [
                (self.ricci[a][b] - R * self.g[a][b] * c) * (1.0 / (n + 2))
                for b in range(n)
            ]
            for a in range(n)
        ]

    @cached_property
    def christoffel(self):
        """Gamma^c_{ab} jets; index [a][b][c]."""
        n = self.n
        dg = [[[self.g[b][nu].d(a) for nu in range(n)] for b in range(n)]
              for a in range(n)]
        out = [[[None] * n for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    s = None
                    for nu in range(n):
                        t = self.ginv_jet(c, nu) * dg[a][b][nu]
                        s = t if s is None else s + t
                    out[a][b][c] = s
        return out

    @cached_property
    def christoffel_mat(self):
        n = self.n
        out = np.empty((n, n, n), dtype=complex)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    out[a, b, c] = self.christoffel[a][b][c].value
        return out

    @cached_property
    def riem(self):
        """R_{m nbar a bbar} values; array indexed [m, n, a, b]."""
        n = self.n
        minv = self.g_inv_mat
        dg_h = np.empty((n, n, n), dtype=complex)  # d_m g_{a dbar} -> [m,a,d]
        dg_a = np.empty((n, n, n), dtype=complex)  # dbar_n g_{c bbar} -> [n,c,b]
        dd = np.empty((n, n, n, n), dtype=complex)
        for a in range(n):
            for b in range(n):
                gab = self.g[a][b]
                for m in range(n):
                    dg_h[m, a, b] = gab.d(m).value
                    dg_a[m, a, b] = gab.dbar(m).value
                    for nu in range(n):
                        dd[m, nu, a, b] = gab.d(m).dbar(nu).value
        out = np.empty((n, n, n, n), dtype=complex)
        for m in range(n):
            for nu in range(n):
                for a in range(n):
                    for b in range(n):
                        corr = 0.0
                        for c in range(n):
                            for d in range(n):
                                # g^{c dbar} = minv[d, c]
                                corr += minv[d, c] * dg_a[nu, c, b] * dg_h[m, a, d]
                        out[m, nu, a, b] = dd[m, nu, a, b] - corr
        return out

    # -- raised Ricci as used by the Lichnerowicz operator ----------------

    @cached_property
    def ricci_up_mat(self):
        """R^{a bbar} = g^{a mubar} g^{nu bbar} R_{nu mubar} as a matrix [a, b]."""
        minv = self.g_inv_mat
        return (minv @ self.ricci_mat @ minv).T

    def grad_scalar_norm(self, f_jet: Jet) -> float:
        """|grad f|_g at the point, for a real scalar jet (order >= 1)."""
        cf = ComplexJet.from_real(f_jet)
        df = np.array([cf.d(a).value for a in range(self.n)])
        return float(np.sqrt(abs(df.conj() @ self.g_inv_mat.T @ df)))


# -- the public frame -------------------------------------------------------


@dataclass(frozen=True)
class CurvatureFrame:
    g: np.ndarray
    g_inv: np.ndarray
    ricci: np.ndarray
    ricci_endo: np.ndarray
    eigenvalues: np.ndarray
    scalar: float
    central: float
    central_via_endo: float
    christoffel: np.ndarray
    riem: Optional[np.ndarray]


def _endo_eigenvalues(ricci_mat, g_mat):
    """Eigenvalues of Ric * g^-1, ascending; closed form for n <= 2."""
    n = g_mat.shape[0]
    endo = ricci_mat @ np.linalg.inv(g_mat)
    if n == 1:
        lam = np.array([endo[0, 0]])
    elif n == 2:
        tr, det = np.trace(endo), np.linalg.det(endo)
        disc = tr * tr - 4.0 * det
        scale = max(1.0, abs(tr) ** 2, 4 * abs(det))
        if disc.real < -1e-10 * scale:
            raise DegenerateMetricError(
                f"complex Ricci eigenvalues (disc={disc:.3g})"
            )
        root = np.sqrt(max(disc.real, 0.0))
        lam = np.array([(tr - root) / 2.0, (tr + root) / 2.0])
    else:
        from scipy.linalg import eigh

        lam = eigh(ricci_mat, g_mat, eigvals_only=True).astype(complex)
    if np.max(np.abs(lam.imag)) > 1e-10 * max(1.0, np.max(np.abs(lam))):
        raise DegenerateMetricError("Ricci eigenvalues failed to be real")
    return np.sort(lam.real)


def frame_at(chart: KahlerChart, z, order: int = 6) -> CurvatureFrame:
    """Full curvature package at a point; order >= 4 (Ricci needs it)."""
    if order < 4:
        raise PreconditionError("frame_at needs jet order >= 4")
    cj = ChartJets(chart, z, order)
    g = cj.g_mat
    ric = cj.ricci_mat
    endo = ric @ cj.g_inv_mat
    lam = _endo_eigenvalues(ric, g)
    scalar = np.trace(endo)
    central = np.linalg.det(ric) / np.linalg.det(g)
    central2 = np.linalg.det(endo)
    return CurvatureFrame(
        g=g,
        g_inv=cj.g_inv_mat,
        ricci=ric,
        ricci_endo=endo,
        eigenvalues=lam,
        scalar=float(scalar.real),
        central=float(central.real),
        central_via_endo=float(central2.real),
        christoffel=cj.christoffel_mat,
        riem=cj.riem if order >= 4 else None,
    )


def validate_frame(fr: CurvatureFrame, rtol: float = 1e-10):
    """Assert the CurvatureFrame invariants; returns worst deviations."""
    herm_g = np.max(np.abs(fr.g - fr.g.conj().T))
    herm_r = np.max(np.abs(fr.ricci - fr.ricci.conj().T))
    tr_err = abs(np.trace(fr.ricci_endo).real - fr.scalar)
    det_err = abs(fr.central - fr.central_via_endo) / max(1.0, abs(fr.central))
    gamma_sym = np.max(np.abs(fr.christoffel - fr.christoffel.transpose(1, 0, 2)))
    report = {
        "hermitian_g": herm_g,
        "hermitian_ricci": herm_r,
        "trace_vs_scalar": tr_err,
        "central_two_paths": det_err,
        "christoffel_symmetry": gamma_sym,
    }
    scale = max(1.0, float(np.max(np.abs(fr.ricci))))
    for name, v in report.items():
        if v > rtol * scale:
            raise DegenerateMetricError(f"frame invariant {name} = {v:.3g}")
    return report


# -- scalar fields and covariant derivatives --------------------------------


@dataclass(frozen=True)
class ScalarField:
    """A scalar built from chart jets (with enough headroom to differentiate).

    ``intrinsic_order`` is how many potential derivatives the field itself
    consumes; a request for k covariant derivatives requires chart jets of
    order intrinsic_order + k.
    """

    name: str
    jet_fn: Callable[[ChartJets], Jet]
    intrinsic_order: int


scalar_curvature_field = ScalarField("R", lambda cj: cj.scalar_jet, 4)
central_curvature_field = ScalarField("C", lambda cj: cj.central_jet, 4)
k_norm_field = ScalarField("Lambda", lambda cj: cj.lambda_jet, 4)


class JetTensor:
    """Tensor with lower 'h'/'a' slots and ComplexJet components."""

    def __init__(self, sig, comp):
        self.sig = tuple(sig)
        self.comp = comp  # nested lists, depth == len(sig)

    @staticmethod
    def scalar(jet):
        return JetTensor((), ComplexJet.from_real(jet) if isinstance(jet, Jet) else jet)

    def item(self, idx):
        c = self.comp
        for i in idx:
            c = c[i]
        return c

    def values(self, n):
        out = np.empty((n,) * len(self.sig), dtype=complex)
        for idx in np.ndindex(out.shape):
            out[idx] = self.item(idx).value
        return out


def _map_components(n, depth, fn):
    if depth == 0:
        return fn(())
    def build(prefix, d):
        if d == 0:
            return fn(prefix)
        return [build(prefix + (i,), d - 1) for i in range(n)]
    return build((), depth)


def cov_deriv(cj: ChartJets, T: JetTensor, kind: str) -> JetTensor:
    """Covariant derivative; the new index goes first ('h' for nabla_c)."""
    n = cj.n
    gam = cj.christoffel

    def entry(idx):
        c, rest = idx[0], idx[1:]
        base = T.item(rest)
        out = base.d(c) if kind == "h" else base.dbar(c)
        for p, s in enumerate(T.sig):
            if (kind == "h" and s == "h") or (kind == "a" and s == "a"):
                for mu in range(n):
                    swapped = rest[:p] + (mu,) + rest[p + 1:]
                    gamma = gam[c][rest[p]][mu]
                    if kind == "a":
                        gamma = gamma.conj()
                    k = min(gamma.order, T.item(swapped).order - 1)
                    out = out - gamma.truncate(k) * T.item(swapped).truncate(k)
        return out

    return JetTensor((kind,) + T.sig, _map_components(n, len(T.sig) + 1, entry))


def covariant_derivs(field: ScalarField, chart: KahlerChart, z, upto: int):
    """Stack of covariant derivatives of a scalar: {(): value, ('h',): ...}.

    Key (t1, ..., tk) holds nabla_{t1} ... nabla_{tk} Phi applied right to
    left (tk acts first), as complex arrays indexed by the slot coordinates.
    """
    if upto < 0 or upto > 4:
        raise PreconditionError("covariant_derivs supports 0 <= upto <= 4")
    order = field.intrinsic_order + upto
    cj = ChartJets(chart, z, order)
    base = JetTensor.scalar(field.jet_fn(cj))
    levels = {(): base}
    for k in range(1, upto + 1):
        for key, T in [kv for kv in levels.items() if len(kv[0]) == k - 1]:
            for kind in ("h", "a"):
                levels[(kind,) + key] = cov_deriv(cj, T, kind)
    n = cj.n
    return {key: T.values(n) if key else complex(T.comp.value)
            for key, T in levels.items()}


def _require_csc(chart: KahlerChart, z, tol: float = 1e-7):
    if chart.csc:
        return
    worst = 0.0
    pts = chart.sample_points or (tuple(z),)
    for p in pts:
        cj = ChartJets(chart, p, 6)
        worst = max(worst, cj.grad_scalar_norm(cj.scalar_jet))
    if worst > tol:
        raise PreconditionError(
            f"{chart.label}: not constant scalar curvature, max |grad R| = {worst:.3g}"
        )


def laplacian_jet(cj: ChartJets, f: Jet) -> Jet:
    """Jet of the complex Laplacian g^{a bbar} d_a dbar_b f (two orders lower)."""
    cf = ComplexJet.from_real(f)
    out = None
    for a in range(cj.n):
        for b in range(cj.n):
            t = cj.ginv_jet(a, b) * cf.d(a).dbar(b)
            out = t if out is None else out + t
    return out.as_real()


def laplacian(field: ScalarField, chart: KahlerChart, z) -> float:
    cj = ChartJets(chart, z, field.intrinsic_order + 2)
    return laplacian_jet(cj, field.jet_fn(cj)).value


def lichnerowicz(field: ScalarField, chart: KahlerChart, z) -> float:
    """L Phi = Laplacian^2 Phi + R^{a bbar} nabla_a nabla_bbar Phi (csc only)."""
    _require_csc(chart, z)
    cj = ChartJets(chart, z, field.intrinsic_order + 4)
    f = field.jet_fn(cj)
    lap2 = laplacian_jet(cj, laplacian_jet(cj, f)).value
    cf = ComplexJet.from_real(f)
    rup = cj.ricci_up_mat
    mix = sum(
        rup[a, b] * cf.d(a).dbar(b).value
        for a in range(cj.n)
        for b in range(cj.n)
    )
    if abs(complex(mix).imag) > 1e-8 * max(1.0, abs(complex(mix))):
        raise DegenerateMetricError("Lichnerowicz mixed term failed to be real")
    return float(lap2 + complex(mix).real)


def ricci_divergence(chart: KahlerChart, z) -> float:
    """max_b |g^{a mubar} nabla_a R_{b mubar}| (second Bianchi residual)."""
    cj = ChartJets(chart, z, 6)
    n = cj.n
    ric = JetTensor(("h", "a"), [[cj.ricci[a][b] for b in range(n)] for a in range(n)])
    dric = cov_deriv(cj, ric, "h").values(n)  # [c, a, b] = nabla_c R_{a bbar}
    minv = cj.g_inv_mat
    worst = 0.0
    for b in range(n):
        s = 0.0
        for a in range(n):
            for mu in range(n):
                s += minv[mu, a] * dric[a, b, mu]
        worst = max(worst, abs(s))
    return float(worst)
