"""Catalog of local Kahler potentials and bundle metrics.

Every chart exposes the potential log H as a jet provider of configurable
order about any point of its domain; charts constructed from a catalog entry
also carry the bundle metric H itself (needed for disk-bundle work, where H
is fixed and not just determined up to a pluriharmonic gauge).

Space-form disk normalization: Delta_lambda is the unit disk with

    potential = (2/lambda) log(1 + |z|^2)   (lambda > 0, defined on all of C)
              = |z|^2 / 2                   (lambda = 0)
              = (2/lambda) log(1 - |z|^2)   (lambda < 0)

which has constant Gauss curvature lambda; a product of such disks has Ricci
eigenvalues equal to the list of curvatures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import expr as _expr
from .errors import BundleMetricUnavailable, ChartDomainError
from .jets import ComplexJet, Jet, jet_exp, jet_log

DEFAULT_MAX_ORDER = 12


def point_to_real(z) -> np.ndarray:
    """Complex point (z_1..z_n) to the real coordinate vector (x1,y1,...)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty(2 * z.size)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def coordinate_jets(z, order):
    """Jets of z_1..z_n about the point z."""
    p = point_to_real(z)
    n = p.size // 2
    return [ComplexJet.coordinate(i, 2 * n, order, p) for i in range(n)]


@dataclass(frozen=True)
class KahlerChart:
    """A local potential, exposed as a jet provider.

    ``potential`` maps the coordinate jets to the ComplexJet of log H (real
    valued); ``bundle_metric`` is the analogous builder for H itself, or None
    when only the potential is known (Custom charts without a declared H).
    """

    dim: int
    label: str
    potential: Callable[[Sequence[ComplexJet]], ComplexJet]
    bundle_metric: Optional[Callable[[Sequence[ComplexJet]], ComplexJet]] = None
    domain_predicate: Callable[[np.ndarray], bool] = lambda z: True
    csc: bool = False
    constant_eigenvalues: Optional[tuple] = None
    sample_points: tuple = ()
    max_order: int = DEFAULT_MAX_ORDER

    def _check(self, z, order):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if z.size != self.dim:
            raise ChartDomainError(
                f"{self.label}: point has {z.size} coordinates, chart has {self.dim}"
            )
        if order > self.max_order:
            raise ChartDomainError(
                f"{self.label}: order {order} above max {self.max_order}"
            )
        if not self.domain_predicate(z):
            raise ChartDomainError(f"{self.label}: point {z} outside chart domain")
        return z

    def potential_jet(self, z, order) -> Jet:
        z = self._check(z, order)
        return self.potential(coordinate_jets(z, order)).as_real()

    def h_jet(self, z, order) -> Jet:
        z = self._check(z, order)
        if self.bundle_metric is None:
            raise BundleMetricUnavailable(
                f"{self.label}: bundle metric H not declared; the potential "
                "determines H only up to |e^f|^2"
            )
        return self.bundle_metric(coordinate_jets(z, order)).as_real()

    def h_value(self, z) -> float:
        h = self.h_jet(z, 0).value
        if h <= 0:
            raise ChartDomainError(f"{self.label}: H({z}) = {h} not positive")
        return h


def chart_jet(chart: KahlerChart, z, order) -> Jet:
    """Jet of the potential log H about z (spec-level operation)."""
    return chart.potential_jet(z, order)


def bundle_metric_value(chart: KahlerChart, z) -> float:
    """H(z) > 0 for charts that declare the bundle metric."""
    return chart.h_value(z)


# -- catalog builders ------------------------------------------------------


def _abs2(coords):
    s = None
    for zk in coords:
        t = zk * zk.conj()
        s = t if s is None else s + t
    return s


def flat(n: int) -> KahlerChart:
    """C^n with potential |z|^2 and H = exp(|z|^2)."""
    return KahlerChart(
        dim=n,
        label=f"flat({n})",
        potential=_abs2,
        bundle_metric=lambda c: ComplexJet.from_real(jet_exp(_abs2(c).as_real())),
        csc=True,
        constant_eigenvalues=(0.0,) * n,
        sample_points=_grid(n, radius=1.5),
    )


def fubini_study(n: int, scale: float = 1.0) -> KahlerChart:
    """Potential scale*log(1+|z|^2), H = (1+|z|^2)^scale.

    Ricci eigenvalues are all (n+1)/scale; scale k gives the metric induced by
    the k-th power of the hyperplane bundle in the affine chart.
    """
    if scale <= 0:
        raise ChartDomainError("fubini_study scale must be positive")

    def pot(coords):
        return ComplexJet.from_real(jet_log((1.0 + _abs2(coords)).as_real()) * scale)

    def h(coords):
        from .jets import jet_powr

        return ComplexJet.from_real(jet_powr((1.0 + _abs2(coords)).as_real(), scale))

    lam = (n + 1) / scale
    return KahlerChart(
        dim=n,
        label=f"fubini-study({n},scale={scale:g})",
        potential=pot,
        bundle_metric=h,
        csc=True,
        constant_eigenvalues=(lam,) * n,
        sample_points=_grid(n, radius=1.2),
    )


def ball(n: int, lam: float) -> KahlerChart:
    """Complex hyperbolic ball metric with Ricci eigenvalues lam < 0.

    Potential (m/lam) log(1-|z|^2), H = (1-|z|^2)^(m/lam) with m = n+1.
    """
    if lam >= 0:
        raise ChartDomainError("ball chart needs a negative Einstein constant")
    power = (n + 1) / lam

    def pot(coords):
        return ComplexJet.from_real(jet_log((1.0 - _abs2(coords)).as_real()) * power)

    def h(coords):
        from .jets import jet_powr

        return ComplexJet.from_real(jet_powr((1.0 - _abs2(coords)).as_real(), power))

    return KahlerChart(
        dim=n,
        label=f"ball({n},lambda={lam:g})",
        potential=pot,
        bundle_metric=h,
        domain_predicate=lambda z: float(np.sum(np.abs(z) ** 2)) < 1.0,
        csc=True,
        constant_eigenvalues=(lam,) * n,
        sample_points=_grid(n, radius=0.55),
    )


def _disk_factor(lam: float):
    """Potential/H builders for one space-form disk factor Delta_lambda."""
    if lam > 0:
        c = 2.0 / lam

        def pot(zk):
            return jet_log((1.0 + zk * zk.conj()).as_real()) * c

        def h(zk):
            from .jets import jet_powr

            return jet_powr((1.0 + zk * zk.conj()).as_real(), c)

        dom = lambda w: True
    elif lam == 0:

        def pot(zk):
            return (zk * zk.conj()).as_real() * 0.5

        def h(zk):
            return jet_exp((zk * zk.conj()).as_real() * 0.5)

        dom = lambda w: True
    else:
        c = 2.0 / lam

        def pot(zk):
            return jet_log((1.0 - zk * zk.conj()).as_real()) * c

        def h(zk):
            from .jets import jet_powr

            return jet_powr((1.0 - zk * zk.conj()).as_real(), c)

        dom = lambda w: abs(w) < 1.0
    return pot, h, dom


def space_form_disk(lam: float) -> KahlerChart:
    """One-dimensional space form of constant Gauss curvature lam."""
    pot1, h1, dom1 = _disk_factor(lam)
    return KahlerChart(
        dim=1,
        label=f"space-form({lam:g})",
        potential=lambda c: ComplexJet.from_real(pot1(c[0])),
        bundle_metric=lambda c: ComplexJet.from_real(h1(c[0])),
        domain_predicate=lambda z: dom1(complex(z[0])),
        csc=True,
        constant_eigenvalues=(lam,),
        sample_points=_grid(1, radius=0.55 if lam < 0 else 1.2),
    )


def product_of_disks(curvatures: Sequence[float]) -> KahlerChart:
    """Product of space-form disks; Ricci eigenvalues are the curvatures."""
    curvatures = tuple(float(a) for a in curvatures)
    factors = [_disk_factor(a) for a in curvatures]

    def pot(coords):
        out = None
        for (p1, _, _), zk in zip(factors, coords):
            t = p1(zk)
            out = t if out is None else out + t
        return ComplexJet.from_real(out)

    def h(coords):
        out = None
        for (_, h1, _), zk in zip(factors, coords):
            t = h1(zk)
            out = t if out is None else out * t
        return ComplexJet.from_real(out)

    def dom(z):
        return all(d(complex(w)) for (_, _, d), w in zip(factors, z))

    radius = 0.55 if any(a < 0 for a in curvatures) else 1.2
    return KahlerChart(
        dim=len(curvatures),
        label="product(" + ",".join(f"{a:g}" for a in curvatures) + ")",
        potential=pot,
        bundle_metric=h,
        domain_predicate=dom,
        csc=True,
        constant_eigenvalues=tuple(sorted(curvatures)),
        sample_points=_grid(len(curvatures), radius=radius),
    )


def siegel_jacobi() -> KahlerChart:
    """The homogeneous surface with potential (z1+c(z1))^2/(2(z2+c(z2))) - log(z2+c(z2)).

    Constant Ricci eigenvalues {0, -3}; not locally a product of
    Kahler-Einstein factors.
    """

    def pot(coords):
        z1, z2 = coords
        a = (z1 + z1.conj()).as_real()
        t = (z2 + z2.conj()).as_real()
        return ComplexJet.from_real(a * a / (t * 2.0) - jet_log(t))

    def h(coords):
        return ComplexJet.from_real(jet_exp(pot(coords).as_real()))

    pts = []
    for x1 in (-0.7, 0.0, 0.8):
        for x2 in (0.5, 1.0, 2.0):
            pts.append((complex(x1, 0.3 * x1), complex(x2, 0.4)))
    return KahlerChart(
        dim=2,
        label="siegel-jacobi",
        potential=pot,
        bundle_metric=h,
        domain_predicate=lambda z: z[1].real > 0,
        csc=True,
        constant_eigenvalues=(-3.0, 0.0),
        sample_points=tuple(pts),
    )


def burns_simanca() -> KahlerChart:
    """Scalar-flat potential |z|^2 + log|z|^2 on C^2 minus the origin."""

    def pot(coords):
        s = _abs2(coords).as_real()
        return ComplexJet.from_real(s + jet_log(s))

    def h(coords):
        s = _abs2(coords).as_real()
        return ComplexJet.from_real(s * jet_exp(s))

    pts = tuple(
        (complex(r, 0.1 * r), complex(0.2 * r, -0.3 * r))
        for r in (0.4, 0.7, 1.0, 1.3)
    )
    return KahlerChart(
        dim=2,
        label="burns-simanca",
        potential=pot,
        bundle_metric=h,
        domain_predicate=lambda z: float(np.sum(np.abs(z) ** 2)) > 0,
        csc=True,
        constant_eigenvalues=None,  # eigenvalues vary pointwise
        sample_points=pts,
    )


def custom(
    potential_expr: str,
    dim: int,
    h_expr: Optional[str] = None,
    domain: Optional[Callable] = None,
    label: str = "custom",
) -> KahlerChart:
    """Chart from expression strings over z1..zn, conj(), log, exp, ^, *, +, -, /."""
    pot_tree = _expr.parse(potential_expr, dim)
    h_tree = _expr.parse(h_expr, dim) if h_expr else None

    def pot(coords):
        return _expr.eval_jet(pot_tree, coords)

    bundle = None
    if h_tree is not None:

        def bundle(coords):
            return _expr.eval_jet(h_tree, coords)

    return KahlerChart(
        dim=dim,
        label=label,
        potential=pot,
        bundle_metric=bundle,
        domain_predicate=domain or (lambda z: True),
        sample_points=_grid(dim, radius=0.4),
    )


def _grid(n, radius):
    """Small deterministic complex sample grid inside a polydisk."""
    vals = (-0.6 * radius, 0.25 * radius, 0.7 * radius)
    pts = []
    if n == 1:
        for a in vals:
            pts.append((complex(a, -0.4 * a),))
    elif n == 2:
        for a in vals:
            for b in vals[:2]:
                pts.append((complex(a, 0.3 * b), complex(b, -0.2 * a)))
    else:
        for a in vals[:2]:
            pts.append(tuple(complex(a / (k + 1), 0.1 * a) for k in range(n)))
    return tuple(pts)


_CATALOG = {
    "flat": lambda params: flat(int(params.get("n", 2))),
    "fubini-study": lambda params: fubini_study(
        int(params.get("n", 1)), float(params.get("scale", 1.0))
    ),
    "ball": lambda params: ball(
        int(params.get("n", 1)), float(params["lambda"])
    ),
    "space-form": lambda params: space_form_disk(float(params["curvature"])),
    "product-of-disks": lambda params: product_of_disks(
        [float(a) for a in params["curvatures"]]
    ),
    "siegel-jacobi": lambda params: siegel_jacobi(),
    "burns-simanca": lambda params: burns_simanca(),
    "custom": lambda params: custom(
        params["potential"],
        int(params["n"]),
        h_expr=params.get("h"),
        label=params.get("label", "custom"),
    ),
}


def from_config(cfg: dict) -> KahlerChart:
    """Build a chart from the config-file schema {"kind": ..., params...}."""
    params = dict(cfg)
    kind = params.pop("kind", None)
    if kind not in _CATALOG:
        raise ChartDomainError(
            f"unknown chart kind {kind!r}; known: {sorted(_CATALOG)}"
        )
    return _CATALOG[kind](params)
