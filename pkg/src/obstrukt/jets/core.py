"""Truncated multivariate Taylor arithmetic (jets).

A :class:`Jet` is the Taylor polynomial of a smooth real-valued function about
a base point, truncated at a fixed total order.  Sums, products, quotients and
compositions of jets reproduce the Taylor coefficients of the corresponding
function operations exactly (up to floating-point rounding), so jets act as
exact forward-mode automatic differentiation to arbitrary mixed order.

Conventions
-----------
* Variables come in real pairs: variable ``2i`` is ``Re z_i`` and ``2i+1`` is
  ``Im z_i`` when the jet describes a function of complex arguments.
* Coefficients are Taylor coefficients (derivative / multi-index factorial)
  in the displacement from the base point.
* Binary operations through the spec-level functions (:func:`jet_add`, ...)
  require identical base points and orders; the Python operators additionally
  accept mixed orders and truncate to the smaller one, which is the common
  case after differentiation.

Complex-valued functions are handled by :class:`ComplexJet`, a pair of real
jets; Wirtinger derivatives ``d`` / ``dbar`` implement
``d/dz = (d/dx - i d/dy)/2`` acting on the pair.
"""

from __future__ import annotations

from math import factorial

import numpy as np

from ..errors import JetStructureError, OrderUnderflowError, SingularDivisionError
from . import backend
from .tables import jet_table

_BASE_TOL = 1e-12


class Jet:
    """Truncated Taylor expansion of a real-valued function."""

    __slots__ = ("table", "base_point", "coeffs")

    def __init__(self, table, base_point, coeffs):
        self.table = table
        self.base_point = np.asarray(base_point, dtype=np.float64)
        c = np.asarray(coeffs, dtype=np.float64)
        if c.shape != (table.size,):
            raise JetStructureError(
                f"coefficient array has size {c.shape}, table needs {table.size}"
            )
        self.coeffs = c

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(value, nvars, order, base_point):
        t = jet_table(nvars, order)
        c = np.zeros(t.size)
        c[0] = value
        return Jet(t, base_point, c)

    @staticmethod
    def variable(i, nvars, order, base_point):
        """The coordinate function x_i, expanded about the base point."""
        t = jet_table(nvars, order)
        c = np.zeros(t.size)
        c[0] = base_point[i]
        if order >= 1:
            e = [0] * nvars
            e[i] = 1
            c[t.position[tuple(e)]] = 1.0
        return Jet(t, base_point, c)

    # -- basic accessors ----------------------------------------------

    @property
    def nvars(self):
        return self.table.nvars

    @property
    def order(self):
        return self.table.order

    @property
    def value(self):
        """Value of the function at the base point."""
        return float(self.coeffs[0])

    def coeff(self, multi_index):
        return float(self.coeffs[self.table.position[tuple(multi_index)]])

    def derivative(self, multi_index):
        """Partial derivative at the base point (coefficient times factorials)."""
        f = 1
        for e in multi_index:
            f *= factorial(e)
        return self.coeff(multi_index) * f

    def truncate(self, order):
        if order > self.order:
            raise JetStructureError("cannot extend a jet to a higher order")
        if order == self.order:
            return self
        t = jet_table(self.nvars, order)
        return Jet(t, self.base_point, self.coeffs[: t.size].copy())

    def __call__(self, point):
        """Evaluate the truncated polynomial at an absolute coordinate point."""
        dx = np.asarray(point, dtype=np.float64) - self.base_point
        mon = np.prod(dx[None, :] ** self.table.exps, axis=1)
        return float(self.coeffs @ mon)

    def __repr__(self):
        return (
            f"Jet(nvars={self.nvars}, order={self.order}, "
            f"value={self.value:.6g})"
        )

    # -- arithmetic -----------------------------------------------------

    def _align(self, other):
        if not np.allclose(
            self.base_point, other.base_point, rtol=0.0, atol=_BASE_TOL
        ):
            raise JetStructureError("jets have different base points")
        k = min(self.order, other.order)
        return self.truncate(k), other.truncate(k)

    def __add__(self, other):
        if isinstance(other, Jet):
            a, b = self._align(other)
            return Jet(a.table, a.base_point, a.coeffs + b.coeffs)
        c = self.coeffs.copy()
        c[0] += other
        return Jet(self.table, self.base_point, c)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.table, self.base_point, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Jet):
            a, b = self._align(other)
            return Jet(a.table, a.base_point, a.coeffs - b.coeffs)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self._align(other)
            I, J, K = a.table.mul_triples()
            return Jet(
                a.table,
                a.base_point,
                backend.mul(a.coeffs, b.coeffs, I, J, K, a.table.size),
            )
        return Jet(self.table, self.base_point, self.coeffs * float(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            a, b = self._align(other)
            return a * jet_reciprocal(b)
        return self * (1.0 / float(other))

    def __rtruediv__(self, other):
        return jet_reciprocal(self) * other

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise JetStructureError("use jet_powr for non-integer exponents")
        out = Jet.constant(1.0, self.nvars, self.order, self.base_point)
        for _ in range(k):
            out = out * self
        return out

    def deriv(self, var):
        """Partial derivative d/dx_var as a jet of one lower order."""
        if self.order == 0:
            raise OrderUnderflowError("cannot differentiate an order-0 jet")
        src, fac = self.table.deriv_map(var)
        small = jet_table(self.nvars, self.order - 1)
        return Jet(small, self.base_point, fac * self.coeffs[src])


# -- spec-level strict operations ---------------------------------------


def _check_strict(a: Jet, b: Jet):
    if a.order != b.order:
        raise JetStructureError(f"order mismatch: {a.order} != {b.order}")
    if not np.allclose(a.base_point, b.base_point, rtol=0.0, atol=_BASE_TOL):
        raise JetStructureError("jets have different base points")


def jet_add(a: Jet, b: Jet) -> Jet:
    _check_strict(a, b)
    return a + b


def jet_mul(a: Jet, b: Jet) -> Jet:
    _check_strict(a, b)
    return a * b


def jet_div(a: Jet, b: Jet) -> Jet:
    _check_strict(a, b)
    return a * jet_reciprocal(b)


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """outer(inner(x)), outer univariate and expanded about inner's value."""
    if outer.nvars != 1:
        raise JetStructureError("outer jet of a composition must be univariate")
    if abs(outer.base_point[0] - inner.value) > 1e-9 * max(
        1.0, abs(inner.value)
    ):
        raise JetStructureError(
            "outer jet must be expanded about the inner jet's constant term"
        )
    if outer.order != inner.order:
        raise JetStructureError("composition requires equal orders")
    return compose_series(outer.coeffs, inner)


def compose_series(series_coeffs, inner: Jet) -> Jet:
    """Horner evaluation of a univariate series in (inner - inner.value)."""
    t = inner - inner.value  # nilpotent part
    out = Jet.constant(
        float(series_coeffs[-1]), inner.nvars, inner.order, inner.base_point
    )
    for c in series_coeffs[-2::-1]:
        out = out * t + float(c)
    return out


# -- analytic functions of a jet -----------------------------------------


def jet_reciprocal(a: Jet) -> Jet:
    c = a.value
    if abs(c) < 1e-300:
        raise SingularDivisionError("division by a jet with zero constant term")
    k = np.arange(a.order + 1)
    series = (-1.0) ** k / c ** (k + 1)
    return compose_series(series, a)


def jet_log(a: Jet) -> Jet:
    c = a.value
    if c <= 0:
        raise SingularDivisionError("log of a jet with non-positive constant term")
    k = np.arange(1, a.order + 1)
    series = np.concatenate(([np.log(c)], (-1.0) ** (k + 1) / (k * c**k)))
    return compose_series(series, a)


def jet_exp(a: Jet) -> Jet:
    c = a.value
    series = np.exp(c) / np.array([factorial(k) for k in range(a.order + 1)])
    return compose_series(series, a)


def jet_powr(a: Jet, p: float) -> Jet:
    """a**p for real p; requires positive constant term."""
    c = a.value
    if c <= 0:
        raise SingularDivisionError(
            "real power of a jet requires a positive constant term"
        )
    series = np.empty(a.order + 1)
    series[0] = c**p
    binom = 1.0
    for k in range(1, a.order + 1):
        binom *= (p - (k - 1)) / k
        series[k] = binom * c ** (p - k)
    return compose_series(series, a)


def jet_sqrt(a: Jet) -> Jet:
    return jet_powr(a, 0.5)


# -- complex layer --------------------------------------------------------


class ComplexJet:
    """A complex-valued jet as a pair of real jets.

    Variables are paired (Re z_i, Im z_i); ``d(i)``/``dbar(i)`` are the
    Wirtinger derivatives with respect to z_i and conj(z_i).
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Jet, im: Jet):
        if re.order != im.order:
            k = min(re.order, im.order)
            re, im = re.truncate(k), im.truncate(k)
        self.re = re
        self.im = im

    @staticmethod
    def from_real(j: Jet):
        return ComplexJet(j, Jet.constant(0.0, j.nvars, j.order, j.base_point))

    @staticmethod
    def constant(value, nvars, order, base_point):
        return ComplexJet(
            Jet.constant(np.real(value), nvars, order, base_point),
            Jet.constant(np.imag(value), nvars, order, base_point),
        )

    @staticmethod
    def coordinate(i, nvars, order, base_point):
        """The complex coordinate z_i = x_{2i} + i x_{2i+1}."""
        return ComplexJet(
            Jet.variable(2 * i, nvars, order, base_point),
            Jet.variable(2 * i + 1, nvars, order, base_point),
        )

    @property
    def order(self):
        return self.re.order

    @property
    def nvars(self):
        return self.re.nvars

    @property
    def value(self):
        return complex(self.re.value, self.im.value)

    def conj(self):
        return ComplexJet(self.re, -self.im)

    def truncate(self, order):
        return ComplexJet(self.re.truncate(order), self.im.truncate(order))

    def as_real(self, tol=1e-9):
        """The real part, checking the imaginary part is negligible."""
        scale = max(1.0, float(np.max(np.abs(self.re.coeffs))))
        err = float(np.max(np.abs(self.im.coeffs)))
        if err > tol * scale:
            raise JetStructureError(
                f"jet expected to be real has imaginary norm {err:.3g}"
            )
        return self.re

    def _coerce(self, other):
        if isinstance(other, ComplexJet):
            return other
        if isinstance(other, Jet):
            return ComplexJet.from_real(other)
        return ComplexJet.constant(
            complex(other), self.nvars, self.order, self.re.base_point
        )

    def __add__(self, other):
        o = self._coerce(other)
        return ComplexJet(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexJet(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        return ComplexJet(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return ComplexJet(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        den = jet_reciprocal(o.re * o.re + o.im * o.im)
        num = self * o.conj()
        return ComplexJet(num.re * den, num.im * den)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def d(self, i):
        """Wirtinger derivative with respect to z_i."""
        ux, uy = self.re.deriv(2 * i), self.re.deriv(2 * i + 1)
        vx, vy = self.im.deriv(2 * i), self.im.deriv(2 * i + 1)
        return ComplexJet((ux + vy) * 0.5, (vx - uy) * 0.5)

    def dbar(self, i):
        """Wirtinger derivative with respect to conj(z_i)."""
        ux, uy = self.re.deriv(2 * i), self.re.deriv(2 * i + 1)
        vx, vy = self.im.deriv(2 * i), self.im.deriv(2 * i + 1)
        return ComplexJet((ux - vy) * 0.5, (vx + uy) * 0.5)

    def __repr__(self):
        return f"ComplexJet(order={self.order}, value={self.value:.6g})"


def complex_partial(f, which, i):
    """Spec-level Wirtinger derivative of a jet.

    ``which`` is "z" or "zbar"; a real :class:`Jet` input is promoted.  The
    result is the (real, imaginary) pair of jets of one lower order.
    """
    cj = f if isinstance(f, ComplexJet) else ComplexJet.from_real(f)
    if cj.order == 0:
        raise OrderUnderflowError("cannot differentiate an order-0 jet")
    out = cj.d(i) if which == "z" else cj.dbar(i)
    return out.re, out.im


