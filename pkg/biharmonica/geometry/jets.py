"""Forward-mode differentiation with second-order jets.

A :class:`Jet` carries the value, gradient and Hessian of a scalar with
respect to ``n`` seed variables. Arithmetic and the elementary functions
below propagate all three exactly, so evaluating a chart metric on three
seeded coordinates yields ``g``, ``dg`` and ``ddg`` in one pass.

The functions in this module accept plain floats as well and then behave
like their numpy counterparts, so model formulas are written once.
"""
import numpy as np


class Jet:
    __slots__ = ('value', 'grad', 'hess')
    # numpy scalars must defer to the reflected operators below
    __array_ufunc__ = None

    def __init__(self, value, grad, hess):
        self.value = float(value)
        self.grad = grad
        self.hess = hess

    @classmethod
    def variable(cls, value, index, n):
        grad = np.zeros(n)
        grad[index] = 1.0
        return cls(value, grad, np.zeros((n, n)))

    @classmethod
    def constant(cls, value, n):
        return cls(value, np.zeros(n), np.zeros((n, n)))

    @property
    def n(self):
        return self.grad.shape[0]

    def __repr__(self):
        return 'Jet({!r}, grad={!r})'.format(self.value, self.grad.tolist())

    def compose(self, f0, f1, f2):
        """f(self) for a scalar f with f = f0, f' = f1 and f'' = f2 at self.value."""
        return Jet(f0, f1 * self.grad, f1 * self.hess + f2 * np.outer(self.grad, self.grad))

    def __neg__(self):
        return Jet(-self.value, -self.grad, -self.hess)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.value + other.value, self.grad + other.grad, self.hess + other.hess)
        return Jet(self.value + other, self.grad, self.hess)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.value - other.value, self.grad - other.grad, self.hess - other.hess)
        return Jet(self.value - other, self.grad, self.hess)

    def __rsub__(self, other):
        return Jet(other - self.value, -self.grad, -self.hess)

    def __mul__(self, other):
        if isinstance(other, Jet):
            cross = np.outer(self.grad, other.grad)
            return Jet(
                self.value * other.value,
                self.value * other.grad + other.value * self.grad,
                self.value * other.hess + other.value * self.hess + cross + cross.T,
            )
        return Jet(self.value * other, self.grad * other, self.hess * other)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.value == 0.0:
            raise ZeroDivisionError('jet division by zero real part')
        inv = 1.0 / self.value
        return self.compose(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet(self.value / other, self.grad / other, self.hess / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, power):
        if isinstance(power, Jet):
            return exp(power * log(self))
        if power == 0:
            return Jet.constant(1.0, self.n)
        if power == 1:
            return self
        if power == 2:
            return self * self
        v = self.value
        return self.compose(v ** power, power * v ** (power - 1), power * (power - 1) * v ** (power - 2))

    def __lt__(self, other):
        return self.value < value_of(other)

    def __le__(self, other):
        return self.value <= value_of(other)

    def __gt__(self, other):
        return self.value > value_of(other)

    def __ge__(self, other):
        return self.value >= value_of(other)

    def __float__(self):
        return self.value


def value_of(x):
    if isinstance(x, Jet):
        return x.value
    return float(x)


def seed(values):
    """Seed one jet variable per coordinate in ``values``."""
    n = len(values)
    return tuple(Jet.variable(v, i, n) for i, v in enumerate(values))


def seed_along(values, direction):
    """Seed the line ``values + t * direction`` as one-variable jets in ``t``."""
    return tuple(
        Jet(v, np.array([float(d)]), np.zeros((1, 1)))
        for v, d in zip(values, direction)
    )


def split(entries, n):
    """Split a nested array of jets/floats into (values, gradients, Hessians).

    The gradient axis goes first so that ``dg[k, i, j] = d_k g_ij`` and
    ``ddg[k, l, i, j] = d_k d_l g_ij``.
    """
    arr = np.asarray(entries, dtype=object)
    shape = arr.shape
    values = np.empty(shape)
    grads = np.zeros((n,) + shape)
    hessians = np.zeros((n, n) + shape)
    for idx in np.ndindex(*shape):
        entry = arr[idx]
        if isinstance(entry, Jet):
            values[idx] = entry.value
            grads[(slice(None),) + idx] = entry.grad
            hessians[(slice(None), slice(None)) + idx] = entry.hess
        else:
            values[idx] = float(entry)
    return values, grads, hessians


def _unary(x, f0, f1, f2):
    v = x.value
    return x.compose(f0(v), f1(v), f2(v))


def exp(x):
    if isinstance(x, Jet):
        e = np.exp(x.value)
        return x.compose(e, e, e)
    return np.exp(x)


def log(x):
    if isinstance(x, Jet):
        return _unary(x, np.log, lambda v: 1.0 / v, lambda v: -1.0 / (v * v))
    return np.log(x)


def sqrt(x):
    if isinstance(x, Jet):
        r = np.sqrt(x.value)
        return x.compose(r, 0.5 / r, -0.25 / (r * x.value))
    return np.sqrt(x)


def sin(x):
    if isinstance(x, Jet):
        return _unary(x, np.sin, np.cos, lambda v: -np.sin(v))
    return np.sin(x)


def cos(x):
    if isinstance(x, Jet):
        return _unary(x, np.cos, lambda v: -np.sin(v), lambda v: -np.cos(v))
    return np.cos(x)


def tan(x):
    if isinstance(x, Jet):
        t = np.tan(x.value)
        sec2 = 1.0 + t * t
        return x.compose(t, sec2, 2.0 * t * sec2)
    return np.tan(x)


def tanh(x):
    if isinstance(x, Jet):
        t = np.tanh(x.value)
        sech2 = 1.0 - t * t
        return x.compose(t, sech2, -2.0 * t * sech2)
    return np.tanh(x)


def arctan(x):
    if isinstance(x, Jet):
        return _unary(
            x,
            np.arctan,
            lambda v: 1.0 / (1.0 + v * v),
            lambda v: -2.0 * v / (1.0 + v * v) ** 2,
        )
    return np.arctan(x)
