"""Closed-form frame tables, kept apart from the computation path.

The tables in ``data/closed_forms.json`` are only ever compared against what
the geometry package computes from the metric.
"""
import json
import os
from functools import lru_cache

import numpy as np

from biharmonica.exceptions import ConfigError
from biharmonica.geometry import frame_brackets_at, frame_connection_at, frame_ricci_at, frame_riemann_at

TABLES_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data', 'closed_forms.json')


@lru_cache(maxsize=4)
def load_tables(path=TABLES_PATH):
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, ValueError) as e:
        raise ConfigError('cannot load closed-form tables from {}: {}'.format(path, e))


def evaluate_terms(terms, variables):
    total = 0.0
    for coefficient, powers in terms:
        term = float(coefficient)
        for name, power in powers.items():
            term *= variables[name] ** power
        total += term
    return total


def _index(key):
    return tuple(int(c) - 1 for c in key)


class ClosedForms:
    """The tables of one model, evaluated at chart points."""

    def __init__(self, model, tables=None):
        if tables is None:
            tables = load_tables()
        self.model = model
        self.tables = tables.get(model.kind, {})

    def __contains__(self, table):
        return table in self.tables

    def _variables(self, p):
        variables = dict(self.model.params)
        variables.update(x=float(p[0]), y=float(p[1]), z=float(p[2]))
        return variables

    def _vector_table(self, name, p, shape):
        out = np.zeros(shape)
        variables = self._variables(p)
        for key, components in self.tables.get(name, {}).items():
            for k, terms in components.items():
                out[_index(key) + (int(k) - 1,)] = evaluate_terms(terms, variables)
        return out

    def connection(self, p):
        """C[i, j, k] = E_k coefficient of nabla_{E_i} E_j."""
        return self._vector_table('connection', p, (3, 3, 3))

    def brackets(self, p):
        B = self._vector_table('brackets', p, (3, 3, 3))
        return B - np.einsum('ijk->jik', B)

    def curvature_operator(self, p):
        """Rop[i, j, k, l] = E_l coefficient of R(E_i, E_j) E_k."""
        Rop = self._vector_table('curvature_operator', p, (3, 3, 3, 3))
        return Rop - np.einsum('ijkl->jikl', Rop)

    def riemann(self, p):
        """R[a, b, c, d] = g(R(E_c, E_d) E_b, E_a)."""
        R = np.zeros((3, 3, 3, 3))
        variables = self._variables(p)
        for key, terms in self.tables.get('riemann', {}).items():
            a, b, _, _ = _index(key)
            value = evaluate_terms(terms, variables)
            R[a, b, a, b] = R[b, a, b, a] = value
            R[a, b, b, a] = R[b, a, a, b] = -value
        return R

    def ricci(self, p):
        Ric = np.zeros((3, 3))
        variables = self._variables(p)
        for key, terms in self.tables.get('ricci', {}).items():
            i, j = _index(key)
            Ric[i, j] = Ric[j, i] = evaluate_terms(terms, variables)
        return Ric


def table_deviations(model, p, tables=None):
    """Largest |computed - closed form| per table present for ``model``."""
    forms = ClosedForms(model, tables)
    computed = {}
    if 'connection' in forms:
        computed['connection'] = (frame_connection_at(model, p), forms.connection(p))
    if 'brackets' in forms:
        computed['brackets'] = (frame_brackets_at(model, p), forms.brackets(p))
    if 'riemann' in forms or 'curvature_operator' in forms:
        R = frame_riemann_at(model, p)
        if 'riemann' in forms:
            computed['riemann'] = (R, forms.riemann(p))
        if 'curvature_operator' in forms:
            # coefficient of E_l in R(E_i, E_j) E_k is R(E_l, E_k, E_i, E_j)
            computed['curvature_operator'] = (np.einsum('lkij->ijkl', R), forms.curvature_operator(p))
    if 'ricci' in forms:
        computed['ricci'] = (frame_ricci_at(model, p), forms.ricci(p))
    return {name: float(np.max(np.abs(numeric - closed))) for name, (numeric, closed) in computed.items()}
