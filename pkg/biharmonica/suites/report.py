import contextlib
import csv
import hashlib
import json
import logging
import math
import os
import sys
import threading
from collections import namedtuple

from biharmonica.exceptions import ConfigError
from biharmonica.settings import settings

logger = logging.getLogger(__name__)

CHECK_FIELDS = ['id', 'desc', 'residual', 'tol', 'pass', 'margin']
STDOUT = '-'

# Output files are written one at a time.
_write_lock = threading.Lock()


class CheckRecord(namedtuple('CheckRecord', 'id desc residual tol passed margin')):
    __slots__ = ()

    def as_dict(self):
        return {
            'id': self.id,
            'desc': self.desc,
            'residual': _number(self.residual),
            'tol': _number(self.tol),
            'pass': self.passed,
            'margin': _number(self.margin),
        }


def _number(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


def upper(id, desc, residual, tol):
    """Passes when ``residual`` is at most ``tol``."""
    residual = float(residual)
    passed = residual <= tol
    return CheckRecord(id, desc, residual, tol, passed, tol - residual)


def lower(id, desc, value, floor):
    """Passes when ``value`` is at least ``floor``."""
    value = float(value)
    passed = value >= floor
    return CheckRecord(id, desc, value, floor, passed, value - floor)


def verdict_check(id, desc, result, expected, tol):
    """Passes when the verdict's classification is one of ``expected``."""
    if isinstance(expected, str):
        expected = (expected,)
    passed = result.classification in expected
    return CheckRecord(
        id,
        '{} [{} expected {}]'.format(desc, result.classification, '|'.join(expected)),
        result.max_residual,
        tol,
        passed,
        result.margin if passed else -result.margin,
    )


class SuiteReport(namedtuple('SuiteReport', 'suite config checks duration')):
    __slots__ = ()

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    def body(self):
        return {
            'suite': self.suite,
            'config': dict(self.config),
            'checks': [check.as_dict() for check in self.checks],
        }

    @property
    def digest(self):
        return sha256_hex(canonical_json_bytes(self.body()))

    def as_dict(self):
        data = self.body()
        data['duration_ms'] = int(round(self.duration * 1000.0))
        data['digest'] = self.digest
        return data


def canonical_json_bytes(obj):
    return json.dumps(obj, sort_keys=True, separators=(',', ':'), ensure_ascii=False).encode('utf-8')


def sha256_hex(data):
    return hashlib.sha256(data).hexdigest()


def resolve_output(name, out=None, fmt=None):
    """(path, format) of a report; ``-`` stands for stdout."""
    # In case the setting value changes.
    if fmt is None:
        fmt = settings.FORMAT
    if fmt not in ('json', 'csv'):
        raise ConfigError('unknown report format {!r}'.format(fmt))
    if out is None:
        out = os.path.join(settings.OUTPUT_DIR or os.curdir, '{}.{}'.format(name, fmt))
    return out, fmt


@contextlib.contextmanager
def _open_output(path):
    if path == STDOUT:
        yield sys.stdout
        sys.stdout.flush()
        return
    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        f = open(path, 'w', encoding='utf-8', newline='')
    except OSError as e:
        raise ConfigError('cannot write {}: {}'.format(path, e))
    with f:
        yield f


def _write_csv(f, fieldnames, rows):
    writer = csv.DictWriter(f, fieldnames=fieldnames, extrasaction='ignore', lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ('' if row.get(k) is None else row.get(k)) for k in fieldnames})


def write_rows(path, fmt, rows, fieldnames, document=None):
    """Write ``rows`` as CSV, or as JSON inside ``document`` under ``rows``."""
    with _write_lock, _open_output(path) as f:
        if fmt == 'csv':
            _write_csv(f, fieldnames, rows)
        else:
            data = dict(document or {})
            data['rows'] = [{k: row.get(k) for k in fieldnames} for row in rows]
            f.write(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + '\n')
    logger.debug('Wrote %d rows to %s', len(rows), path)


def write_report(report, out=None, fmt=None):
    path, fmt = resolve_output(report.suite, out, fmt)
    with _write_lock, _open_output(path) as f:
        if fmt == 'csv':
            _write_csv(f, ['suite'] + CHECK_FIELDS, [
                dict(check.as_dict(), suite=report.suite) for check in report.checks
            ])
        else:
            f.write(json.dumps(report.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + '\n')
    logger.info('Wrote %s report of suite %s to %s', fmt, report.suite, path)
    return path
