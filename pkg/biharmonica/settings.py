import configparser
import math
import os
import re
import threading

from biharmonica.exceptions import ConfigError

GRID_PATTERN = re.compile(r'^\s*(\d+)\s*[xX]\s*(\d+)\s*$')
LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']


def nonnegative_integer_validator(val):
    try:
        return int(val) >= 0
    except ValueError:
        return False


def positive_integer_validator(val):
    try:
        return int(val) >= 1
    except ValueError:
        return False


def positive_float_validator(val):
    try:
        value = float(val)
    except ValueError:
        return False
    return math.isfinite(value) and value > 0


def grid_validator(val):
    match = GRID_PATTERN.match(val)
    return match is not None and int(match.group(1)) >= 1 and int(match.group(2)) >= 1


def any_value_validator(val):
    return True


class Settings:
    SECTION = 'general'
    DEFAULT_GENERAL_CONFIG = {
        'TOL': '1e-6',
        'MARGIN_FLOOR': '1e-3',
        'FD_STEP': '1e-3',
        'GRID': '5x5',
        'SEED': '0',
        'FORMAT': 'json',
        'WORKERS': '1',
        'OUTPUT_DIR': '',
        'LOG_LEVEL': 'WARNING',
    }
    VALID_GENERAL_CONFIG_VALUES = {
        'TOL': positive_float_validator,
        'MARGIN_FLOOR': positive_float_validator,
        'FD_STEP': positive_float_validator,
        'GRID': grid_validator,
        'SEED': nonnegative_integer_validator,
        'FORMAT': ['json', 'csv'],
        'WORKERS': positive_integer_validator,
        'OUTPUT_DIR': any_value_validator,
        'LOG_LEVEL': LOG_LEVELS,
    }
    CONFIG_ENV = 'BIHARMONICA_CONFIG'
    OUTPUT_DIR_ENV = 'BIHARMONICA_OUTPUT_DIR'

    def __init__(self):
        self._lock = threading.RLock()
        self.config = configparser.ConfigParser()
        self.config.optionxform = str.upper
        self.config.add_section(self.SECTION)

        self.apply_environment()

        config_file = os.environ.get(self.CONFIG_ENV)
        if config_file:
            self.load_file(config_file)

    def load_file(self, path):
        """Read ``key=value`` lines; a section header is optional."""
        try:
            with open(path) as f:
                text = f.read()
        except OSError as e:
            raise ConfigError('cannot read config file {}: {}'.format(path, e))

        parser = configparser.ConfigParser()
        parser.optionxform = str.upper
        try:
            parser.read_string(text)
        except configparser.MissingSectionHeaderError:
            parser.read_string('[{}]\n{}'.format(self.SECTION, text))
        except configparser.Error as e:
            raise ConfigError('malformed config file {}: {}'.format(path, e))

        with self._lock:
            for section in parser.sections():
                for key, value in parser[section].items():
                    self[key] = value

    def override(self, **values):
        """Apply command-line values; ``None`` means "not given"."""
        with self._lock:
            for key, value in values.items():
                if value is not None:
                    self[key.upper()] = str(value)

    def validate(self, field, value):
        iterable_or_callable = self.VALID_GENERAL_CONFIG_VALUES[field]
        if callable(iterable_or_callable):
            return iterable_or_callable(value)
        return value in iterable_or_callable

    def as_dict(self):
        return {field: getattr(self, field) for field in self.DEFAULT_GENERAL_CONFIG}

    def apply_environment(self):
        output_dir = os.environ.get(self.OUTPUT_DIR_ENV)
        if output_dir:
            self.config[self.SECTION]['OUTPUT_DIR'] = output_dir

    def reset(self):
        """Back to the defaults, keeping the output directory from the environment."""
        with self._lock:
            self.config.remove_section(self.SECTION)
            self.config.add_section(self.SECTION)
            self.apply_environment()

    @property
    def grid(self):
        match = GRID_PATTERN.match(self.GRID)
        return int(match.group(1)), int(match.group(2))

    def __getattr__(self, field):
        if field in self.DEFAULT_GENERAL_CONFIG:
            with self._lock:
                try:
                    value = self.config[self.SECTION][field]
                except KeyError:
                    return self.DEFAULT_GENERAL_CONFIG[field]
            return value if self.validate(field, value) else self.DEFAULT_GENERAL_CONFIG[field]
        raise AttributeError(field)

    def __setattr__(self, field, value):
        if field in self.DEFAULT_GENERAL_CONFIG:
            value = str(value)
            if not self.validate(field, value):
                raise ConfigError('invalid value for {}: {!r}'.format(field, value))
            with self._lock:
                self.config[self.SECTION][field] = value
        elif field.upper() == field and not field.startswith('_'):
            raise ConfigError('unknown setting {}'.format(field))
        else:
            super().__setattr__(field, value)

    def __getitem__(self, field):
        return getattr(self, field)

    def __setitem__(self, field, value):
        setattr(self, field, value)


settings = Settings()
