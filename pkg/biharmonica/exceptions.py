class BiharmonicaError(Exception):
    pass


class ModelError(BiharmonicaError, ValueError):
    pass


class InvalidPointError(ModelError):
    pass


class DegenerateImmersionError(BiharmonicaError, ValueError):
    pass


class DomainError(BiharmonicaError, ValueError):
    pass


class NotCMCError(BiharmonicaError):
    pass


class AmbientMismatchError(BiharmonicaError, TypeError):
    pass


class CurveError(BiharmonicaError, ValueError):
    pass


class ConfigError(BiharmonicaError, ValueError):
    pass
