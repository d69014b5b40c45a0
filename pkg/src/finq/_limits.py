import os

from .errors import ResourceError, ValidationError

ENV_VAR = "FINQ_MAX_DIM"


def max_dim(default):
    """Return the matrix-dimension cap, honouring ``FINQ_MAX_DIM`` if set."""
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValidationError(f"{ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValidationError(f"{ENV_VAR} must be positive, got {value}")
    return value


def check_dim(dim, cap, what="matrix"):
    if dim > cap:
        raise ResourceError(
            f"{what} dimension {dim} exceeds cap {cap} (raise it with {ENV_VAR})"
        )
