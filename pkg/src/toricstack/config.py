"""Resource bounds shared by the cone and monoid algorithms.

Bounds live in a context variable so concurrent callers can use different
settings without interfering::

    with limits(max_hilbert=500):
        hilbert_basis(cone)
"""
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

DEFAULT_MAX_HILBERT = 10_000
DEFAULT_MAX_FACES = 10_000


@dataclass(frozen=True)
class Limits:
    max_hilbert: int = DEFAULT_MAX_HILBERT
    max_faces: int = DEFAULT_MAX_FACES


_LIMITS: ContextVar[Limits] = ContextVar("toricstack_limits", default=Limits())


def get_limits() -> Limits:
    return _LIMITS.get()


@contextmanager
def limits(**overrides):
    token = _LIMITS.set(replace(_LIMITS.get(), **overrides))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)


def limits_from_env(environ=None) -> Limits:
    """Read ``TSK_MAX_HILBERT`` / ``TSK_MAX_FACES``; unset values keep defaults."""
    environ = os.environ if environ is None else environ
    kwargs = {}
    for key, field in (("TSK_MAX_HILBERT", "max_hilbert"), ("TSK_MAX_FACES", "max_faces")):
        if environ.get(key):
            try:
                kwargs[field] = int(environ[key])
            except ValueError:
                raise ValueError(f"{key} must be an integer, got {environ[key]!r}") from None
    return Limits(**kwargs)
