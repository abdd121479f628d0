"""
Process-wide defaults.

Set EA_TOL, EA_SEED or EA_DEBUG in the environment to change the startup
values; the CLI flags override them through the setters below.
"""

import os

DEFAULT_TOLERANCE = 1e-9
DEFAULT_SEED = 42

# Mutable globals, read through the getters
_tolerance = float(os.environ.get('EA_TOL', DEFAULT_TOLERANCE))
_seed = int(os.environ.get('EA_SEED', DEFAULT_SEED))
_debug = os.environ.get('EA_DEBUG', '0').lower() in ('1', 'true', 'on')


def get_tolerance() -> float:
    """Current quantum-side tolerance ε."""
    return _tolerance


def set_tolerance(tol: float) -> float:
    """Set ε. Must be positive and small."""
    global _tolerance
    if not (0.0 < tol < 1e-2):
        raise ValueError(f"tolerance out of range: {tol}")
    _tolerance = float(tol)
    return _tolerance


def resolve_tolerance(tol=None) -> float:
    """Return `tol` or the current default when it is None."""
    return _tolerance if tol is None else float(tol)


def get_seed() -> int:
    """Seed for the generic-combination diagonalization."""
    return _seed


def set_seed(seed: int) -> int:
    global _seed
    _seed = int(seed)
    return _seed


def is_debug() -> bool:
    return _debug


def set_debug(on: bool) -> bool:
    global _debug
    _debug = bool(on)
    return _debug
