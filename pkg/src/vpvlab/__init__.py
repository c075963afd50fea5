"""vpvlab: exact-arithmetic laboratory for vector-partition identities."""

from .series import Series, Caps, EXACT, APPROX, SeriesError

__all__ = ["Series", "Caps", "EXACT", "APPROX", "SeriesError"]
__version__ = "0.1.0"
