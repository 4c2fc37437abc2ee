"""Wave-front tracking for a two-phase traffic model with a point flux constraint."""

__version__ = "0.1.0"
