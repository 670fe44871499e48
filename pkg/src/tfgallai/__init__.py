"""Path decompositions of triangle-free planar graphs: exact solving,
feasible reducing schemes, structural detectors and a certifying engine."""

__version__ = "0.1.0"
