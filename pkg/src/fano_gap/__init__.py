"""Certified checks for the volume gap below 2n^n among K-semistable Fano manifolds.

Everything polynomial is decided in exact rational arithmetic; the few places
where e, log, sqrt or pi enter use rigorous enclosures with rational endpoints.
"""

__version__ = "0.1.0"
