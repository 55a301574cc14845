"""Construction, verification and classification of multipartite entangled states."""

__version__ = "0.1.0"
