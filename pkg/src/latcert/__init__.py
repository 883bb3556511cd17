"""Exact-arithmetic lattice certificates: discriminant forms, embeddings,
isometry actions, and theorem-level certificate pipelines."""

__version__ = "0.1.0"
