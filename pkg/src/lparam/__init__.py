"""Exact computations on L-parameters, affine Hecke modules and their local models for GL_n."""

__version__ = "0.1.0"
