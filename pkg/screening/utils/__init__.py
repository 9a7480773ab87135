"""Utilities module - numerical kernels, executor and errors."""
