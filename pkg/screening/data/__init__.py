"""Embedded reference data."""
