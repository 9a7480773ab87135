"""Pydantic schemas for the command-line surface."""
