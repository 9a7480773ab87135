"""Domain carriers."""
