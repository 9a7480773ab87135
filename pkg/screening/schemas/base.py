"""Base schemas with common configuration."""
from pydantic import BaseModel, ConfigDict


class BaseSchema(BaseModel):
    """Strict base for every run-configuration block: unknown keys are rejected."""

    model_config = ConfigDict(
        extra="forbid",
        populate_by_name=True,
        frozen=True,
    )
