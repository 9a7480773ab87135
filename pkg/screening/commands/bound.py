"""bound: negative real S-matrix poles."""
import logging

from screening.commands.common import emit_poles, require_problem, resolved_mode
from screening.schemas.config import RunConfig
from screening.services.spectra_service import SpectralEngine

logger = logging.getLogger(__name__)


def run(config: RunConfig) -> int:
    model, spec = require_problem(config)
    mode = resolved_mode(config)
    engine = SpectralEngine.build(spec, model, mode=mode)
    poles = engine.find_bound_states(window=config.bound.window)
    logger.info(f"bound: {len(poles)} state(s) for {model.name} mu={model.mu} ell={spec.ell}")
    return emit_poles(poles, model, spec, mode, config)
