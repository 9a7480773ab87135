"""resonances: fourth-quadrant S-matrix poles seeded by complex rotation."""
import logging

from screening.commands.common import emit_poles, require_problem, resolved_mode
from screening.schemas.config import RunConfig
from screening.services.spectra_service import SpectralEngine

logger = logging.getLogger(__name__)


def run(config: RunConfig) -> int:
    model, spec = require_problem(config)
    mode = resolved_mode(config)
    engine = SpectralEngine.build(spec, model, mode=mode)
    seeds = [complex(re, im) for re, im in config.resonances.seeds]
    poles = engine.find_resonances(theta_grid=config.resonances.theta, seeds=seeds)
    logger.info(f"resonances: {len(poles)} pole(s) for {model.name} mu={model.mu} ell={spec.ell}")
    return emit_poles(poles, model, spec, mode, config)
