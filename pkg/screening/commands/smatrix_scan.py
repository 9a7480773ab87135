"""smatrix-scan: |S(E)| and arg S(E) on a real energy grid."""
import logging
import math

import numpy as np

from screening.commands.common import EXIT_OK, require_problem, resolved_mode
from screening.schemas.config import RunConfig
from screening.services.report_writer import smatrix_to_csv, smatrix_to_json, write_output
from screening.services.spectra_service import SpectralEngine
from screening.utils.exceptions import HarrisPoleError
from screening.utils.parallel import parallel_map

logger = logging.getLogger(__name__)


def run(config: RunConfig) -> int:
    model, spec = require_problem(config)
    engine = SpectralEngine.build(spec, model, mode=resolved_mode(config))
    block = config.smatrix
    energies = np.linspace(block.e_min, block.e_max, block.points)

    def evaluate(energy: float) -> complex:
        try:
            return engine.smatrix(float(energy))
        except HarrisPoleError as e:
            logger.warning(f"smatrix-scan: {e}")
            return complex(math.nan, math.nan)

    values = parallel_map(evaluate, energies)
    render = smatrix_to_json if config.output.format == "json" else smatrix_to_csv
    write_output(render([float(e) for e in energies], values), config.output.path)
    return EXIT_OK
