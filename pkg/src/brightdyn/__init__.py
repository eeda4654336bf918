"""Multi-scale oriented filtering with orientation-domain feedback for
predicting brightness induction in gratings and White's stimulus."""

from .experiments import (CONDITIONS, STIMULUS_IDS, DisplayConfig, ExperimentConfig, RunRecord,
                          make_stimulus, run_experiment)
from .filterbank import FilterBank, OdogFilterSpec, build_filter, convolve, respond_all
from .orientation import (FeedbackCoefficients, ImpulseParams, circular_convolve,
                          make_impulse_response, modulate)
from .pooling import ModelConfig, PoolingWindow, PredictionResult, ScaleSelection, predict
from .stimuli import GratingSpec, PixelGeometry, WhiteSpec

__version__ = "0.1.0"
