# contains various configuration settings for the project

import os

# LOGGING
LOG_FILE = os.environ.get("PONCELET_LOG_FILE", "poncelet.log")  # empty string disables the file handler
LOG_LEVEL = os.environ.get("PONCELET_LOG_LEVEL", "INFO")

# LOCUS CLASSIFICATION (dimensionless, relative to the outer semi-axis)
POINT_TOL = 1e-9  # point-cloud diameter
RESIDUAL_TOL = 1e-7  # rms algebraic residual of a normalized fit
CIRCLE_TOL = 1e-6  # |axis ratio - 1|

# ON-CONIC AND TANGENCY CHECKS
CONIC_TOL = 1e-10
CLOSURE_TOL = 1e-10

# SAMPLING
DEFAULT_SAMPLES = 240
SWEEP_SAMPLES = 1000
SAMPLE_PHASE = 0.0137  # radians; keeps locus grids off the symmetry axes

# ROOT FINDING
MAX_ITERATIONS = 200

# RANDOMIZED PROBES
RANDOM_SEED = 28

# CENTER REGISTRY EXTENSION (text table "k, name, trilinear-expression")
CENTER_EXTENSION_FILE = os.environ.get("PONCELET_CENTERS")
