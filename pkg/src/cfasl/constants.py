# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

# Training defaults
DEFAULT_LEARNING_RATE = 1e-4
DEFAULT_BATCH_SIZE = 64
DEFAULT_STEPS = 2000
DEFAULT_SEED = 1
DEFAULT_LATENT_DIM = 10
DEFAULT_CHECKPOINT_EVERY = 1000
DEFAULT_LOG_EVERY = 100

# Codebook defaults
DEFAULT_CODEBOOK_SCALE = 0.01
DEFAULT_PAIR_BUDGET = 64
DEFAULT_PERPENDICULAR_PAIRS = 1
EXHAUSTIVE_PAIR_LIMIT = 16

# Composition defaults
DEFAULT_EPSILON = 0.1
DEFAULT_THRESHOLD = 0.5
DEFAULT_GUMBEL_TEMPERATURE = 1e-4
SWITCH_CUTOFF = 0.5

# Numerical tolerances
COSINE_FLOOR = 1e-6
DEGENERATE_NORM = 1e-12
EXPM_TAYLOR_ORDER = 18
EXPM_SCALE_THRESHOLD = 0.5

# Objective defaults
DEFAULT_BETA = 4.0
DEFAULT_TC_ALPHA = 1.0
DEFAULT_TC_GAMMA = 1.0

# Metric protocol (Factor-VAE metric settings)
DEFAULT_FVM_TRIALS = 800
DEFAULT_SAMPLES_PER_VOTE = 100
DEFAULT_PRUNE_THRESHOLD = 0.06
METRIC_FVM = "fvm"
METRIC_MFVM = "m_fvm"
AGGREGATE_MODAL_SUM = "modal_sum_over_trials"

# Analysis defaults
DEFAULT_SCATTER_SAMPLES = 640
DEFAULT_EIGEN_SAMPLES = 1000
RANK_TOLERANCE = 1e-8

# Output file names
LOSS_LOG_FILE = "losses.csv"
REPORT_FILE = "report.json"
CHECKPOINT_PREFIX = "checkpoint-"
CHECKPOINT_SUFFIX = ".pt"
SYNTHETIC_MANIFEST = "manifest.json"
SYNTHETIC_IMAGES = "images.f32"
SYNTHETIC_FACTORS = "factors.i32"

# dSprites archive layout
DSPRITES_NUM_IMAGES = 737_280
DSPRITES_FACTOR_SIZES = (3, 6, 40, 32, 32)
DSPRITES_FACTOR_NAMES = ("shape", "scale", "orientation", "pos_x", "pos_y")

# Exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID_ARGUMENTS = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_IO_FAILURE = 4
EXIT_INTERRUPTED = 130
