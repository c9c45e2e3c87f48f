# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

import logging
import os


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger with the specified name under the 'cfasl' namespace.

    Log level is controlled by CFASL_LOG environment variable.
    Valid values: DEBUG, INFO, WARNING, ERROR, CRITICAL
    Default: INFO
    """
    logger = logging.getLogger(f"cfasl.{name}")
    cfasl_root = logging.getLogger("cfasl")

    log_level = os.getenv("CFASL_LOG", "INFO").upper()

    try:
        level = getattr(logging, log_level)
    except AttributeError:
        level = logging.INFO
    if not isinstance(level, int):
        level = logging.INFO

    # Configure root cfasl logger once
    if not cfasl_root.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )
        handler.setFormatter(formatter)
        cfasl_root.addHandler(handler)
        cfasl_root.propagate = False

    # Always update level in case environment variable changed
    cfasl_root.setLevel(level)

    # Pillow logs every PNG chunk at DEBUG
    pil_logger = logging.getLogger("PIL")
    if level == logging.DEBUG:
        pil_logger.setLevel(logging.DEBUG)
    else:
        pil_logger.setLevel(logging.WARNING)

    return logger
