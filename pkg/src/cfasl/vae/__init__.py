# -----------------------------------------------------------------------------
#  Copyright (c) CFASL Contributors
#  All rights reserved.
#
#  This file is part of the cfasl project.
#  Licensed under the MIT License.
# -----------------------------------------------------------------------------

from .model import CFASLModel
from .networks import Decoder, Encoder, EncoderOutput, reparameterize
from .objectives import (
    TcvaeTerms,
    elbo_beta_tcvae,
    elbo_beta_vae,
    gaussian_kl,
    per_dimension_kl,
    reconstruction_loss,
)
from .pairing import PairBatch, make_pair_batch

__all__ = [
    "CFASLModel",
    "Decoder",
    "Encoder",
    "EncoderOutput",
    "PairBatch",
    "TcvaeTerms",
    "elbo_beta_tcvae",
    "elbo_beta_vae",
    "gaussian_kl",
    "make_pair_batch",
    "per_dimension_kl",
    "reconstruction_loss",
    "reparameterize",
]
