"""Binary privacy signaling game: payoffs, best responses and equilibria."""

from .best_response import (
    BestResponse,
    TieBreak,
    decoder_x_best_response,
    decoder_y_best_response,
    encoder_best_response,
)
from .equilibrium import (
    EquilibriumResult,
    NormalFormTable,
    nash_solve,
    normal_form_table,
    stackelberg_solve,
)
from .model import (
    DecoderX,
    DecoderY,
    GeneralEncoder,
    JointPrior,
    SymmetricEncoder,
    derived_quantities,
    make_prior,
    symmetric_to_general,
)
from .objectives import (
    PayoffPair,
    binary_entropy,
    decoder_payoff,
    encoder_payoff,
    hamming_distortion,
    mutual_information,
    mutual_information_oracle,
)

__version__ = "0.1.0"
