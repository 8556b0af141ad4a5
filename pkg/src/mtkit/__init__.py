"""mtkit: Mersenne Twister output-structure toolkit.

Bit-exact MT19937 plus the machinery to study what its output conversions
do to randomness: dimension-of-equidistribution tables, low-weight linear
relations among output bits, and the statistical tests that turn those
relations into astronomical p-values.
"""
from .params import GeneratorParams, MT19937, TOY12, TOY13, TOY16
from .generator import (GeneratorState, OutputWord, seed, next_word,
                        temper, untemper, transition_matrix, output_matrix)
from .streams import (StreamConfig, RealSample, SampleStream,
                      concat64_low_first, concat64_high_first, res53,
                      reversed32, lagged, skip_tau)
from .f2lin import F2Matrix, IncrementalEchelon, rank, kernel_basis, incremental_echelon
from .equidist import EquidistReport, kv, kv_table, kv_res53
from .relations import LinearRelation, verify, discover, fold
from .stattests import (TestConfig, TestResult, PRESETS, birthday_spacings,
                        overlap_collision, matrix_rank_test,
                        hamming_independence, p_value_poisson, p_value_chisq,
                        run_test)

__version__ = "0.1.0"
