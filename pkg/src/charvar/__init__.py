"""Configurations of squares in an ``r x r`` square and the dimensions they carry.

General-linear configurations live in :mod:`charvar.gl`, the quadratic
variants in :mod:`charvar.quadratic`, rank-one middle convolution in
:mod:`charvar.convolution` and the exhaustive sweeps in :mod:`charvar.verify`.
"""

__version__ = "0.1.0"

from .convolution import (
    ConvolutionKernel,
    EigenBlock,
    EigenExp,
    MonodromyTuple,
    derive_betaU,
    distinguished_part,
    katz_reduce,
    mc_delta,
    mc_step,
)
from .errors import *  # noqa: F401,F403
from .gl import (
    ColumnResidue,
    GlConfiguration,
    charvar_dimension,
    column_residue,
    defect,
    gl_column_dimension,
    gl_dimension,
    min_gl_column,
    min_gl_config_dimension,
    min_nonzero_gl_config_dimension,
    zero_dimension_triples,
)
from .partitions import Partition, dominates, enumerate_bounded, lower_neighbors
from .quadratic import (
    OverlappingConfiguration,
    QuadColumn,
    QuadConfiguration,
    TypedPart,
    box_dimension,
    eliminate_m_pairs,
    is_numerically_mc_minimal,
    linear_correction,
    low_dimension_columns,
    min_quad_column,
    possible_column_dimensions,
    possible_linear_corrections,
    quad_dimension,
    to_non_overlapping,
    total_linear_correction,
    typed,
)
from .verify import (
    VerificationReport,
    verify_column_propositions,
    verify_gl_bound,
    verify_nn_reduction,
    verify_quad_bound,
)
