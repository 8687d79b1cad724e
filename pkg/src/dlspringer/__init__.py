"""Point counts for Deligne-Lusztig varieties, Springer fibres and their intersections in GL_n over finite fields."""

from .combinatorics import beta_word, rs_extract, rs_insert
from .flags import (
    BudgetExceeded,
    Flag,
    VarietySpec,
    count_points,
    dl_membership,
    relative_position,
    spaltenstein_tableau,
    springer_membership,
    steinberg_membership,
)
from .gf import FieldSpec, Scalar, make_field
from .linalg import Mat, Subspace, image, intersect, kernel, subspace_sum
from .normal_forms import beta_of_unipotent, centralizer_dim, jordan_type, weyr_conjugator, weyr_matrix
from .padic import TruncatedSeriesMat, act_on_flag, embed, lefschetz_count

__version__ = "0.1.0"
