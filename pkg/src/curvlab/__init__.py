"""curvlab: algebraic curvature tensors and weighted Bochner conditions."""

from .tensor import (
    PForm,
    alternate,
    as_symform,
    as_tensor,
    contract_with_form,
    endo_action,
    inner_product,
    metric,
    norm,
    transpose_slots,
    wedge_endo,
)
from .curvature import (
    AlgCurv,
    ConditionReport,
    CurvDecomposition,
    CurvSpectrum,
    bivector_basis,
    curvature_operator_matrix,
    curvature_project,
    decompose,
    kulkarni_nomizu,
    partial_sum_verdict,
    ricci,
    scalar,
    spectrum,
    unit_sphere,
    validate,
)
from .bochner import (
    WeightSpec,
    WeylRemarkResiduals,
    check_vanishing,
    hg_transposition_sum,
    identity_form_weight,
    identity_sym2_weight,
    mu_bound_check,
    mu_list,
    ric_term_bruteforce,
    ric_term_hg_curv,
    ric_term_hg_general,
    ric_term_hg_pform,
    ric_term_hg_sym2,
    spectral_weitzenboeck,
    sym2_quadratic_form,
    weight_proposition,
    weight_theorem,
    weighted_curvature_theorem,
    weyl_remark_check,
)
from .gallery import EXAMPLES, GalleryExample, gallery
from . import errors

__version__ = "0.1.0"
