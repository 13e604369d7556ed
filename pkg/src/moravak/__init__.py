"""Graded GL_d(F_p)-modules from truncated formal group laws.

Builds the truncated polynomial algebra with its formal-group and linear
actions, computes exact Brauer characters of its graded pieces, and
decomposes the pieces over small groups.
"""

from .algebra import (
    AlgebraContext,
    AlgebraElement,
    GradedAction,
    a_series,
    act_on_generators,
    build_graded_action,
    formal_sum,
    multiply,
    piece_basis,
    power,
)
from .characters import (
    CharacterRow,
    character_from_action,
    character_via_eq31,
    gaussian_binomial,
    hom_orbit_decomposition,
    kuhn_character_check,
    lemma32_check,
    lift_eigenvalues,
    perm_obstruction,
)
from .cyclotomic import Cyclotomic, cyclotomic_polynomial, root_of_unity
from .decompose import (
    GL2F2Report,
    PermDecomposition,
    Representation,
    SL2F3Report,
    gl2f2_decompose,
    gl_graded_perm_feasibility,
    is_permutation_module,
    l_formula_52,
    molien_counts_51,
    perm_submodule,
    sl2f3_decompose,
    truncated_l_decomposition_via_51,
)
from .fields import Echelon, ExtField, eigen_multiplicity, fixed_space, kernel_basis, rank, rref
from .groups import (
    GroupData,
    Subgroup,
    close,
    conjugacy_classes_of_subgroups,
    p_regular_classes,
    preset_group,
    preset_matrices,
    subgroup_lattice,
    transversal,
    uv_class_presets,
)

__all__ = [
    "AlgebraContext",
    "AlgebraElement",
    "GradedAction",
    "a_series",
    "act_on_generators",
    "build_graded_action",
    "formal_sum",
    "multiply",
    "piece_basis",
    "power",
    "CharacterRow",
    "character_from_action",
    "character_via_eq31",
    "gaussian_binomial",
    "hom_orbit_decomposition",
    "kuhn_character_check",
    "lemma32_check",
    "lift_eigenvalues",
    "perm_obstruction",
    "GL2F2Report",
    "PermDecomposition",
    "Representation",
    "SL2F3Report",
    "gl2f2_decompose",
    "gl_graded_perm_feasibility",
    "is_permutation_module",
    "l_formula_52",
    "molien_counts_51",
    "perm_submodule",
    "sl2f3_decompose",
    "truncated_l_decomposition_via_51",
    "GroupData",
    "Subgroup",
    "close",
    "conjugacy_classes_of_subgroups",
    "p_regular_classes",
    "preset_group",
    "preset_matrices",
    "subgroup_lattice",
    "transversal",
    "uv_class_presets",
    "Cyclotomic",
    "cyclotomic_polynomial",
    "root_of_unity",
    "Echelon",
    "ExtField",
    "eigen_multiplicity",
    "fixed_space",
    "kernel_basis",
    "rank",
    "rref",
]

__version__ = "0.1.0"
