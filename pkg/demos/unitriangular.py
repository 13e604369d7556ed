"""The largest permutation submodule of a graded piece under upper unitriangular matrices.

For p = 3, height 2 and three variables the grade-1 piece has dimension 91.
Summing images of trace maps over the 11 classes of subgroups recovers a
permutation submodule of dimension 65 only, so the piece is not a permutation
module for this 3-group.
"""

from moravak.algebra import AlgebraContext, build_graded_action
from moravak.decompose import Representation, class_representatives, perm_submodule
from moravak.groups import preset_group, uv_class_presets

U = preset_group(3, 3, "UV")
classes = class_representatives(U, uv_class_presets(U))
print("subgroup classes:", [H.label for H in classes])

for k in range(8):
    act = build_graded_action(AlgebraContext(3, 2, 3), U.gens, k, "K", reduced=True)
    dec = perm_submodule(Representation(U, act.matrices), classes, complete=True)
    verdict = "permutation" if dec.is_permutation_module else "not a permutation module"
    print(f"grade {k}: dim {dec.dim_M}, permutation part {dec.dim_M_prime}, "
          f"multiplicities {dec.multiplicities} ({verdict})")
