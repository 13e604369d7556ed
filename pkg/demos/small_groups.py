"""Full decompositions for two small groups where the indecomposables are known.

Over GL_2(F_2) in characteristic 2 every graded piece splits into copies of
the trivial module T, its projective cover N and the natural module V.  Ranks of two explicit matrices count them, and a closed formula
predicts the answer.  SL_2(F_3) in characteristic 3 has seven indecomposables,
identified by fixed-point and radical ranks.
"""

from dataclasses import astuple

from moravak import (
    AlgebraContext,
    Representation,
    build_graded_action,
    gl2f2_decompose,
    l_formula_52,
    preset_group,
    sl2f3_decompose,
)

G = preset_group(2, 2, "GL2F2")
print("GL_2(F_2): (T, N, V) per grade, computed vs formula")
for n in (1, 2, 3, 4):
    ctx = AlgebraContext(2, n, 2)
    for k in range(2**n - 1):
        act = build_graded_action(ctx, G.gens, k, "K")
        got = gl2f2_decompose(Representation(G, act.matrices))
        print(f"  n={n} k={k}: {astuple(got)} {astuple(l_formula_52(n, k))}")

S = preset_group(3, 2, "SL2F3")
print("SL_2(F_3): counts of I1..I7 in the reduced grade-k piece at height 2")
for k in range(8):
    act = build_graded_action(AlgebraContext(3, 2, 2), S.gens, k, "K", reduced=True)
    dec = sl2f3_decompose(Representation(S, act.matrices))
    print(f"  k={k}: {dec.counts}  non-projective summands: {dec.non_projective}")
