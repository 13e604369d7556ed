"""Why some graded pieces over F_2 cannot be permutation modules.

A permutation module has a Brauer character that counts fixed points, so every
value is a non-negative integer.  Lifting eigenvalues to complex roots of unity
lets us evaluate the character of each graded piece exactly and look for values
that break this rule.
"""

from moravak import character_via_eq31, preset_matrices

# g' is a 2-regular element of GL_4(F_2) of order 3.  At even height its
# character is a negative integer in every grade not divisible by 3.
(g_prime,) = preset_matrices(2, 4, "gprime")
for n in (2, 4):
    values = {k: str(character_via_eq31(2, n, 4, k, g_prime)) for k in range(2**n - 1) if k % 3}
    print(f"height {n}: character of g' by grade -> {values}")

# At height 3 the same element says nothing: the value is 0.  An element of
# order 7 takes over and produces an irrational value instead.
print("height 3, g':", str(character_via_eq31(2, 3, 4, 1, g_prime)))
(g7,) = preset_matrices(2, 3, "gq")
print("height 3, order-7 element, grade 1:", str(character_via_eq31(2, 3, 3, 1, g7)))
print("height 3, order-7 element, grade 0:", str(character_via_eq31(2, 3, 3, 0, g7)))
