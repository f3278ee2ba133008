"""The trivial-group case reduces to classical graded abelian groups.

Over the rank-one ring (k = 1) a graded module is just a pair of
finitely presented abelian groups, and the homological layer reproduces
the textbook Hom and Ext together with the two end terms of the
universal-coefficient sequence: Ext^1 of the suspension injects, Hom
surjects, and the middle term would be the bivariant K-group.
"""

from catring import (
    build_presentation,
    complete,
    ext,
    hom_module,
    projective_dimension,
    suspend,
    trivial_group_module,
    uct_terms,
)

ring = complete(build_presentation(1))

Z = trivial_group_module(ring, degree0=(0,))
Z6 = trivial_group_module(ring, degree0=(6,))
Z4 = trivial_group_module(ring, degree0=(4,))

print("Hom(Z/6, Z)   =", hom_module(Z6, Z).invariants)
print("Ext1(Z/6, Z)  =", ext(Z6, Z, 1))
print("Hom(Z/6, Z/4) =", hom_module(Z6, Z4).invariants)
print("Ext1(Z/6, Z/4)=", ext(Z6, Z4, 1))

# Every finitely presented graded group resolves in one step, so the
# universal-coefficient hypothesis always holds here.
print("\nprojective dimensions: Z ->", projective_dimension(Z, 3),
      ", Z/6 ->", projective_dimension(Z6, 3))

# K-theory of real projective space flavour: both groups Z/2, and the
# sequence ends are Z/2 in complementary degrees.
M = trivial_group_module(ring, degree0=(2,))
terms = uct_terms(M, M)
print("\nUCT end terms for the (Z/2, 0) pair against itself:")
print("  Hom term        :", terms.hom)
print("  Ext1(suspension):", terms.ext1_shifted)
print("  hypothesis holds:", terms.pd_within_one)

# A mixed graded example with both degrees populated.
A = trivial_group_module(ring, degree0=(4,), degree1=(0,))
B = trivial_group_module(ring, degree0=(2,), degree1=(3,))
print("\ngraded Hom((Z/4, Z), (Z/2, Z/3)):")
print("  degree 0:", hom_module(A, B).invariants)
print("  degree 1:", hom_module(A, suspend(B)).invariants)
print("graded Ext1:", ext(A, B, 1))
