"""Module-level homological algebra over the order-4 ring.

Representable (Yoneda) modules are the projectives; quotienting one by a
single basis monomial produces small cyclic test modules.  The search
below exhibits cyclic quotients whose projective dimension exceeds one,
so the ring is not hereditary and no two-term universal-coefficient
sequence can exist for it: the obstruction is a concrete nonzero second
Ext group.
"""

from catring import (
    ABOVE_CAP,
    build_presentation,
    complete,
    ext,
    free_cover,
    free_resolution,
    is_projective,
    kernel_of,
    projective_dimension,
    yoneda,
    yoneda_cyclic_quotient,
)

ring = complete(build_presentation(4))

print("representables are projective:")
for obj in ring.objects:
    print(f"  object {obj}:", is_projective(yoneda(ring, obj, 0)))

print("\ncyclic quotients of representables, projective dimension (cap 3):")
witness = None
for obj in ring.objects:
    for src in ring.objects:
        for pos in range(len(ring.basis[(src, obj)])):
            mod = yoneda_cyclic_quotient(ring, obj, 0, src, pos)
            pd = projective_dimension(mod, 3)
            label = "AboveCap" if pd is ABOVE_CAP else pd
            word = ring.word_str(ring.basis[(src, obj)][pos], src)
            print(f"  quotient of Y[{obj}] by {word:22s}: {label}")
            if witness is None and (pd is ABOVE_CAP or pd >= 2):
                witness = mod

print("\nfirst witness values:",
      {s: str(witness.value_invariants(s)) for s in witness.slots
       if not witness.value_invariants(s).is_zero()})

res = free_resolution(witness, 3)
print("resolution entries:", [list(f.entries) for f in res.frees])

k1, _ = kernel_of(free_cover(witness))
k2, _ = kernel_of(free_cover(k1))
obstruction = ext(witness, k2, 2)
print("Ext^2 against the second syzygy:", obstruction)
print("nonzero, so the ring is not hereditary:", not obstruction.is_zero())
