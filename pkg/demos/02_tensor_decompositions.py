"""Decompose tensor products of bundles on the quadric, concretely and
with a symbolic symmetric-power exponent.

Run:  PYTHONPATH=src python3 demos/02_tensor_decompositions.py
"""

from bbwtilt import decompose, decompose_affine, levi_rank, parse_expr

for text in ["S*S", "S*Sv", "Sym^2(S)*Sv*O(3)"]:
    e = parse_expr(text)
    print(text, "decomposes as")
    for w, m in decompose(e):
        print("   %s  x%d  (rank %d)" % (w, m, levi_rank(w)))
    print("   rank check: %d = %d" % (
        sum(m * levi_rank(w) for w, m in decompose(e)), e.rank()))
    print()

# With the exponent k left symbolic the answer is a finite list of affine
# weight families, valid from the self-verified threshold onwards, plus
# concrete decompositions for the low grades where the shape still moves.
for text in ["Sym^k(S)*S*O(2k+j)", "Sym^k(S)*S*S*O(2k+1)"]:
    dec = decompose_affine(parse_expr(text))
    print(text, "for k >= %d:" % dec.k0_stable)
    for coords, m in dec.families:
        print("   (%s)  x%d" % (", ".join(str(c) for c in coords), m))
    for k in (0, 1):
        rows = ", ".join(
            "(%s) x%d" % (", ".join(str(c) for c in coords), m)
            for coords, m in dec.low[k]
        )
        print("   k = %d: %s" % (k, rows))
    print()
