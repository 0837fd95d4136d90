"""All-grades vanishing certificates and their exceptional points.

Cohomology on the ten-dimensional total space of the twisted dual spinor
bundle is graded by the symmetric power k.  A truncated table samples
finitely many grades; a certificate runs the resolution symbolically in k
(and in a twist parameter j) and is valid for every grade at once.

Run:  PYTHONPATH=src python3 demos/03_vanishing_certificates.py
"""

from bbwtilt import (
    ExpectedException,
    cohomology_total,
    parse_expr,
    prove_vanishing,
    weight,
)

# The family behind "pullback line bundles have no higher cohomology":
cert = prove_vanishing(parse_expr("Sym^k(S)*O(2k+j)"), cutoff=0, kmin=0, jmin=-5)
print("line-bundle family:", cert.verdict)
print("  largest branching threshold k* =", cert.kstar)
for line in cert.evidence[:4]:
    print("  evidence:", line)
print("  ... (%d region lines)" % len(cert.evidence))
print()

# The spinor family has one genuine survivor, the extension class that the
# whole tilting construction is built on.
exc = ExpectedException(k=1, j=-2, degree=1, dominant=weight(0, 0, 0, 0), dim=1, mult=1)
cert = prove_vanishing(
    parse_expr("Sym^k(S)*S*O(2k+j)"), cutoff=0, kmin=0, jmin=-2, expected=[exc]
)
print("spinor-twist family:", cert.verdict)
for p in cert.exceptions:
    print("  flagged:", p.describe())
print()

# The same class seen through a truncated table on the total space.
table = cohomology_total(parse_expr("S*O(-2)"), "xplus", kmax=6)
print("truncated table for the spinor twisted by -2 (grades <= 6):")
for (k, i), d in sorted(table.nonzero().items()):
    if i > 0:
        print("  grade %d: H^%d has dim %d" % (k, i, d))
