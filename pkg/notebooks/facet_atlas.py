"""
Maximal facets with disconnected center
=======================================

For each maximal Frobenius-stable facet the reductive quotient is read off the
affine diagram; a facet is flagged when that quotient has a disconnected center
and the facet has a nontrivial stabilizer in Omega.
"""

from depthzero.affine import AffineRootSystem, FrobeniusForm
from depthzero.rootcore import build_root_datum
from depthzero.verify import atlas_report


def show(name, form=None):
    r = atlas_report(name, form)
    print(f"{name}  {r.form}")
    for row in r.rows:
        mark = "*" if row.flagged else " "
        print(f"  {mark} remove {row.removed!s:10} shape {'x'.join(row.shape):14} torsion {row.center_torsion!s:6} |Omega_x| {row.omega_order}")
    print("  flagged:", r.flagged, "expected:", r.expected)
    print()


# split groups
for name in ("C4", "B4", "D6", "E6", "E7"):
    show(name)

# the non-split inner form of E6: Frobenius acts through an element of order 3 in Omega
a = AffineRootSystem(build_root_datum("E6"))
show("E6", FrobeniusForm(a, tuple(range(6)), 1))
