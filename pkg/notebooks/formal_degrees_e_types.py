"""
Formal-degree exponents for exceptional centralizers
=====================================================

For a tame parameter whose inertia image is a torsion point s, the q-power in
the ratio of formal degrees is half the codimension of Z(s) and the conductor of
the adjoint representation is twice that.  The p'-parts are compared as
polynomials in q.
"""

from depthzero.centralizer import alcove_points, component_group, pseudo_levi
from depthzero.fdeg import fdeg_ratio_exponent, order_polynomial, order_polynomial_of, pprime_ratio, tame_adjoint_conductor
from depthzero.rootcore import build_root_datum

for name, m in (("E8", 2), ("E7", 2), ("E6", 3), ("F4", 2), ("G2", 3)):
    G = build_root_datum(name)
    Gq = order_polynomial(G)
    print(name, "order", m)
    for s in alcove_points(G, m, exact_order=True):
        H = pseudo_levi(s, G)
        c = component_group(s, G).order
        r = fdeg_ratio_exponent(G, H)
        cond = tame_adjoint_conductor(G, H).conductor
        ratio = pprime_ratio(Gq, order_polynomial_of(H), c)
        print(f"  kac {H.alcove.kac}  {'+'.join(H.shape):12} c={c}  q^{r.exponent}  a={cond}  {ratio}")
    print()
