"""
A torsion point of Sp4 and the depth-zero data it produces on SO5
==================================================================

The dual side is Sp4 = C2 simply connected.  The point of order three below
has a connected centralizer with one long root pair, i.e. SL2 x torus.
"""

from depthzero.affine import AffineRootSystem, Facet, apartment_embedding, frobenius_form, reductive_quotient, subsystem
from depthzero.centralizer import KacPoint, component_group, group_side_roots, index_identity_check, pseudo_levi
from depthzero.fdeg import fdeg_ratio_exponent, order_polynomial, order_polynomial_of, pprime_ratio, tame_adjoint_conductor
from depthzero.rootcore import build_root_datum

# the dual group and the point exp(2 pi i varpi_1^vee / 3)
dual = build_root_datum("C2", "simply-connected")
s = KacPoint((1, 0), 3)
H = pseudo_levi(s, dual)
print("centralizer shape:", H.shape, "roots:", sorted(H.roots_H))
print("Kac coordinates:", H.alcove.kac)
print("component group order:", component_group(s, dual).order)

# transport to SO5: the roots of G whose coroots are the roots of H
G, roots = group_side_roots(H)
print("group:", G.cartan_type, G.isogeny, "roots:", roots)

# the vertex obtained by removing node 2 of the affine diagram
a = AffineRootSystem(G)
F = Facet(frozenset({0, 1}), frobenius_form(a))
rq = reductive_quotient(F)
print("reductive quotient:", rq.shape, "center torsion:", rq.center_torsion)
print("coroot images (simple-coroot coordinates):", rq.coroots)

# affine roots of H inside those of G
emb = apartment_embedding(roots, a)
print("apartment embedding verified:", emb.verified)

# the component index computed two ways
rep = index_identity_check(roots, F)
print("index:", rep.order, "routes agree:", rep.agrees)

# exponents: fdeg ratio, conductor, and the p'-ratio as a polynomial in q
H_G = subsystem(G, roots)
print("ratio exponent:", fdeg_ratio_exponent(G, H_G).exponent)
print("conductor:", tame_adjoint_conductor(G, H_G).conductor)
print("p'-ratio:", pprime_ratio(order_polynomial(dual), order_polynomial_of(H), component_group(s, dual).order))
