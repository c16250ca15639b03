"""
Signs of Tits lifts on root vectors
===================================

A Chevalley basis fixes integer structure constants; the Tits lift n(w) of a
Weyl element then sends X_gamma to +-X_{w gamma}.  The signs are what the
pinning argument keeps track of.
"""

import numpy as np

from depthzero.chevalley import ChevalleyAlgebra, TorusSign, sign_action, tits_lift, w0_square_identity
from depthzero.rootcore import build_root_datum
from depthzero.verify import theta_signs, y_element

# G2 has the largest structure constants
A = ChevalleyAlgebra(build_root_datum("G2"))
print("max |N| for G2:", A.max_abs_N())

# n(w0)^2 is the product of all gamma^vee(-1)
for name in ("A1", "B3", "D4", "E6"):
    cert = w0_square_identity(ChevalleyAlgebra(build_root_datum(name)))
    print(name, "n(w0)^2 identity:", cert.holds, "on a", cert.dim, "dimensional algebra")

# the simple reflection squares to alpha^vee(-1)
d = build_root_datum("B2")
A = ChevalleyAlgebra(d)
n1 = A.simple_n[0]
print("n_1^2 equals alpha_1^vee(-1):", np.array_equal(n1 @ n1, TorusSign.of_coroot(d, d.simple_roots[0]).matrix(A)))

# signs of n(y_alpha) X_alpha against X_theta in D4; adjacent long roots differ
d = build_root_datum("D4")
A = ChevalleyAlgebra(d)
for i, sign in theta_signs(d, A).items():
    y = y_element(d, i)
    print(f"alpha_{i + 1}: y word {y.word}  sign {sign:+d}")
print("n(y_2) X_alpha2 image:", sign_action(y_element(d, 1), d.simple_roots[1], A))
print("lift of s_1 s_2 is a signed permutation:", set(np.abs(tits_lift((0, 1), A).matrix).flatten()) <= {0, 1})
