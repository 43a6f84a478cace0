"""Finite fields, characters and exact exponential sums.

Gauss and Jacobi sums come out as exact elements of Z[zeta_m]; the numeric
value is only a view.
"""

from weilss import AddChar, MultChar, gauss_sum, gauss_sum_lifted, jacobi_sum, make_field

# F_9 = F_3[t] / (first monic irreducible quadratic), with a primitive generator
F9 = make_field(3, 2)
print("modulus", F9.modulus, "generator", F9.generator.coeffs, "order", F9.order)
x = F9.element([1, 1])
print("log_g(1 + t) =", F9.dlog(x), "  trace =", F9.trace(x))

# quadratic Gauss sum over F_3: g^2 = chi(-1) * 3 = -3
F3 = make_field(3)
g = gauss_sum(MultChar(F3, 2, 1), AddChar(F3, F3.one))
print("g(quadratic, F_3) =", g, "   g^2 =", g * g)

# Hasse-Davenport: -g lifted to F_9 equals (-g)^2
print("lifted to F_9:", gauss_sum_lifted(MultChar(F3, 2, 1), AddChar(F3, F3.one), 2))

# a cubic Jacobi sum over F_7 has norm 7
F7 = make_field(7)
J = jacobi_sum(MultChar(F7, 3, 1), MultChar(F7, 3, 1))
print("J(chi_3, chi_3) over F_7 =", J, "  |J|^2 =", J * J.conjugate(), " ~", J.to_complex())
