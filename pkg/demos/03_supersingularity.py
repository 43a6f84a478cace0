"""Two exact supersingularity tests that must agree.

The cyclotomic test factors the polynomial whose roots are alpha^2 / q into
cyclotomic polynomials; the Newton polygon test checks that every p-adic
slope is 1/2.
"""

from weilss import LPolynomial, is_supersingular
from weilss.weil import numeric_corroboration, squared_scaled_charpoly

for coeffs, q in [((1, 0, 2), 2), ((1, 1, 2), 2), ((1, 4, 4), 4), ((1, 0, 0, 0, 9), 3), ((1, -2, 7), 7)]:
    L = LPolynomial(coeffs, q)
    v = is_supersingular(L)
    S = [str(c) for c in squared_scaled_charpoly(L)]
    print(f"L = {list(coeffs)} over F_{q}: supersingular={v.supersingular}")
    print(f"  slopes {v.slopes.to_json()}  squared-scaled {S}")
    print(f"  cyclotomic factors {v.cyclo_factors}  witness {v.failure_witness}")
    print(f"  float corroboration {numeric_corroboration(L, v)}")
