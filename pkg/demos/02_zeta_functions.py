"""Point counts and L-polynomials of the three curve families."""

from weilss import ArtinSchreier, FermatCurve, ThreePointCover, count_points, genus, l_polynomial

curves = [
    ArtinSchreier(2, 2, 3),        # y^2 + y = x^3 over F_2
    FermatCurve(3, 2, 2),          # x^3 + y^3 + z^3 = 0 over F_4
    ThreePointCover(5, 1, 2, 11),  # y^5 = x (1 - x)^2 over F_11
    FermatCurve(4, 5),
]
for C in curves:
    L = l_polynomial(C)
    counts = [count_points(C, k) for k in range(1, genus(C) + 1)]
    print(f"{C}\n  genus {genus(C)}, N_k = {counts}\n  L = {list(L.coeffs)}"
          f"  functional equation: {L.functional_equation_ok()}  RH: {L.riemann_hypothesis_ok()}")

# base change: the L-polynomial over F_{q^m} comes from the same eigenvalues
L = l_polynomial(ArtinSchreier(2, 2, 3))
print("y^2 + y = x^3 over F_4 ->", list(L.base_change(2).coeffs), " over F_8 ->", list(L.base_change(3).coeffs))
