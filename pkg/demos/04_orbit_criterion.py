"""Character orbits predict supersingularity; exact eigenvalues confirm it."""

from weilss import (
    ArtinSchreier,
    FermatCurve,
    ThreePointCover,
    character_data,
    eigenvalues_exact,
    is_supersingular,
    l_polynomial,
    l_polynomial_from_eigenvalues,
    minus_one_power_condition,
    predict,
)

print("smallest s with 2^s = -1 (mod n):", {n: minus_one_power_condition(2, n) for n in (3, 5, 7, 9, 11)})

for C in [ArtinSchreier(2, 2, 5), ArtinSchreier(2, 2, 7), FermatCurve(5, 2), FermatCurve(4, 5),
          ThreePointCover(3, 1, 1, 7)]:
    G, F, chars = character_data(C)
    pred = predict(C)
    verdict = is_supersingular(l_polynomial(C))
    print(f"{C}: group {G.factor_orders}, {len(chars)} characters")
    print(f"  orbits {[len(o) for o in pred.sufficient.orbits]}, prediction {pred.prediction}, "
          f"computed {'supersingular' if verdict.supersingular else 'not-supersingular'}, "
          f"slopes {verdict.slopes.to_json()}")

# y^3 = x (1 - x) over F_7: orbits of length one, eigenvalues are Jacobi sums
C = ThreePointCover(3, 1, 1, 7)
for orbit in eigenvalues_exact(C):
    print("orbit", [c.exponents for c in orbit.orbit], "eigenvalue", orbit.mu, "~", orbit.mu.to_complex())
print("product of (1 - mu T^f):", list(l_polynomial_from_eigenvalues(C).coeffs), "=", list(l_polynomial(C).coeffs))
