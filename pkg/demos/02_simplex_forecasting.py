"""Self-prediction skill separates deterministic chaos from noise.

A chaotic map forecasts almost perfectly one step ahead once the state
space is reconstructed; uniform noise stays unpredictable at every
dimension. The skill curve over E is also how the pipeline picks each
series' embedding dimension.

Run: python demos/02_simplex_forecasting.py
"""

from crossmap import EmbeddingSpec, logistic_map, optimal_embedding, simplex_self_predict, uniform_noise

chaos = logistic_map(2000, seed=11, r=3.8)
noise = uniform_noise(2000, seed=5)

print("one-step self-prediction skill (rho), E = 1..10")
print(" E   logistic   noise")
for e in range(1, 11):
    spec = EmbeddingSpec(e, tau=1)
    rho_chaos = simplex_self_predict(chaos, spec, tp=1)
    rho_noise = simplex_self_predict(noise, spec, tp=1)
    print(f"{e:2d}   {rho_chaos: .4f}   {rho_noise: .4f}")

best_chaos = optimal_embedding(chaos, e_max=10)
best_noise = optimal_embedding(noise, e_max=10)
print(f"\noptimal dimension: logistic E*={best_chaos.e_star} "
      f"(rho {best_chaos.rho_by_e[best_chaos.e_star]:.4f}), "
      f"noise E*={best_noise.e_star} "
      f"(rho {best_noise.rho_by_e[best_noise.e_star]:.4f})")

# Longer horizons decay for chaos (sensitive dependence), stay flat for noise.
print("\nhorizon sweep at E=2 (logistic):")
for tp in (1, 2, 4, 8):
    print(f"  tp={tp}: rho {simplex_self_predict(chaos, EmbeddingSpec(2, 1), tp=tp):.4f}")
