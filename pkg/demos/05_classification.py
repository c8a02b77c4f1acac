"""Local-visibility verdicts across dimensions and density profiles."""

from szekeres import DensityProfile, classify, model

RAPID, GRADUAL = DensityProfile.RAPID_FALLOFF, DensityProfile.GRADUAL_DECREASE

for n in range(2, 7):
    g = classify(model(n, [1.0, -0.3]), GRADUAL)
    r = classify(model(n, [1.0, 0.0, -0.5]), RAPID)
    print(f"n={n}: gradual {g.outcome.value:<13} rapid {r.outcome.value:<13} ({r.case_tag.value})")

v = classify(model(3, [1.0, 0.0, -60.0], [0.5]), RAPID, ortg_inputs=(1.0, -1.2))
print("n=3 deep rapid:", v.outcome.value, v.geodesic_kind.value, "limit", v.details.null_limit)
