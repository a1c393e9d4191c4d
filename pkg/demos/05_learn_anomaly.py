"""Learning a watchdog formula for a dip anomaly.

Both classes oscillate above a floor; the anomalous traces dip once below a
gap.  The learner should recover "the signal always stays above a threshold
inside the gap" from the labels alone.
"""
from stlmine import LearnerConfig, gen_anomaly_threshold, learn, mcr, split_dataset

ds = gen_anomaly_threshold(seed=0)  # 50 clean label-1, 50 dipping label-0
train, test = split_dataset(ds, 0.5, seed=0)
print(f"train {train.n} traces, test {test.n} traces")

result = learn(train, cfg=LearnerConfig(threshold=0.1))
c = result.classifier
print("learned:", c.formula)
print("template:", c.template, "with", c.valuation)
print(f"train mcr {c.mcr:.3f}, test mcr {mcr(c.formula, test):.3f}")
print(f"{result.stats.templates_tried} templates tried, "
      f"{result.stats.templates_pruned} pruned, "
      f"{result.stats.boundary_points} boundary points, "
      f"{result.stats.elapsed_s:.1f} s")
