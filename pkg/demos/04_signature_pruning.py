"""Duplicate templates and how fingerprinting removes them.

Different-looking templates often compute the same robustness function; "not
x < c" is just "x > c".  Before any fitting work, each template is evaluated
on a few probe traces under a few seeded parameter draws, and the resulting
matrix of robustness values is its fingerprint.  Matching fingerprints mean
the template is dropped.
"""
from stlmine import (
    Dataset,
    LearnerConfig,
    SignatureConfig,
    SignatureIndex,
    Trace,
    default_bounds,
    learn,
    parse_formula,
)

ds = Dataset(
    [Trace({"x": [0.0, 2.0, 5.0, 3.0]}, 1.0), Trace({"x": [1.0, 1.5, 0.5, 2.0]}, 1.0)],
    [1, 0],
)
index = SignatureIndex(SignatureConfig(), ds)

a = parse_formula("x > $c")
b = parse_formula("not x < $c")
print("insert", a, "->", index.check_and_insert(a, ds))   # new fingerprint
print("insert", b, "->", index.check_and_insert(b, ds))   # duplicate of a
print("kept template for", b, "is:", index.lookup(b, ds))

# the fingerprint matrix itself: probe traces x seeded valuations
space = default_bounds(a, ds)
dim, shape, _ = index.fingerprint(a, space)
print(f"fingerprint: {dim} parameter(s), matrix shape {shape}")

# inside the learner the check runs before any boundary search, so duplicates
# cost one batch of monitor calls instead of a full fit; flat traces even
# collapse "eventually" onto "always", which prunes whole template families
flat = Dataset(
    [Trace({"x": [5.0] * 4}, 1.0) for _ in range(2)]
    + [Trace({"x": [9.0] * 4}, 1.0), Trace({"x": [1.0] * 4}, 1.0)],
    [1, 1, 0, 0],
)
with_pruning = learn(flat, cfg=LearnerConfig(max_length=3))
without = learn(flat, cfg=LearnerConfig(max_length=3, use_signatures=False))
print("\nlearning flat band data (no single threshold works), max length 3:")
print(f"  with signatures:    {with_pruning.stats.templates_tried} tried, "
      f"{with_pruning.stats.templates_pruned} pruned")
print(f"  without signatures: {without.stats.templates_tried} tried, "
      f"{without.stats.templates_pruned} pruned")
print("  same classifier either way:", with_pruning.classifier.formula)
