"""Template enumeration, shortest formulas first.

A template is a formula whose thresholds and window widths are still open
($-prefixed parameters).  The enumerator emits every template the grammar can
build, ordered by node count, with parameters renamed p1, p2, ... in reading
order so reruns are reproducible.
"""
from stlmine import CallbackResult, Grammar, enumerate_templates

grammar = Grammar.default(["x"])  # atoms: x > $c and x < $c

shown = 0


def show(template, length):
    global shown
    if shown < 14:
        print(f"  length {length}: {template}")
    shown += 1
    return CallbackResult.CONTINUE


print("first templates over one signal:")
report = enumerate_templates(grammar, 3, show)
print(f"  ... {report.emitted - 14} more")
print("per length:", report.per_length)

# "not x > c" duplicates "x < c", so negated atoms are skipped by default;
# turning that off restores the raw grammar counts
raw = Grammar.default(["x"], skip_complement_negation=False)
print("without the skip:", enumerate_templates(raw, 4).per_length)

# counts grow fast with more signals; this is why equivalence pruning and a
# low length cap matter to the learner
two = Grammar.default(["x", "y"], skip_complement_negation=False)
print("two signals:     ", enumerate_templates(two, 4).per_length)
