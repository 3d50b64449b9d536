"""
Scoring design sets with the likeability index
==============================================

Annotators vote like/dislike on every design in a set. The likeability
index is the largest x such that at least x percent of the designs are
liked by at least x percent of the judges, so a single loved or hated
design barely moves it. Comparing indices before and after pruning shows
whether the model removed the right designs.
"""

import numpy as np

from craftgen import AnnotationMatrix, compare_report, likeability_report

rng = np.random.default_rng(30)

# Raw set: 40 designs, 20 judges, mixed quality.
quality = rng.uniform(0.2, 0.9, size=40)
raw_votes = rng.random((40, 20)) < quality[:, None]
raw = AnnotationMatrix(raw_votes)

# Pruned set: the 25 designs with the highest like rates survive.
order = np.argsort(raw_votes.mean(axis=1))[::-1]
pruned = AnnotationMatrix(raw_votes[order[:25]])

for name, matrix in (("raw", raw), ("pruned", pruned)):
    report = likeability_report(matrix)
    print(f"{name}: index {report.index}, "
          f"mean like-rate {np.mean(report.rates):.2f}")

# The comparison report renders as an aligned table or as CSV.
report = compare_report([("raw", raw), ("pruned", pruned)])
print()
print(report.to_text(), end="")
print()
print("as csv:")
print(report.to_csv_text(), end="")

# Round trip through the CSV interchange format.
text = pruned.to_csv_text()
again = AnnotationMatrix.from_csv_text(text)
assert np.array_equal(again.votes, pruned.votes)
print(f"\ncsv round trip preserved all {pruned.n_designs * pruned.n_judges} votes")
