"""Likeability scoring of design sets from judge annotations.

The likeability index is the largest integer x in [0, 100] such that at
least x% of the designs are liked by at least x% of the judges, in the
spirit of the h-index. Vote matrices travel as CSV: a header row of judge
ids, then one row per design with 0/1 cells.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class AnnotationMatrix:
    """A designs x judges boolean vote matrix; every cell populated."""

    votes: np.ndarray
    design_ids: tuple[str, ...] = ()
    judge_ids: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        arr = np.array(self.votes, dtype=bool, order="C")  # copy: caller keeps write access
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("votes must be a non-empty designs x judges matrix")
        arr.setflags(write=False)
        object.__setattr__(self, "votes", arr)
        if not self.design_ids:
            object.__setattr__(
                self, "design_ids", tuple(f"design_{i}" for i in range(arr.shape[0]))
            )
        if not self.judge_ids:
            object.__setattr__(
                self, "judge_ids", tuple(f"judge_{j}" for j in range(arr.shape[1]))
            )
        if len(self.design_ids) != arr.shape[0] or len(self.judge_ids) != arr.shape[1]:
            raise ValueError("id lists must match the matrix dimensions")

    @property
    def n_designs(self) -> int:
        return self.votes.shape[0]

    @property
    def n_judges(self) -> int:
        return self.votes.shape[1]

    def to_csv_text(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["design", *self.judge_ids])
        for i, row in enumerate(self.votes):
            writer.writerow([self.design_ids[i], *(int(v) for v in row)])
        return out.getvalue()

    @classmethod
    def from_csv_text(cls, text: str) -> "AnnotationMatrix":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if not header or len(header) < 2:
            raise ValueError("annotation CSV needs a judge-id header row")
        judge_ids = tuple(h.strip() for h in header[1:])
        design_ids = []
        rows = []
        for line in reader:
            if not line:
                continue
            design_ids.append(line[0].strip())
            cells = [cell.strip() for cell in line[1:]]
            if len(cells) != len(judge_ids):
                raise ValueError(f"row {line[0]!r} has {len(cells)} cells, "
                                 f"expected {len(judge_ids)}")
            if any(cell not in ("0", "1") for cell in cells):
                raise ValueError(f"row {line[0]!r} has non-binary cells")
            rows.append([cell == "1" for cell in cells])
        return cls(np.asarray(rows, dtype=bool), tuple(design_ids), judge_ids)


@dataclass(frozen=True)
class LikeabilityReport:
    """The index plus the per-design like-rates it was computed from."""

    index: int
    rates: tuple[float, ...]


def like_rates(m: AnnotationMatrix) -> list[float]:
    """Per design, the fraction of judges who liked it."""
    return [count / m.n_judges for count in m.votes.sum(axis=1)]


def likeability_index(m: AnnotationMatrix) -> int:
    """Largest x in [0, 100] with at least x% designs liked by >= x% judges.

    Thresholds compare with >= on both sides, at integer-percent steps,
    scanning from 100 downward. Comparisons use integer arithmetic so
    vote fractions never lose to float rounding.
    """
    counts = m.votes.sum(axis=1).astype(np.int64)
    n_designs = m.n_designs
    n_judges = m.n_judges
    for x in range(100, -1, -1):
        liked = int((100 * counts >= x * n_judges).sum())
        if 100 * liked >= x * n_designs:
            return x
    return 0


def likeability_report(m: AnnotationMatrix) -> LikeabilityReport:
    return LikeabilityReport(index=likeability_index(m), rates=tuple(like_rates(m)))


@dataclass(frozen=True)
class ComparisonReport:
    """Likeability indices for a set of labeled annotation matrices."""

    rows: tuple[tuple[str, int], ...]

    def to_text(self) -> str:
        width = max(len("set"), max(len(label) for label, _ in self.rows))
        lines = [f"{'set'.ljust(width)}  likeability-index"]
        for label, index in self.rows:
            lines.append(f"{label.ljust(width)}  {index}")
        return "\n".join(lines) + "\n"

    def to_csv_text(self) -> str:
        lines = ["set,likeability_index"]
        for label, index in self.rows:
            lines.append(f"{label},{index}")
        return "\n".join(lines) + "\n"


def compare_report(named: list[tuple[str, AnnotationMatrix]]) -> ComparisonReport:
    """One likeability index per labeled matrix."""
    if not named:
        raise ValueError("at least one labeled matrix is required")
    return ComparisonReport(
        rows=tuple((label, likeability_index(m)) for label, m in named)
    )
