"""Ground-truth class assignments over a node set."""

from __future__ import annotations

from dataclasses import dataclass


class LabelError(ValueError):
    """Raised for malformed label assignments or label files."""


@dataclass(frozen=True)
class LabelFunction:
    """Total map node -> class id in [0, k); every class non-empty."""

    labels: tuple[int, ...]
    k: int

    @property
    def n(self) -> int:
        return len(self.labels)

    def __post_init__(self) -> None:
        if not self.labels:
            raise LabelError("label function needs at least one node")
        if self.k < 1:
            raise LabelError(f"class count must be >= 1, got {self.k}")
        present = set(self.labels)
        if min(present) < 0 or max(present) >= self.k:
            raise LabelError(f"class ids must lie in [0, {self.k}), got {sorted(present)}")
        missing = set(range(self.k)) - present
        if missing:
            raise LabelError(f"empty classes: {sorted(missing)}")

    def class_members(self) -> list[list[int]]:
        members: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.labels):
            members[c].append(v)
        return members


def label_function(labels) -> LabelFunction:
    """Build a LabelFunction inferring k = max class id + 1."""
    labels = tuple(int(c) for c in labels)
    if not labels:
        raise LabelError("label function needs at least one node")
    return LabelFunction(labels, max(labels) + 1)


def write_labels_text(f: LabelFunction) -> str:
    """One `node_id class_id` line per node."""
    return "\n".join(f"{v} {c}" for v, c in enumerate(f.labels)) + "\n"


def read_labels_text(text: str) -> LabelFunction:
    """Parse `node_id class_id` lines; ids must cover [0, n) exactly."""
    assignment: dict[int, int] = {}
    rows = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise LabelError("empty label file")
    for lineno, row in enumerate(rows, start=1):
        parts = row.split()
        if len(parts) != 2:
            raise LabelError(f"line {lineno}: expected 'node_id class_id', got {row!r}")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise LabelError(f"line {lineno}: non-integer field in {row!r}") from exc
        if v in assignment:
            raise LabelError(f"line {lineno}: duplicate node id {v}")
        if c < 0:
            raise LabelError(f"line {lineno}: negative class id {c}")
        assignment[v] = c
    n = len(assignment)
    if set(assignment) != set(range(n)):
        raise LabelError(f"node ids must cover 0..{n - 1} exactly")
    labels = tuple(assignment[v] for v in range(n))
    k = max(labels) + 1
    present = set(labels)
    gaps = set(range(k)) - present
    if gaps:
        raise LabelError(f"class ids have gaps (missing {sorted(gaps)})")
    return LabelFunction(labels, k)


def save_labels(f: LabelFunction, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(write_labels_text(f))


def load_labels(path) -> LabelFunction:
    with open(path, "r", encoding="ascii") as fh:
        return read_labels_text(fh.read())
