"""Column schema for feature matrices.

A matrix's columns are described by an ordered list of blocks; block
widths always sum to the column count, which output manifests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ColumnBlock:
    """A contiguous group of columns with one meaning."""

    name: str
    offset: int
    width: int
    labels: tuple[str, ...] | None = None  # one per column, when categorical

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != self.width:
            raise ValueError(f"block {self.name!r}: {len(self.labels)} labels for width {self.width}")


def total_width(blocks: list[ColumnBlock]) -> int:
    return sum(b.width for b in blocks)


def column_names(blocks: list[ColumnBlock]) -> list[str]:
    """One name per column, e.g. for CSV headers."""
    names: list[str] = []
    for block in blocks:
        if block.labels is not None:
            names.extend(f"{block.name}:{label}" for label in block.labels)
        elif block.width == 1:
            names.append(block.name)
        else:
            names.extend(f"{block.name}:{i}" for i in range(block.width))
    return names


def prefixed(blocks: list[ColumnBlock], prefix: str, offset: int = 0) -> list[ColumnBlock]:
    """Re-bases blocks for concatenation behind an existing matrix."""
    return [
        ColumnBlock(f"{prefix}{b.name}", b.offset + offset, b.width, b.labels)
        for b in blocks
    ]


def blocks_to_json(blocks: list[ColumnBlock]) -> list[dict]:
    return [
        {
            "name": b.name,
            "offset": b.offset,
            "width": b.width,
            "labels": list(b.labels) if b.labels is not None else None,
        }
        for b in blocks
    ]
