from __future__ import annotations

from typing import Iterable, Sequence

from mathrepro.errors import InvalidInput


class IntMatrix:
    """Immutable dense integer matrix, entries stored row-major."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: Iterable[int]):
        entries = tuple(entries)
        if nrows < 1 or ncols < 1:
            raise InvalidInput(f"matrix dimensions must be positive, got {nrows}x{ncols}")
        if len(entries) != nrows * ncols:
            raise InvalidInput(f"{nrows}x{ncols} matrix needs {nrows * ncols} entries, got {len(entries)}")
        for e in entries:
            if isinstance(e, bool) or not isinstance(e, int):
                raise InvalidInput(f"matrix entries must be integers, got {e!r}")
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise InvalidInput("matrix must have at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise InvalidInput("rows have different lengths")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def diagonal(cls, diag: Sequence[int], nrows: int | None = None, ncols: int | None = None) -> IntMatrix:
        nrows = len(diag) if nrows is None else nrows
        ncols = nrows if ncols is None else ncols
        rows = [[0] * ncols for _ in range(nrows)]
        for i, d in enumerate(diag):
            rows[i][i] = d
        return cls.from_rows(rows)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.diagonal([1] * n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def rows(self) -> list[list[int]]:
        c = self.ncols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.nrows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self.entries[i * self.ncols + j]

    def diagonal_entries(self) -> list[int]:
        return [self[i, i] for i in range(min(self.nrows, self.ncols))]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        width = max(len(str(e)) for e in self.entries)
        return "\n".join("[" + " ".join(str(e).rjust(width) for e in row) + "]" for row in self.rows())
