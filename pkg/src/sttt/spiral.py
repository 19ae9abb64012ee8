"""Counterclockwise spiral numbering of a square grid and its ring layers.

An n x n grid is numbered 1..n^2 starting in the top-left corner and walking
counterclockwise: down the left edge first, then right, up, left, turning
inward whenever the walk would leave the grid or hit a numbered cell.  The
grid decomposes into floor((n+1)/2) concentric layers counted from the
innermost (layer 1) outward; a layer's sorted label list is its level set.
Because the walk finishes each ring before moving inward, every level set is
a consecutive block of labels.
"""

from __future__ import annotations

from functools import lru_cache


class InvalidSizeError(ValueError):
    """Side length outside the supported range."""


class InvalidLayerError(ValueError):
    """Layer index outside 1..layer_count."""


# walk directions in turn order: down, right, up, left
_STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class NumberedSquare:
    """Spiral-numbered n x n grid with its layer decomposition.

    Cells are (row, col) pairs, 0-indexed from the top-left; labels run
    1..n^2.  Instances are immutable; build them through
    :func:`spiral_numbering`, which caches per size.
    """

    __slots__ = ("n", "_grid", "_cells", "_layers", "_level_sets")

    def __init__(self, n: int):
        if n < 1:
            raise InvalidSizeError(f"side length must be a positive integer, got {n}")
        self.n = n
        n_sq = n * n
        grid = [[0] * n for _ in range(n)]
        cells: list[tuple[int, int]] = [(-1, -1)] * (n_sq + 1)
        r = c = d = 0
        for label in range(1, n_sq + 1):
            grid[r][c] = label
            cells[label] = (r, c)
            if label == n_sq:
                break
            for _ in range(4):
                dr, dc = _STEPS[d]
                nr, nc = r + dr, c + dc
                if 0 <= nr < n and 0 <= nc < n and grid[nr][nc] == 0:
                    r, c = nr, nc
                    break
                d = (d + 1) % 4
            else:  # pragma: no cover - the walk can always continue until full
                raise AssertionError("spiral walk blocked before filling the grid")

        count = (n + 1) // 2
        layers = [0] * (n_sq + 1)
        buckets: list[list[int]] = [[] for _ in range(count + 1)]
        for label in range(1, n_sq + 1):
            row, col = cells[label]
            k = count - min(row, col, n - 1 - row, n - 1 - col)
            layers[label] = k
            buckets[k].append(label)
        level_sets = []
        for k in range(1, count + 1):
            ring = sorted(buckets[k])
            # each ring must be a consecutive label block; a gap is a walk bug
            assert ring == list(range(ring[0], ring[0] + len(ring)))
            level_sets.append(tuple(ring))

        self._grid = tuple(tuple(row) for row in grid)
        self._cells = tuple(cells)
        self._layers = tuple(layers)
        self._level_sets = tuple(level_sets)

    @property
    def n_sq(self) -> int:
        return self.n * self.n

    @property
    def layer_count(self) -> int:
        return len(self._level_sets)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        """Labels in row-major order, one tuple per grid row."""
        return self._grid

    def label_at(self, row: int, col: int) -> int:
        if not (0 <= row < self.n and 0 <= col < self.n):
            raise IndexError(f"cell ({row}, {col}) outside a {self.n}x{self.n} grid")
        return self._grid[row][col]

    def cell_of(self, label: int) -> tuple[int, int]:
        self._check_label(label)
        return self._cells[label]

    def layer_of(self, label: int) -> int:
        self._check_label(label)
        return self._layers[label]

    def level_set(self, k: int) -> tuple[int, ...]:
        """Sorted labels of layer k (1 = innermost)."""
        if not (1 <= k <= self.layer_count):
            raise InvalidLayerError(
                f"layer {k} invalid for n={self.n}; expected 1..{self.layer_count}"
            )
        return self._level_sets[k - 1]

    def _check_label(self, label: int) -> None:
        if not (1 <= label <= self.n_sq):
            raise ValueError(f"label {label} outside 1..{self.n_sq}")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NumberedSquare):
            return self.n == other.n and self._grid == other._grid
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("NumberedSquare", self.n))

    def __repr__(self) -> str:
        return f"NumberedSquare(n={self.n})"


@lru_cache(maxsize=None)
def spiral_numbering(n: int) -> NumberedSquare:
    """The spiral numbering of an n x n grid (cached per n)."""
    return NumberedSquare(n)


def level_set(sq: NumberedSquare, k: int) -> tuple[int, ...]:
    return sq.level_set(k)
