"""Rules engine for impartial misere super tic-tac-toe.

Both players place X.  A move (i, j) marks position j of field i.  The
position of each move dictates the field of the next one: after (i, j) the
next move must be in field j if that field is still open; if field j is
closed the next player may use any open field.  The first move is free.

A field closes as WON the moment it holds n collinear X's (row, column, or
either diagonal of its grid) and its square on the board grid is marked; a
field that somehow fills without a line closes as FULL and is marked too,
since every mark is an X in the impartial game.  The game ends the moment
the board grid holds n collinear marks, and the player who made that move
loses.  Should a position ever run out of moves without a board line, it is
flagged as a terminal draw.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, NamedTuple

from .board import Board
from .dihedral import GroupElement, group_elements
from .spiral import spiral_numbering


class IllegalMoveError(ValueError):
    """A move that breaks the rules; ``rule`` names the violated rule."""

    def __init__(self, rule: str, message: str, index: int | None = None):
        super().__init__(message)
        self.rule = rule
        self.index = index


class TerminalStateError(ValueError):
    """No moves exist: the game is over."""


class InvalidGameError(ValueError):
    """A move sequence that does not replay legally from the empty board."""


class FieldStatus(Enum):
    OPEN = "open"
    WON = "won"
    FULL = "full"

    @property
    def closed(self) -> bool:
        return self is not FieldStatus.OPEN


class Move(NamedTuple):
    field: int
    pos: int


class GameValidation(NamedTuple):
    valid: bool
    index: int | None  # 1-based index of the first offending move
    rule: str | None
    message: str | None


@lru_cache(maxsize=None)
def grid_lines(n: int) -> tuple[frozenset[int], ...]:
    """Label sets of all n-in-a-row lines of the n x n grid."""
    sq = spiral_numbering(n)
    lines = {frozenset(sq.label_at(r, c) for c in range(n)) for r in range(n)}
    lines |= {frozenset(sq.label_at(r, c) for r in range(n)) for c in range(n)}
    lines.add(frozenset(sq.label_at(i, i) for i in range(n)))
    lines.add(frozenset(sq.label_at(i, n - 1 - i) for i in range(n)))
    return tuple(sorted(lines, key=sorted))


@lru_cache(maxsize=None)
def _lines_through(n: int) -> tuple[tuple[frozenset[int], ...], ...]:
    """For each label (index label-1), the lines containing it."""
    through: list[list[frozenset[int]]] = [[] for _ in range(n * n)]
    for line in grid_lines(n):
        for label in line:
            through[label - 1].append(line)
    return tuple(tuple(ls) for ls in through)


@dataclass(frozen=True)
class GameState:
    """Immutable snapshot of a game in progress.

    ``field_cells[i-1]`` holds the X positions of field i; ``marks`` the
    labels of board squares marked X; ``dictated`` the field the next move
    must obey (None only before the first move).  ``loser`` is 1 or 2 once a
    board line is completed, per the parity of the terminal move.
    """

    n: int
    moves: tuple[Move, ...]
    field_cells: tuple[frozenset[int], ...]
    field_status: tuple[FieldStatus, ...]
    marks: frozenset[int]
    dictated: int | None
    terminal: bool
    loser: int | None = None
    draw: bool = False

    @classmethod
    def initial(cls, n: int) -> GameState:
        if n < 1:
            raise ValueError(f"side length must be a positive integer, got {n}")
        n_sq = n * n
        return cls(
            n=n,
            moves=(),
            field_cells=(frozenset(),) * n_sq,
            field_status=(FieldStatus.OPEN,) * n_sq,
            marks=frozenset(),
            dictated=None,
            terminal=False,
        )

    @property
    def history(self) -> tuple[Move, ...]:
        return self.moves

    @property
    def board(self) -> Board:
        return Board(
            self.n,
            frozenset(
                (f + 1, p) for f, cells in enumerate(self.field_cells) for p in cells
            ),
        )

    @property
    def board_marks(self) -> frozenset[int]:
        return self.marks

    def status_of(self, field: int) -> FieldStatus:
        return self.field_status[field - 1]

    def open_fields(self) -> tuple[int, ...]:
        return tuple(
            f + 1 for f, st in enumerate(self.field_status) if st is FieldStatus.OPEN
        )


def legal_moves(state: GameState) -> set[Move]:
    """Every move the next player may make."""
    if state.terminal:
        raise TerminalStateError("the game is over; no moves remain")
    n_sq = state.n * state.n
    if (
        state.dictated is not None
        and state.field_status[state.dictated - 1] is FieldStatus.OPEN
    ):
        fields: Iterable[int] = (state.dictated,)
    else:
        fields = state.open_fields()
    out = set()
    for f in fields:
        cells = state.field_cells[f - 1]
        for p in range(1, n_sq + 1):
            if p not in cells:
                out.add(Move(f, p))
    return out


def _check_legal(state: GameState, move: Move) -> None:
    if state.terminal:
        raise IllegalMoveError("terminal game", "the game is already over")
    field, pos = move
    n_sq = state.n * state.n
    if not (1 <= field <= n_sq and 1 <= pos <= n_sq):
        raise IllegalMoveError(
            "out of range", f"move ({field}, {pos}) outside 1..{n_sq} labels"
        )
    if state.field_status[field - 1].closed:
        raise IllegalMoveError("closed field", f"field {field} is closed")
    if (
        state.dictated is not None
        and state.field_status[state.dictated - 1] is FieldStatus.OPEN
        and field != state.dictated
    ):
        raise IllegalMoveError(
            "wrong field",
            f"move dictated into open field {state.dictated}, not field {field}",
        )
    if pos in state.field_cells[field - 1]:
        raise IllegalMoveError(
            "occupied cell", f"position {pos} of field {field} is already an X"
        )


def apply_move(state: GameState, move: Move) -> GameState:
    """Place an X and return the resulting state; raises IllegalMoveError."""
    move = Move(*move)
    _check_legal(state, move)
    field, pos = move
    n = state.n
    n_sq = n * n

    cells = state.field_cells[field - 1] | {pos}
    field_cells = (
        state.field_cells[: field - 1] + (cells,) + state.field_cells[field:]
    )

    status = FieldStatus.OPEN
    if any(line <= cells for line in _lines_through(n)[pos - 1]):
        status = FieldStatus.WON
    elif len(cells) == n_sq:
        status = FieldStatus.FULL
    field_status = state.field_status
    marks = state.marks
    terminal = False
    loser = None
    if status is not FieldStatus.OPEN:
        field_status = (
            field_status[: field - 1] + (status,) + field_status[field:]
        )
        marks = marks | {field}
        if any(line <= marks for line in _lines_through(n)[field - 1]):
            terminal = True
            loser = 1 if (len(state.moves) + 1) % 2 else 2

    new = GameState(
        n=n,
        moves=state.moves + (move,),
        field_cells=field_cells,
        field_status=field_status,
        marks=marks,
        dictated=pos,
        terminal=terminal,
        loser=loser,
    )
    if not terminal and not new.open_fields():
        # every field closed without a board line; cannot arise in impartial
        # play (all marks are X) but kept as a guarded terminal state
        new = dataclasses.replace(new, terminal=True, draw=True)
    return new


def replay(moves: Iterable[Move | tuple[int, int]], n: int) -> GameState:
    """Replay a move sequence from the empty board.

    Raises IllegalMoveError (with the 1-based move index) on the first
    violation, including a move made after the game ended.
    """
    state = GameState.initial(n)
    for idx, mv in enumerate(moves, 1):
        try:
            state = apply_move(state, Move(*mv))
        except IllegalMoveError as err:
            err.index = idx
            raise
    return state


def is_valid_game(moves: Iterable[Move | tuple[int, int]], n: int) -> GameValidation:
    try:
        replay(moves, n)
    except IllegalMoveError as err:
        return GameValidation(False, err.index, err.rule, str(err))
    except ValueError as err:
        return GameValidation(False, None, "malformed", str(err))
    return GameValidation(True, None, None, None)


def final_board(moves: Iterable[Move | tuple[int, int]], n: int) -> Board:
    """Replay and return the ending board."""
    return replay(moves, n).board


def _map_moves(moves: tuple[Move, ...], elem: GroupElement) -> tuple[Move, ...]:
    g = elem.perm
    return tuple(Move(g(i), g(j)) for i, j in moves)


def act_game(
    moves: Iterable[Move | tuple[int, int]], elem: GroupElement
) -> tuple[Move, ...]:
    """Transform every move (i, j) to (g(i), g(j)).

    The input must be a valid game.  While debugging, the output is checked
    to replay legally as well.
    """
    moves = tuple(Move(*m) for m in moves)
    check = is_valid_game(moves, elem.n)
    if not check.valid:
        raise InvalidGameError(
            f"input game invalid at move {check.index}: {check.message}"
        )
    mapped = _map_moves(moves, elem)
    assert is_valid_game(mapped, elem.n).valid, (
        f"action a={elem.a} b={elem.b} broke game {list(moves)}: "
        f"{is_valid_game(mapped, elem.n).message}"
    )
    return mapped


def game_orbit(
    moves: Iterable[Move | tuple[int, int]], n: int
) -> frozenset[tuple[Move, ...]]:
    """All images of a valid game under the 2m group elements."""
    moves = tuple(Move(*m) for m in moves)
    check = is_valid_game(moves, n)
    if not check.valid:
        raise InvalidGameError(
            f"input game invalid at move {check.index}: {check.message}"
        )
    orbit = set()
    for elem in group_elements(n):
        mapped = _map_moves(moves, elem)
        assert is_valid_game(mapped, n).valid, (
            f"action a={elem.a} b={elem.b} broke game {list(moves)}"
        )
        orbit.add(mapped)
    return frozenset(orbit)
