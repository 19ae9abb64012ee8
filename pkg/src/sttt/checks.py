"""Seeded randomized self-checks of the core invariants.

Each suite draws a fixed number of cases from its own deterministic RNG and
reports how many failed, keeping the first counterexample for diagnosis.
The game suites draw random legal playouts on 2x2 and 3x3 boards; the board
suites draw random boards up to 5x5.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .board import (
    Board,
    act_board,
    canonical_form,
    from_bitstring,
    to_bitstring,
)
from .dihedral import group_elements
from .game import (
    GameState,
    act_game,
    apply_move,
    final_board,
    is_valid_game,
    legal_moves,
)

SUITE_NAMES = (
    "board-action-law",
    "x-count-invariance",
    "canonical-orbit-constancy",
    "bitstring-round-trip",
    "game-action-validity",
    "replay-action-commutation",
)


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int
    skipped: int = 0
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, detail: str) -> None:
        self.failures += 1
        if self.first_failure is None:
            self.first_failure = detail

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "skipped": self.skipped,
            "ok": self.ok,
            "first_failure": self.first_failure,
        }


def random_board(rng: random.Random, sizes=(2, 3, 4, 5)) -> Board:
    n = rng.choice(sizes)
    n_sq = n * n
    cells = [(i, j) for i in range(1, n_sq + 1) for j in range(1, n_sq + 1)]
    k = rng.randint(0, len(cells))
    return Board(n, frozenset(rng.sample(cells, k)))


def random_element(rng: random.Random, n: int):
    elems = group_elements(n)
    return elems[rng.randrange(len(elems))]


def random_valid_game(rng: random.Random, n: int) -> tuple:
    """A random legal playout, stopped early at a random length."""
    state = GameState.initial(n)
    stop = rng.randint(0, 4 * n * n)
    while not state.terminal and len(state.moves) < stop:
        state = apply_move(state, rng.choice(sorted(legal_moves(state))))
    return state.moves


def _suite_board_action_law(result: SuiteResult, rng: random.Random) -> None:
    for _ in range(result.cases):
        b = random_board(rng)
        g = random_element(rng, b.n)
        h = random_element(rng, b.n)
        if act_board(act_board(b, h), g) != act_board(b, g * h):
            result.record(f"n={b.n} g=({g.a},{g.b}) h=({h.a},{h.b}) xs={sorted(b.xs)}")


def _suite_x_count(result: SuiteResult, rng: random.Random) -> None:
    for _ in range(result.cases):
        b = random_board(rng)
        g = random_element(rng, b.n)
        if act_board(b, g).x_count != b.x_count:
            result.record(f"n={b.n} g=({g.a},{g.b}) xs={sorted(b.xs)}")


def _suite_canonical_constancy(result: SuiteResult, rng: random.Random) -> None:
    for _ in range(result.cases):
        b = random_board(rng, sizes=(2, 3))
        g = random_element(rng, b.n)
        if canonical_form(act_board(b, g)) != canonical_form(b):
            result.record(f"n={b.n} g=({g.a},{g.b}) xs={sorted(b.xs)}")


def _suite_round_trip(result: SuiteResult, rng: random.Random) -> None:
    for _ in range(result.cases):
        n = rng.choice((2, 3, 4, 5))
        if rng.random() < 0.5:
            bits = "".join(rng.choice("01") for _ in range(n**4))
            if to_bitstring(from_bitstring(bits, n)) != bits:
                result.record(f"n={n} bits={bits}")
        else:
            b = random_board(rng, sizes=(n,))
            if from_bitstring(to_bitstring(b), n) != b:
                result.record(f"n={n} xs={sorted(b.xs)}")


def _suite_game_action_validity(result: SuiteResult, rng: random.Random) -> None:
    for _ in range(result.cases):
        n = rng.choice((2, 3))
        moves = random_valid_game(rng, n)
        g = random_element(rng, n)
        try:
            mapped = act_game(moves, g)
        except AssertionError as err:
            result.record(f"n={n} g=({g.a},{g.b}) {err}")
            continue
        check = is_valid_game(mapped, n)
        if not check.valid:
            result.record(
                f"n={n} g=({g.a},{g.b}) game={[tuple(m) for m in moves]} "
                f"-> invalid at move {check.index} ({check.rule})"
            )


def _suite_commutation(result: SuiteResult, rng: random.Random) -> None:
    """final_board of the acted game equals the acted final board.

    Games whose image does not replay legally are counted as skipped here;
    the game-action-validity suite owns those findings.
    """
    for _ in range(result.cases):
        n = rng.choice((2, 3))
        moves = random_valid_game(rng, n)
        g = random_element(rng, n)
        mapped = tuple((g(i), g(j)) for i, j in moves)
        if not is_valid_game(mapped, n).valid:
            result.skipped += 1
            continue
        if final_board(mapped, n) != act_board(final_board(moves, n), g):
            result.record(f"n={n} g=({g.a},{g.b}) game={[tuple(m) for m in moves]}")


_SUITES = {
    "board-action-law": _suite_board_action_law,
    "x-count-invariance": _suite_x_count,
    "canonical-orbit-constancy": _suite_canonical_constancy,
    "bitstring-round-trip": _suite_round_trip,
    "game-action-validity": _suite_game_action_validity,
    "replay-action-commutation": _suite_commutation,
}


def run_suite(name: str, cases: int = 10_000, seed: int = 0) -> SuiteResult:
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    # each suite gets an independent deterministic stream
    rng = random.Random(seed * len(SUITE_NAMES) + SUITE_NAMES.index(name))
    result = SuiteResult(name=name, cases=cases, failures=0)
    _SUITES[name](result, rng)
    return result


def run_all(cases: int = 10_000, seed: int = 0) -> list[SuiteResult]:
    return [run_suite(name, cases=cases, seed=seed) for name in SUITE_NAMES]
