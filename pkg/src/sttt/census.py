"""Exhaustive census of winning boards and their isomorphism classes.

A winning board is the final board of a completed game: the position at the
moment a move completes n collinear marks on the board grid.  The census
walks the full game tree depth first, pruning with a transposition set keyed
on (cells, effective dictated field), collects the terminal boards, and
partitions them into orbits of the dihedral action.  Classes are reported in
a deterministic order: by orbit size, then by canonical bitstring.

The same class structure can be read back from two formats: newline
delimited JSON (one class per line) and a human readable listing whose
classes are parenthesized, comma separated tuples of bitstrings, possibly
spanning lines.  A known-good listing for n=2 ships with the package.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .board import act_board, from_bitstring, to_bitstring
from .dihedral import group_elements
from .game import GameState, Move, apply_move, legal_moves

_WIDE_SEARCH_HELP = (
    "the exhaustive census is sized for n=2; pass allow_large=True to search "
    "larger boards anyway (runtime grows steeply)"
)


class ClosureError(ValueError):
    """A board set that is not closed under the group action."""


class ListingParseError(ValueError):
    """Malformed class listing; ``line`` is the offending 1-based line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class IsoClass:
    """One isomorphism class: sorted member bitstrings and their minimum."""

    canonical: str
    members: tuple[str, ...]

    @property
    def orbit_size(self) -> int:
        return len(self.members)

    @classmethod
    def from_members(cls, members) -> IsoClass:
        ordered = tuple(sorted(members))
        return cls(canonical=ordered[0], members=ordered)


def _transposition_key(state: GameState):
    dictated = state.dictated
    if dictated is not None and state.field_status[dictated - 1].closed:
        dictated = None  # a closed dictation is a free move, whatever the label
    return (state.field_cells, dictated)


def _search(start: GameState) -> set[str]:
    found: set[str] = set()
    seen = set()
    stack = [start]
    while stack:
        state = stack.pop()
        key = _transposition_key(state)
        if key in seen:
            continue
        seen.add(key)
        for move in legal_moves(state):
            nxt = apply_move(state, move)
            if nxt.terminal:
                if nxt.loser is not None:
                    found.add(to_bitstring(nxt.board))
            else:
                stack.append(nxt)
    return found


def _first_move_boards(args: tuple[int, int, int]) -> set[str]:
    n, field, pos = args
    return _search(apply_move(GameState.initial(n), Move(field, pos)))


def enumerate_winning_boards(
    n: int = 2, allow_large: bool = False, jobs: int = 1
) -> frozenset[str]:
    """Bitstrings of every reachable winning board, deduplicated.

    With jobs > 1 the first moves partition the root and the subtrees are
    searched in separate processes; the result is identical either way.
    """
    if n != 2 and not allow_large:
        raise ValueError(_WIDE_SEARCH_HELP)
    if jobs <= 1:
        return frozenset(_search(GameState.initial(n)))
    start = GameState.initial(n)
    tasks = [(n, mv.field, mv.pos) for mv in sorted(legal_moves(start))]
    merged: set[str] = set()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_first_move_boards, tasks):
            merged |= part
    return frozenset(merged)


def partition_classes(boards, n: int) -> list[IsoClass]:
    """Partition a closed set of board bitstrings into group orbits.

    Raises ClosureError naming an offending pair if some image escapes the
    input set.
    """
    pool = set(boards)
    elems = group_elements(n)
    orbits: dict[str, tuple[str, ...]] = {}
    for bits in sorted(pool):
        board = from_bitstring(bits, n)
        images = tuple(to_bitstring(act_board(board, g)) for g in elems)
        for g, img in zip(elems, images):
            if img not in pool:
                raise ClosureError(
                    f"board {bits} maps to {img} under sigma^{g.a} rho^{g.b}, "
                    "which is not in the input set"
                )
        orbits[bits] = images
    classes = []
    assigned: set[str] = set()
    for bits in sorted(pool):
        if bits in assigned:
            continue
        members = frozenset(orbits[bits])
        assigned |= members
        classes.append(IsoClass.from_members(members))
    classes.sort(key=lambda c: (c.orbit_size, c.canonical))
    return classes


def size_histogram(classes) -> dict[int, int]:
    hist: dict[int, int] = {}
    for cls in classes:
        hist[cls.orbit_size] = hist.get(cls.orbit_size, 0) + 1
    return dict(sorted(hist.items()))


# a candidate class tuple: parenthesized 0/1 strings separated by commas
_TUPLE_RE = re.compile(r"\(([\s,01]+)\)")
_COUNT_RE = re.compile(
    r"(\d+)\s+isomorphism\s+class(?:es)?\s+of\s+order\s+(\d+)", re.I
)


def parse_census_text(text: str, n: int = 2) -> list[IsoClass]:
    """Read classes from a listing of parenthesized bitstring tuples.

    Tuples may span lines; prose outside parentheses, and parenthesized text
    that is not made of 0/1 strings, is ignored.  A tuple containing a string
    of the wrong length raises ListingParseError with its line number.
    """
    want = n * n * n * n
    classes = []
    for m in _TUPLE_RE.finditer(text):
        body = m.group(1).strip()
        if not body:
            continue
        parts = [p.strip() for p in re.split(r"\s*,\s*", body)]
        line = text.count("\n", 0, m.start()) + 1
        for part in parts:
            if not part or set(part) - {"0", "1"}:
                raise ListingParseError(f"malformed tuple entry {part!r}", line)
            if len(part) != want:
                raise ListingParseError(
                    f"bitstring {part!r} has length {len(part)}, expected {want}",
                    line,
                )
        classes.append(IsoClass.from_members(parts))
    return classes


def declared_class_counts(text: str) -> dict[int, int]:
    """Class counts promised by a listing's own header, keyed by order."""
    counts: dict[int, int] = {}
    for m in _COUNT_RE.finditer(text):
        counts[int(m.group(2))] = counts.get(int(m.group(2)), 0) + int(m.group(1))
    return counts


@dataclass(frozen=True)
class CensusDiff:
    """Class-level comparison of two censuses (keyed by canonical form)."""

    only_in_computed: tuple[str, ...]
    only_in_reference: tuple[str, ...]
    member_mismatches: tuple[tuple[str, tuple[str, ...], tuple[str, ...]], ...]
    notes: tuple[str, ...] = ()

    @property
    def match(self) -> bool:
        return not (
            self.only_in_computed or self.only_in_reference or self.member_mismatches
        )

    def as_dict(self) -> dict:
        return {
            "match": self.match,
            "only_in_computed": list(self.only_in_computed),
            "only_in_reference": list(self.only_in_reference),
            "member_mismatches": [
                {"canonical": c, "computed": list(a), "reference": list(b)}
                for c, a, b in self.member_mismatches
            ],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        lines = ["censuses match" if self.match else "censuses differ"]
        if self.only_in_computed:
            lines.append(f"  {len(self.only_in_computed)} classes only in computed:")
            lines.extend(f"    {c}" for c in self.only_in_computed)
        if self.only_in_reference:
            lines.append(f"  {len(self.only_in_reference)} classes only in reference:")
            lines.extend(f"    {c}" for c in self.only_in_reference)
        for canonical, mine, theirs in self.member_mismatches:
            lines.append(f"  class {canonical}: members disagree")
            lines.append(f"    computed:  {', '.join(mine)}")
            lines.append(f"    reference: {', '.join(theirs)}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def diff_census(
    computed, reference, declared_counts: dict[int, int] | None = None
) -> CensusDiff:
    """Compare two class lists; optional declared counts become notes when
    they disagree with the reference listing's actual contents."""
    mine = {c.canonical: c for c in computed}
    theirs = {c.canonical: c for c in reference}
    only_mine = tuple(sorted(set(mine) - set(theirs)))
    only_theirs = tuple(sorted(set(theirs) - set(mine)))
    mismatches = tuple(
        (canon, mine[canon].members, theirs[canon].members)
        for canon in sorted(set(mine) & set(theirs))
        if mine[canon].members != theirs[canon].members
    )
    notes = []
    if declared_counts:
        actual = size_histogram(reference)
        for order in sorted(set(declared_counts) | set(actual)):
            d, a = declared_counts.get(order, 0), actual.get(order, 0)
            if d != a:
                notes.append(
                    f"reference header declares {d} classes of order {order} "
                    f"but the listing contains {a}"
                )
    return CensusDiff(only_mine, only_theirs, mismatches, tuple(notes))


def classes_to_jsonl(classes) -> str:
    """One class per line: {canonical, orbit_size, members}, sorted stably."""
    lines = [
        json.dumps(
            {
                "canonical": c.canonical,
                "orbit_size": c.orbit_size,
                "members": list(c.members),
            },
            sort_keys=True,
            separators=(", ", ": "),
        )
        for c in sorted(classes, key=lambda c: (c.orbit_size, c.canonical))
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def classes_from_jsonl(text: str) -> list[IsoClass]:
    classes = []
    for raw in text.splitlines():
        if not raw.strip():
            continue
        obj = json.loads(raw)
        classes.append(IsoClass.from_members(obj["members"]))
    return classes


def classes_to_listing_text(classes) -> str:
    """Human readable listing, grouped and numbered by orbit size."""
    by_size: dict[int, list[IsoClass]] = {}
    for c in sorted(classes, key=lambda c: (c.orbit_size, c.canonical)):
        by_size.setdefault(c.orbit_size, []).append(c)
    chunks = []
    for size, group in sorted(by_size.items()):
        chunks.append(f"Isomorphism of Order {size}:")
        chunks.append("")
        for i, c in enumerate(group, 1):
            chunks.append(f"{i}. ({', '.join(c.members)})")
        chunks.append("")
    return "\n".join(chunks)


def bundled_census_text() -> str:
    """The known-good n=2 census listing shipped with the package."""
    return (
        resources.files("sttt").joinpath("data/census_2x2.txt").read_text("utf-8")
    )
