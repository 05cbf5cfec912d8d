"""The n-queens placement problem as a one-way forward representation.

A state is a set of queen coordinates on an n-by-n board, held canonically
as a sorted tuple of (row, col) pairs. There is one operator per square: it
places a queen there when the square is empty and unattacked, and is
inapplicable otherwise. Queens are never removed, so the reachable space is
a directed acyclic graph layered by queen count, and one placement can reach
another exactly when it is a subset of it.

Serialized form: ``<n> ":" [ <r> "," <c> ( ";" <r> "," <c> )* ]`` with
decimal integers and no whitespace, coordinate pairs sorted ascending.
Example: ``5:0,0;1,2``. Equal states serialize identically.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import kernels
from .errors import ModelError, StateParseError
from .model import EssmRepresentation, FiniteSpace

Coord = "tuple[int, int]"

_EMPTY_SET: frozenset = frozenset()


@dataclass(frozen=True, slots=True)
class NQueensState:
    """An n-by-n board with zero or more non-attacked queens placed.

    ``queens`` is canonicalized to a sorted tuple at construction, which
    makes equality, hashing, and serialization agree. Instances are
    immutable; the lazily computed safe-square set is cached per instance.
    """

    n: int
    queens: tuple
    _safe: frozenset | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ModelError(f"board size must be a positive int, got {self.n!r}")
        qs = tuple(sorted((int(r), int(c)) for r, c in self.queens))
        if len(set(qs)) != len(qs):
            raise ModelError("duplicate queen coordinates")
        if len(qs) > self.n:
            raise ModelError(f"{len(qs)} queens cannot be placed on a {self.n}x{self.n} board")
        for r, c in qs:
            if not (0 <= r < self.n and 0 <= c < self.n):
                raise ModelError(f"coordinate ({r},{c}) is outside a {self.n}x{self.n} board")
        object.__setattr__(self, "queens", qs)

    @property
    def safe_squares(self) -> frozenset:
        """Flat indexes (row * n + col) where one more queen can be placed."""
        cached = self._safe
        if cached is None:
            cached = kernels.active().safe_squares(self.n, self.queens)
            object.__setattr__(self, "_safe", cached)
        return cached

    def with_queen(self, r: int, c: int) -> "NQueensState":
        return NQueensState(self.n, self.queens + ((r, c),))

    def __str__(self) -> str:
        return format_state(self)


def empty_board(n: int) -> NQueensState:
    return NQueensState(n, ())


def format_state(state: NQueensState) -> str:
    """Canonical text form of a state. Inverse of :func:`parse_state`."""
    return f"{state.n}:" + ";".join(f"{r},{c}" for r, c in state.queens)


def _parse_int(text: str, pos: int, what: str) -> tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise StateParseError(f"expected {what}", start)
    return int(text[start:pos]), pos


def parse_state(text: str) -> NQueensState:
    """Parse the serialized form, reporting the offset of the first defect.

    Rejects anything the grammar does not produce: whitespace, signs,
    out-of-range or duplicate coordinates, unsorted pairs, trailing garbage.
    """
    n, pos = _parse_int(text, 0, "board size")
    if n < 1:
        raise StateParseError("board size must be at least 1", 0)
    if pos >= len(text) or text[pos] != ":":
        raise StateParseError("expected ':' after board size", pos)
    pos += 1
    queens = []
    if pos < len(text):
        while True:
            pair_start = pos
            r, pos = _parse_int(text, pos, "row")
            if pos >= len(text) or text[pos] != ",":
                raise StateParseError("expected ',' between row and column", pos)
            pos += 1
            c, pos = _parse_int(text, pos, "column")
            if not (0 <= r < n and 0 <= c < n):
                raise StateParseError(f"coordinate ({r},{c}) is outside the board", pair_start)
            if queens and (r, c) <= queens[-1]:
                raise StateParseError("coordinates must be strictly ascending", pair_start)
            queens.append((r, c))
            if pos == len(text):
                break
            if text[pos] != ";":
                raise StateParseError("expected ';' between coordinates", pos)
            pos += 1
    return NQueensState(n, tuple(queens))


# roles a known state can play in a seeding
ROLE_INITIAL = "initial"
ROLE_ON_SOLUTION = "solution-prefix"
ROLE_FALSE_HEURISTIC = "false-heuristic"
ROLE_EXPLICIT = "explicit"

_ROLES = (ROLE_INITIAL, ROLE_ON_SOLUTION, ROLE_FALSE_HEURISTIC, ROLE_EXPLICIT)


@dataclass(frozen=True)
class KnownState:
    state: NQueensState
    role: str

    def __post_init__(self) -> None:
        if self.role not in _ROLES:
            raise ModelError(f"unknown role {self.role!r}")


@dataclass(frozen=True)
class KnownStateSpec:
    """The ordered known states a search starts from, with the role each one
    was generated for. Order is significant: it fixes distance indexes."""

    entries: tuple[KnownState, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ModelError("a known-state spec needs at least one entry")
        sizes = {e.state.n for e in self.entries}
        if len(sizes) != 1:
            raise ModelError(f"known states mix board sizes: {sorted(sizes)}")

    @property
    def n(self) -> int:
        return self.entries[0].state.n

    @property
    def states(self) -> tuple:
        return tuple(e.state for e in self.entries)


def _placement_fn(n: int, sq: int):
    r, c = divmod(sq, n)

    def place(state: NQueensState) -> frozenset:
        if sq in state.safe_squares:
            return frozenset((state.with_queen(r, c),))
        return _EMPTY_SET

    return place


def nqueens_rep(n: int, known: KnownStateSpec) -> EssmRepresentation:
    """Build the representation for an n-by-n board.

    Every known state must be a valid non-attacking placement of size n;
    an attacking placement cannot be extended to a solution and is rejected.
    The forward family has one placement function per square, in row-major
    order (function index = row * n + col). There are no backward functions.
    """
    if known.n != n:
        raise ModelError(f"known states are for n={known.n}, expected n={n}")
    kern = kernels.active()
    for s in known.states:
        if not kern.pairwise_safe(s.queens):
            raise ModelError(f"known state {format_state(s)} contains attacking queens")

    def initial(s: NQueensState) -> bool:
        return s.n == n and not s.queens

    def goal(s: NQueensState) -> bool:
        return s.n == n and len(s.queens) == n and kernels.active().pairwise_safe(s.queens)

    return EssmRepresentation(
        known_states=known.states,
        initial=initial,
        goal=goal,
        forward_fns=tuple(_placement_fn(n, sq) for sq in range(n * n)),
        backward_fns=(),
    )


@functools.lru_cache(maxsize=None)
def first_solution(n: int) -> tuple | None:
    """The lexicographically-first complete solution, found by backtracking
    over rows 0..n-1 trying columns 0..n-1, or None when none exists."""
    cols: list[int] = []

    def attacked(row: int, col: int) -> bool:
        for r, c in enumerate(cols):
            if c == col or abs(r - row) == abs(c - col):
                return True
        return False

    def extend(row: int) -> bool:
        if row == n:
            return True
        for col in range(n):
            if not attacked(row, col):
                cols.append(col)
                if extend(row + 1):
                    return True
                cols.pop()
        return False

    if not extend(0):
        return None
    return tuple((r, c) for r, c in enumerate(cols))


def on_solution_state(n: int, depth: int) -> NQueensState:
    """The first ``depth`` queens, in row order, of the lexicographically
    first complete solution. Raises when no solution exists (n of 2 or 3)
    or when depth is outside 1..n."""
    if not 1 <= depth <= n:
        raise ModelError(f"depth must be between 1 and {n}, got {depth}")
    solution = first_solution(n)
    if solution is None:
        raise ModelError(f"the {n}-queens problem has no solution")
    return NQueensState(n, solution[:depth])


def _lex_placements(n: int, size: int) -> Iterator[tuple]:
    """Non-attacking placements of exactly ``size`` queens in lexicographic
    order of their sorted coordinate tuples."""
    squares = n * n

    def extend(chosen: list, start: int) -> Iterator[tuple]:
        if len(chosen) == size:
            yield tuple(chosen)
            return
        # not enough squares left to finish: prune
        for sq in range(start, squares - (size - len(chosen)) + 1):
            r, c = divmod(sq, n)
            ok = True
            for qr, qc in chosen:
                if qr == r or qc == c or abs(qr - r) == abs(qc - c):
                    ok = False
                    break
            if ok:
                chosen.append((r, c))
                yield from extend(chosen, sq + 1)
                chosen.pop()

    yield from extend([], 0)


def false_heuristic_state(n: int, other: NQueensState) -> NQueensState:
    """The lexicographically-first non-attacking placement with the same
    queen count as ``other`` that is neither a subset nor a superset of it.
    With equal counts that means: the first placement different from
    ``other``. The result seeds a search subtree that cannot merge with the
    one grown from ``other``."""
    if other.n != n:
        raise ModelError(f"reference state is for n={other.n}, expected n={n}")
    if not other.queens:
        raise ModelError("the empty placement is comparable to everything; "
                         "a false-heuristic mate for it does not exist")
    if not kernels.active().pairwise_safe(other.queens):
        raise ModelError("reference state contains attacking queens")
    for queens in _lex_placements(n, len(other.queens)):
        if queens != other.queens:
            return NQueensState(n, queens)
    raise ModelError(f"no incomparable placement of {len(other.queens)} queens exists on n={n}")


def enumerate_states(n: int) -> tuple:
    """Every reachable state: all non-attacking placements of 0..n queens,
    in lexicographic order. Exponential; meant for desk-scale boards."""
    out = [empty_board(n)]

    def extend(state: NQueensState, start: int) -> None:
        for sq in sorted(state.safe_squares):
            if sq < start:
                continue
            child = state.with_queen(*divmod(sq, n))
            out.append(child)
            extend(child, sq + 1)

    extend(out[0], 0)
    return tuple(out)


def enumerate_space(n: int) -> FiniteSpace:
    """The reachable space as a FiniteSpace, for classification and audits."""
    return FiniteSpace(enumerate_states(n))
