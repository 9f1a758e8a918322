"""Words in a Coxeter group and the Tits solution of the word problem.

Every generator is an involution, so a word is a plain tuple of vertex names
and its inverse is the reversed tuple.  Two reduced words represent the same
element exactly when one can be turned into the other by braid moves, and a
word is non-reduced exactly when some braid-equivalent word contains a
repeated adjacent letter.  :func:`tits_reduce` runs that procedure letter by
letter and returns the shortlex-least reduced representative.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import CoxeterDiagram, DiagramError

Word = tuple[str, ...]

DEFAULT_BUDGET = 10**6


class OrbitBudgetExceeded(RuntimeError):
    """A braid orbit grew past the configured cap."""


def word(w: Iterable[str] | str) -> Word:
    """Coerce a sequence or a whitespace separated string to a word."""
    if isinstance(w, str):
        w = w.split()
        if w == ["1"]:
            return ()
    return tuple(w)


def format_word(w: Sequence[str]) -> str:
    return " ".join(w) if w else "1"


def inverse(w: Sequence[str]) -> Word:
    return tuple(reversed(w))


def alternating(a: str, b: str, length: int) -> Word:
    """``a b a b ...`` with ``length`` letters."""
    return tuple(a if i % 2 == 0 else b for i in range(length))


def power(a: str, b: str, e: int) -> Word:
    """``(ab)^e`` for ``e >= 0``."""
    return alternating(a, b, 2 * e)


def free_reduce(w: Iterable[str]) -> Word:
    out: list[str] = []
    for s in w:
        if out and out[-1] == s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class RelatorSet:
    squares: tuple[Word, ...]
    braids: tuple[Word, ...]

    def __iter__(self):
        yield from self.squares
        yield from self.braids

    def __len__(self):
        return len(self.squares) + len(self.braids)


def relators(d: CoxeterDiagram) -> RelatorSet:
    return RelatorSet(
        tuple((s, s) for s in d.vertices),
        tuple(power(u, v, m) for (u, v), m in d.labels.items()),
    )


class TitsReducer:
    """Word problem solver for one diagram.

    The cache maps canonical reduced words to their braid orbit and is
    guarded by a lock; results never depend on what is cached.
    """

    def __init__(self, d: CoxeterDiagram, budget: int = DEFAULT_BUDGET):
        self.d = d
        self.budget = budget
        self._lock = threading.Lock()
        self._orbits: dict[Word, frozenset[Word]] = {}
        self._canon: dict[Word, Word] = {}

    def _check_letters(self, w: Sequence[str]) -> None:
        verts = set(self.d.vertices)
        for s in w:
            if s not in verts:
                raise DiagramError(f"letter {s!r} is not a generator")

    def _moves(self, w: Word):
        """Words one braid move away from ``w``."""
        lab = self.d.labels
        n = len(w)
        i = 0
        while i < n - 1:
            a, b = w[i], w[i + 1]
            if a == b:
                i += 1
                continue
            m = lab.get((a, b) if a < b else (b, a))
            # j: end of the maximal alternating run starting at i
            j = i + 2
            while j < n and w[j] == w[j - 2]:
                j += 1
            if m is not None and j - i >= m:
                for start in range(i, j - m + 1):
                    x, y = w[start], w[start + 1]
                    yield w[:start] + alternating(y, x, m) + w[start + m :]
            i = max(i + 1, j - 1)

    def orbit(self, w: Word) -> frozenset[Word]:
        """All words reachable from ``w`` by braid moves."""
        with self._lock:
            hit = self._orbits.get(w)
        if hit is not None:
            return hit
        seen = {w}
        queue = deque([w])
        while queue:
            cur = queue.popleft()
            for nxt in self._moves(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > self.budget:
                        raise OrbitBudgetExceeded(
                            f"braid orbit exceeded {self.budget} words (length {len(w)})"
                        )
                    queue.append(nxt)
        result = frozenset(seen)
        with self._lock:
            for member in result:
                self._orbits[member] = result
        return result

    def _append(self, reduced: Word, s: str) -> Word:
        """Canonical form of ``reduced * s`` where ``reduced`` is canonical."""
        key = reduced + (s,)
        with self._lock:
            hit = self._canon.get(key)
        if hit is not None:
            return hit
        orb = self.orbit(reduced)
        ending = [u for u in orb if u[-1] == s] if reduced else []
        if ending:
            result = min(self.orbit(min(ending)[:-1]))
        else:
            result = min(self.orbit(key))
        with self._lock:
            self._canon[key] = result
        return result

    def reduce(self, w: Iterable[str]) -> Word:
        w = tuple(w)
        self._check_letters(w)
        cur: Word = ()
        for s in free_reduce(w):
            cur = self._append(cur, s)
        return cur

    def equal(self, w1: Sequence[str], w2: Sequence[str]) -> bool:
        return not self.reduce(tuple(w1) + inverse(w2))

    def is_identity(self, w: Sequence[str]) -> bool:
        return not self.reduce(w)

    def conj(self, w: Sequence[str], x: Sequence[str]) -> Word:
        """Reduced form of ``w x w^-1``."""
        return self.reduce(tuple(w) + tuple(x) + inverse(w))


_reducers: dict[tuple[CoxeterDiagram, int], TitsReducer] = {}
_reducers_lock = threading.Lock()
_default_budget = DEFAULT_BUDGET


def set_default_budget(budget: int) -> None:
    """Orbit cap used by every later call that does not pass its own."""
    global _default_budget
    if budget < 1:
        raise ValueError("budget must be positive")
    _default_budget = budget


def reducer(d: CoxeterDiagram, budget: int | None = None) -> TitsReducer:
    key = (d, budget or _default_budget)
    with _reducers_lock:
        r = _reducers.get(key)
        if r is None:
            r = _reducers[key] = TitsReducer(d, key[1])
    return r


def tits_reduce(w: Iterable[str], d: CoxeterDiagram, budget: int | None = None) -> Word:
    return reducer(d, budget).reduce(w)


def equal(w1: Sequence[str], w2: Sequence[str], d: CoxeterDiagram, budget: int | None = None) -> bool:
    return reducer(d, budget).equal(w1, w2)
