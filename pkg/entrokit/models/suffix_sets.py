"""
Complete proper suffix sets (tree models over binary pasts).

Contexts are written in time order: the last character is the most recent
symbol, so "01" means x[t-2] = 0 and x[t-1] = 1.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ..exceptions import DomainError


@dataclass(frozen=True)
class SuffixSet:
    contexts: tuple[str, ...]

    def __post_init__(self):
        contexts = tuple(sorted(set(self.contexts), key=lambda s: (len(s), s)))
        if not contexts:
            raise DomainError("a suffix set needs at least one context")
        for s in contexts:
            if any(ch not in "01" for ch in s):
                raise DomainError(f"context {s!r} is not a binary string")
        if len(contexts) != len(self.contexts):
            raise DomainError("duplicate contexts in suffix set")
        # proper: no context is a suffix of another
        for s in contexts:
            for t in contexts:
                if s != t and t.endswith(s):
                    raise DomainError(f"context {s!r} is a suffix of {t!r}")
        # complete: prefix-free with Kraft sum exactly 1 (exact integer arithmetic)
        depth = max(len(s) for s in contexts)
        if sum(1 << (depth - len(s)) for s in contexts) != 1 << depth:
            raise DomainError("suffix set is not complete")
        object.__setattr__(self, "contexts", contexts)

    @property
    def size(self) -> int:
        return len(self.contexts)

    @property
    def depth(self) -> int:
        return max(len(s) for s in self.contexts)

    def short_leaves(self, max_depth: int) -> int:
        """N(S): number of contexts shorter than ``max_depth``."""
        return sum(1 for s in self.contexts if len(s) < max_depth)

    def prior_log2(self, max_depth: int) -> float:
        """log2 of the prior weight 2^(-|S| - N(S) + 1) among sets of depth <= max_depth."""
        if self.depth > max_depth:
            raise DomainError(f"suffix set of depth {self.depth} exceeds {max_depth}")
        return float(-self.size - self.short_leaves(max_depth) + 1)

    def context_index(self, past: Sequence[int]) -> int:
        """Index into ``contexts`` of the unique suffix of ``past`` (time order, zero padded)."""
        for idx, s in enumerate(self.contexts):
            n = len(s)
            tail = list(past[-n:]) if n else []
            tail = [0] * (n - len(tail)) + tail
            if "".join(str(v) for v in tail) == s:
                return idx
        raise DomainError("suffix set has no context for the given past")

    @classmethod
    def from_contexts(cls, contexts: Iterable[str]) -> "SuffixSet":
        return cls(tuple(contexts))

    @classmethod
    def enumerate_all(cls, max_depth: int) -> list["SuffixSet"]:
        """Every complete proper suffix set of depth <= ``max_depth``."""
        if max_depth < 0:
            raise DomainError("max_depth must be non-negative")
        return [cls(tuple(s[::-1] for s in tree)) for tree in _reversed_trees(max_depth)]


@lru_cache(maxsize=None)
def _reversed_trees(depth: int) -> tuple[tuple[str, ...], ...]:
    # strings here read most recent symbol first
    if depth == 0:
        return (("",),)
    subtrees = _reversed_trees(depth - 1)
    trees = [("",)]
    for zero in subtrees:
        for one in subtrees:
            trees.append(tuple("0" + s for s in zero) + tuple("1" + s for s in one))
    return tuple(trees)
