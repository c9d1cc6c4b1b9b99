from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property


@dataclass(frozen=True)
class RequirementSet:
    """Obligations a suite must tour for one criterion.

    ``kind`` is one of ``vertex``, ``edge``, ``path``, ``basis`` or
    ``wmc-sequences``. Vertex and edge items are plain ids; the other kinds
    hold tuples (edge ids, or input symbols for ``wmc-sequences``).
    """

    criterion: str
    kind: str
    items: tuple
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    @cached_property
    def item_set(self) -> frozenset:
        return frozenset(self.items)

    @cached_property
    def memo(self) -> dict:
        # Per-path results checkers may reuse across calls on the same set.
        return {}

    @cached_property
    def longest(self) -> int:
        return max((len(r) for r in self.items if isinstance(r, tuple)), default=0)

    def to_dict(self) -> dict:
        def enc(x):
            if isinstance(x, tuple):
                return [enc(y) for y in x]
            if isinstance(x, dict):
                return {k: enc(v) for k, v in x.items()}
            if isinstance(x, list):
                return [enc(y) for y in x]
            return x

        return {
            "criterion": self.criterion,
            "kind": self.kind,
            "items": enc(self.items),
            "meta": enc(self.meta),
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def canonical(items) -> tuple:
    return tuple(sorted(set(items)))
