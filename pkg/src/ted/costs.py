"""Deletion and relabel costs over labels, in exact integers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

# Largest per-operation cost accepted; keeps any total inside int64 for
# trees of up to 1e5 nodes.
MAX_COST = 10**9


class CostError(ValueError):
    pass


def _cost(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CostError(f"{what}: costs must be integers, got {value!r}")
    if value < 0:
        raise CostError(f"negative cost for {what}: {value}")
    if value > MAX_COST:
        raise CostError(f"{what}: cost {value} exceeds {MAX_COST}")
    return value


@dataclass(frozen=True)
class CostModel:
    """Table-backed cost functions.

    Unlisted labels fall back to ``del_default``; unlisted label pairs fall
    back to ``rel_default_eq`` or ``rel_default_neq``.  Deleting and
    inserting a node cost the same.
    """

    del_default: int = 1
    rel_default_eq: int = 0
    rel_default_neq: int = 1
    del_overrides: Mapping[str, int] = field(default_factory=dict)
    rel_overrides: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        _cost(self.del_default, "del_default")
        _cost(self.rel_default_eq, "rel_default_eq")
        _cost(self.rel_default_neq, "rel_default_neq")
        for k, v in self.del_overrides.items():
            _cost(v, f"del[{k!r}]")
        for k, v in self.rel_overrides.items():
            _cost(v, f"rel[{k!r}]")

    def delete(self, label: str) -> int:
        return self.del_overrides.get(label, self.del_default)

    def relabel(self, x: str, y: str) -> int:
        hit = self.rel_overrides.get((x, y))
        if hit is not None:
            return hit
        return self.rel_default_eq if x == y else self.rel_default_neq

    @property
    def declared_zero_diagonal(self) -> bool:
        return self.rel_default_eq == 0 and all(
            c == 0 for (x, y), c in self.rel_overrides.items() if x == y
        )

    @property
    def declared_symmetric(self) -> bool:
        for (x, y), c in self.rel_overrides.items():
            if self.relabel(y, x) != c:
                return False
        return True

    @property
    def is_unit(self) -> bool:
        return (
            self.del_default == 1
            and self.rel_default_eq == 0
            and self.rel_default_neq == 1
            and not self.del_overrides
            and not self.rel_overrides
        )


def unit_model() -> CostModel:
    return CostModel()


_TABLE_KEYS = {"del_default", "rel_default_eq", "rel_default_neq", "del", "rel"}


def from_table(doc: Mapping) -> CostModel:
    """Build a model from a cost-table document (already decoded from JSON).

    Required keys: ``del_default``, ``rel_default_eq``, ``rel_default_neq``.
    Optional ``del`` maps label -> cost; optional ``rel`` maps
    ``"label1|label2"`` -> cost.
    """
    if not isinstance(doc, Mapping):
        raise CostError("cost table must be an object")
    unknown = set(doc) - _TABLE_KEYS
    if unknown:
        raise CostError(f"unknown cost table keys: {sorted(unknown)}")
    missing = [k for k in ("del_default", "rel_default_eq", "rel_default_neq") if k not in doc]
    if missing:
        raise CostError(f"incomplete cost table: missing {', '.join(missing)}")

    dels = doc.get("del", {})
    if not isinstance(dels, Mapping):
        raise CostError("'del' must be an object")
    rels_raw = doc.get("rel", {})
    if not isinstance(rels_raw, Mapping):
        raise CostError("'rel' must be an object")
    rels = {}
    for key, value in rels_raw.items():
        parts = key.split("|")
        if len(parts) != 2 or not all(parts):
            raise CostError(f"rel key {key!r} must look like 'label1|label2'")
        rels[(parts[0], parts[1])] = value

    return CostModel(
        del_default=doc["del_default"],
        rel_default_eq=doc["rel_default_eq"],
        rel_default_neq=doc["rel_default_neq"],
        del_overrides=dict(dels),
        rel_overrides=rels,
    )
