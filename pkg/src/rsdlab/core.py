"""Domain model for one-to-one assignment instances.

An instance pairs ``n`` agents with ``n`` items (both indexed ``1..n``, the
convention used throughout the package) under one of three payoff settings:

* ``"value"``: a matrix of non-negative rational values ``v[i][g]``; higher
  is better and the objective is social welfare.
* ``"metric"``: a matrix of non-negative rational costs ``c[i][g]``
  satisfying the four-point triangle inequality, or agent/item coordinates
  on the real line from which ``c[i][g] = |agent_pos[i] - item_pos[g]|`` is
  materialized; lower is better and the objective is social cost.
* ``"abstract"``: per-agent strict rankings of the items, no numbers.

Entries are stored as exact :class:`fractions.Fraction` values.  Estimation
paths may downgrade to 64-bit floats for speed; exact paths never do.

Ties between equally good items are broken in favour of the minimum item
index, everywhere.  This single tie-breaking rule is what makes the exact
enumeration, the samplers, and the hardness encoding agree on every
matching.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

SETTING_VALUE = "value"
SETTING_METRIC = "metric"
SETTING_ABSTRACT = "abstract"
SETTINGS = (SETTING_VALUE, SETTING_METRIC, SETTING_ABSTRACT)


def as_fraction(x) -> Fraction:
    """Exact conversion to Fraction.

    Strings are parsed as integer or decimal literals (``"0.25"`` becomes
    1/4).  Floats convert to their exact binary value; prefer strings or
    Fractions where the precise decimal matters.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _matrix(rows: Iterable[Iterable]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(as_fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class AssignmentInstance:
    """One-to-one assignment instance in one of the three settings.

    Construction is permissive: malformed content (non-square matrices,
    negative entries, broken rankings, triangle failures) is stored as-is
    and reported by :func:`validate` rather than rejected here.
    """

    n: int
    setting: str
    values: tuple[tuple[Fraction, ...], ...] | None = None
    costs: tuple[tuple[Fraction, ...], ...] | None = None
    agent_points: tuple[Fraction, ...] | None = None
    item_points: tuple[Fraction, ...] | None = None
    rankings: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def from_values(cls, rows: Iterable[Iterable]) -> "AssignmentInstance":
        values = _matrix(rows)
        return cls(n=len(values), setting=SETTING_VALUE, values=values)

    @classmethod
    def from_costs(cls, rows: Iterable[Iterable]) -> "AssignmentInstance":
        costs = _matrix(rows)
        return cls(n=len(costs), setting=SETTING_METRIC, costs=costs)

    @classmethod
    def from_line_points(cls, agent_points: Iterable, item_points: Iterable) -> "AssignmentInstance":
        """Metric instance from coordinates on the real line.

        The cost matrix is materialized eagerly; by construction it
        satisfies the four-point triangle inequality.
        """
        agents = tuple(as_fraction(x) for x in agent_points)
        items = tuple(as_fraction(x) for x in item_points)
        costs = tuple(tuple(abs(a - b) for b in items) for a in agents)
        return cls(
            n=len(agents),
            setting=SETTING_METRIC,
            costs=costs,
            agent_points=agents,
            item_points=items,
        )

    @classmethod
    def from_rankings(cls, rankings: Iterable[Iterable[int]]) -> "AssignmentInstance":
        ranks = tuple(tuple(int(r) for r in row) for row in rankings)
        return cls(n=len(ranks), setting=SETTING_ABSTRACT, rankings=ranks)

    @property
    def point_based(self) -> bool:
        return self.agent_points is not None

    def value(self, agent: int, item: int) -> Fraction:
        """Value of 1-indexed ``agent`` for 1-indexed ``item``."""
        assert self.values is not None
        return self.values[agent - 1][item - 1]

    def cost(self, agent: int, item: int) -> Fraction:
        """Cost of 1-indexed ``agent`` for 1-indexed ``item``."""
        assert self.costs is not None
        return self.costs[agent - 1][item - 1]

    def ranking(self, agent: int) -> tuple[int, ...]:
        assert self.rankings is not None
        return self.rankings[agent - 1]

    def payoff_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        if self.setting == SETTING_VALUE:
            assert self.values is not None
            return self.values
        if self.setting == SETTING_METRIC:
            assert self.costs is not None
            return self.costs
        raise ValueError("abstract instances carry no payoff matrix")


class Objective(enum.Enum):
    """Which sum a matching is scored by."""

    WELFARE = "welfare"
    COST = "cost"

    @property
    def setting(self) -> str:
        return SETTING_VALUE if self is Objective.WELFARE else SETTING_METRIC

    def compatible_with(self, instance: AssignmentInstance) -> bool:
        return instance.setting == self.setting

    def require_compatible(self, instance: AssignmentInstance) -> None:
        if not self.compatible_with(instance):
            raise ValueError(
                f"objective {self.value!r} requires a {self.setting!r} instance, "
                f"got {instance.setting!r}"
            )


@dataclass(frozen=True)
class Ordering:
    """Agent ordering: ``seq[t]`` is the (1-indexed) agent acting at turn t."""

    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(a) for a in self.seq))

    @property
    def n(self) -> int:
        return len(self.seq)

    def is_permutation(self) -> bool:
        return sorted(self.seq) == list(range(1, len(self.seq) + 1))


@dataclass(frozen=True)
class Matching:
    """Perfect matching: ``assign[i-1]`` is the item of (1-indexed) agent i."""

    assign: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assign", tuple(int(g) for g in self.assign))

    @property
    def n(self) -> int:
        return len(self.assign)

    def item_of(self, agent: int) -> int:
        return self.assign[agent - 1]

    def is_perfect(self) -> bool:
        return sorted(self.assign) == list(range(1, len(self.assign) + 1))


@dataclass(frozen=True)
class Violation:
    """One failed invariant, addressed by the offending indices."""

    code: str
    indices: tuple[int, ...]
    message: str


def preference_rows(instance: AssignmentInstance) -> tuple[tuple[int, ...], ...]:
    """0-indexed preference table: row ``a`` lists items best-first.

    Value setting sorts by value descending, metric by cost ascending,
    abstract copies the stored rankings; ties go to the minimum item index.
    """
    n = instance.n
    if instance.setting == SETTING_ABSTRACT:
        assert instance.rankings is not None
        return tuple(tuple(g - 1 for g in row) for row in instance.rankings)
    if instance.setting == SETTING_VALUE:
        assert instance.values is not None
        return tuple(
            tuple(sorted(range(n), key=lambda g: (-row[g], g)))
            for row in instance.values
        )
    assert instance.costs is not None
    return tuple(
        tuple(sorted(range(n), key=lambda g: (row[g], g)))
        for row in instance.costs
    )


def derive_preferences(instance: AssignmentInstance, agent: int) -> tuple[int, ...]:
    """Strict ranking (best first, 1-indexed items) of ``agent``'s items."""
    if not 1 <= agent <= instance.n:
        raise ValueError(f"agent index {agent} out of range 1..{instance.n}")
    return tuple(g + 1 for g in preference_rows(instance)[agent - 1])


def _matrix_violations(name: str, rows: Sequence[Sequence[Fraction]], n: int) -> list[Violation]:
    out = []
    if len(rows) != n:
        out.append(Violation("shape", (len(rows),), f"{name} has {len(rows)} rows, expected {n}"))
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            out.append(Violation("shape", (i, len(row)), f"{name} row {i} has {len(row)} entries, expected {n}"))
    for i, row in enumerate(rows, start=1):
        for g, x in enumerate(row, start=1):
            if x < 0:
                out.append(Violation("negative", (i, g), f"negative {name[:-1]} {x} at agent {i}, item {g}"))
    return out


def validate(instance: AssignmentInstance) -> list[Violation]:
    """Check every type invariant; an empty list means the instance is valid.

    Never raises: malformed content comes back as a list of violations,
    each naming the offending indices.
    """
    n = instance.n
    out: list[Violation] = []
    if n < 1:
        out.append(Violation("size", (n,), f"n must be positive, got {n}"))
        return out

    if instance.setting == SETTING_VALUE:
        if instance.values is None:
            out.append(Violation("missing", (), "value instance without a value matrix"))
            return out
        out.extend(_matrix_violations("values", instance.values, n))
        return out

    if instance.setting == SETTING_METRIC:
        if instance.costs is None:
            out.append(Violation("missing", (), "metric instance without a cost matrix"))
            return out
        if instance.point_based:
            assert instance.agent_points is not None and instance.item_points is not None
            if len(instance.agent_points) != n or len(instance.item_points) != n:
                out.append(Violation(
                    "shape",
                    (len(instance.agent_points), len(instance.item_points)),
                    "point lists must both have length n",
                ))
        out.extend(_matrix_violations("costs", instance.costs, n))
        if out:
            return out
        c = instance.costs
        # Four-point condition: c[i1][g1] <= c[i1][g2] + c[i2][g2] + c[i2][g1].
        for i1 in range(n):
            for g1 in range(n):
                lhs = c[i1][g1]
                for i2 in range(n):
                    for g2 in range(n):
                        if lhs > c[i1][g2] + c[i2][g2] + c[i2][g1]:
                            out.append(Violation(
                                "triangle",
                                (i1 + 1, g1 + 1, i2 + 1, g2 + 1),
                                f"c[{i1 + 1}][{g1 + 1}]={lhs} exceeds "
                                f"c[{i1 + 1}][{g2 + 1}]+c[{i2 + 1}][{g2 + 1}]+c[{i2 + 1}][{g1 + 1}]",
                            ))
        return out

    if instance.setting == SETTING_ABSTRACT:
        if instance.rankings is None:
            out.append(Violation("missing", (), "abstract instance without rankings"))
            return out
        if len(instance.rankings) != n:
            out.append(Violation("shape", (len(instance.rankings),), f"expected {n} rankings"))
        for i, row in enumerate(instance.rankings, start=1):
            if sorted(row) != list(range(1, n + 1)):
                out.append(Violation("ranking", (i,), f"ranking of agent {i} is not a permutation of 1..{n}"))
        return out

    out.append(Violation("setting", (), f"unknown setting {instance.setting!r}"))
    return out


@dataclass(frozen=True)
class ReducedInstance:
    """Instance after dropping one agent and its best item, plus the index maps.

    ``agent_of[a-1]`` / ``item_of[g-1]`` give the original indices of the
    compacted instance's agent ``a`` / item ``g``.
    """

    instance: AssignmentInstance
    agent_of: tuple[int, ...]
    item_of: tuple[int, ...]
    removed_agent: int
    removed_item: int


def remove_agent_best(instance: AssignmentInstance, agent: int) -> ReducedInstance:
    """Drop ``agent`` and its top-ranked item, compacting the indices.

    The top item follows the global minimum-index tie-break.  Point-based
    metric instances stay point-based (deleting a point preserves the
    metric); matrix instances lose the agent's row and the item's column.
    """
    n = instance.n
    if n < 2:
        raise ValueError("cannot remove an agent from a single-agent instance")
    if instance.setting not in (SETTING_VALUE, SETTING_METRIC):
        raise ValueError("removal is defined for value and metric instances only")
    if not 1 <= agent <= n:
        raise ValueError(f"agent index {agent} out of range 1..{n}")

    best_item = derive_preferences(instance, agent)[0]
    agent_keep = [i for i in range(1, n + 1) if i != agent]
    item_keep = [g for g in range(1, n + 1) if g != best_item]

    if instance.point_based:
        assert instance.agent_points is not None and instance.item_points is not None
        reduced = AssignmentInstance.from_line_points(
            [instance.agent_points[i - 1] for i in agent_keep],
            [instance.item_points[g - 1] for g in item_keep],
        )
    else:
        matrix = instance.payoff_matrix()
        rows = [[matrix[i - 1][g - 1] for g in item_keep] for i in agent_keep]
        if instance.setting == SETTING_VALUE:
            reduced = AssignmentInstance.from_values(rows)
        else:
            reduced = AssignmentInstance.from_costs(rows)

    return ReducedInstance(
        instance=reduced,
        agent_of=tuple(agent_keep),
        item_of=tuple(item_keep),
        removed_agent=agent,
        removed_item=best_item,
    )
