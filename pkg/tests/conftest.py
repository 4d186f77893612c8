"""Shared battery builders for the seeded random-instance tests."""

from __future__ import annotations

from rsdlab import AssignmentInstance, random_abstract, random_metric_line, random_value


def metric_battery(count: int, base_seed: int, ns=(2, 3, 4, 5, 6, 7)) -> list[AssignmentInstance]:
    return [random_metric_line(ns[i % len(ns)], base_seed + i) for i in range(count)]


def value_battery(count: int, base_seed: int, ns=(2, 3, 4, 5, 6, 7)) -> list[AssignmentInstance]:
    return [random_value(ns[i % len(ns)], base_seed + i) for i in range(count)]


def abstract_battery(count: int, base_seed: int, ns=(2, 3, 4)) -> list[AssignmentInstance]:
    return [random_abstract(ns[i % len(ns)], base_seed + i) for i in range(count)]
