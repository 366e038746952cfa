"""
Process-pool fan-out for the per-weight sweeps.

Tasks carry only plain data: the datum source and the weight as text. Each worker
rebuilds (and caches) the datum, runs one computation and returns a JSON-ready dict.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, TypeVar

from .covering import gram_report
from .grothendieck import class_form_check, gamma_check, lowest_degree
from .polyrep import (
    PolynomialRepresentation,
    center_check,
    grading_check,
    pbw_independence,
    phi_check,
    psi_check,
    verify_relations,
)
from .rootdata import RootDatum, Weight, builtin_datum, load_datum

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class DatumSource:
    """Where a datum comes from: a built-in fixture name or a JSON file path."""

    builtin: Optional[str] = None
    path: Optional[str] = None

    def load(self) -> RootDatum:
        return _load(self)

    def describe(self) -> str:
        return self.builtin or self.path or "?"


@lru_cache(maxsize=None)
def _load(source: DatumSource) -> RootDatum:
    if source.path:
        return load_datum(source.path)
    if source.builtin:
        return builtin_datum(source.builtin)
    raise ValueError("A datum source needs a builtin name or a file path")


@dataclass(frozen=True)
class WeightTask:
    source: DatumSource
    weight: str
    cap: int
    exact: bool = False
    strict: bool = False

    def datum_and_weight(self) -> tuple[RootDatum, Weight]:
        datum = self.source.load()
        return datum, Weight.parse(self.weight, datum)


def run_ordered(func: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> list[R]:
    """
    Map func over items, in a process pool when jobs > 1.

    Returns:
        Results in the order of items, independent of jobs.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.info(f"Running {len(items)} tasks on {jobs} processes")
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def relations_task(task: WeightTask) -> dict:
    datum, weight = task.datum_and_weight()
    rep = PolynomialRepresentation(datum, weight)
    report = verify_relations(rep, task.cap, strict=task.strict, exact=task.exact)
    report["grading_failures"] = grading_check(rep, min(task.cap, 6))["failures"]
    return report


def automorphism_task(task: WeightTask) -> dict:
    datum, weight = task.datum_and_weight()
    rep = PolynomialRepresentation(datum, weight)
    phi = phi_check(rep, task.cap)
    psi = psi_check(rep, task.cap)
    center = center_check(rep, task.cap)
    return {
        "datum": datum.name,
        "weight": weight.to_json(),
        "D": task.cap,
        "phi_failures": phi["failures"],
        "phi_involution": phi["involution"],
        "psi_failures": psi["failures"],
        "center_failures": center["failures"],
    }


def pbw_task(task: WeightTask) -> dict:
    datum, weight = task.datum_and_weight()
    rep = PolynomialRepresentation(datum, weight)
    low = min(lowest_degree(datum, ui) for ui in rep.components)
    return pbw_independence(rep, low, task.cap)


def gram_task(task: WeightTask) -> dict:
    datum, weight = task.datum_and_weight()
    return gram_report(datum, weight, include_matrix=False)


def gamma_task(task: WeightTask) -> dict:
    datum, weight = task.datum_and_weight()
    report = gamma_check(datum, weight)
    report["form"] = class_form_check(datum, weight)
    return report
