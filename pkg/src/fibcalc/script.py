"""The surgery-script language: a line-oriented pipeline of the library's
constructions, plus structured invariant reports.

Grammar (one statement per line, `#` starts a comment):

    [NAME =] verb arg1 arg2 ...

Verbs and arities:

    load NAME                  bind a catalog knot or curve
    spin K                     spin a fibered knot
    halfspin K                 half-spin (the ribbon disk for K # -K)
    double D K_INT             double a disk with 2-handle framing k
    disktwist D E M_INT        twist a disk along a catalog disk boundary
    stallingstwist K C M_INT   Stallings twist along a curve
    glucktwist S               Gluck twist a 2-knot
    torustwist S C             torus twist a spun 2-knot
    connectsum K1 K2           connected sum of knots
    plan K1 K2                 torus-surgery plan between spins
    report X                   emit the invariant report of a bound object
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from . import serialize
from .errors import CatalogError, FibcalcError, ScriptError
from .fibered import (FiberedKnot, alexander_poly, catalog_knot, connected_sum,
                      knot_group, stallings_twist)
from .invariants import count_homs, finite_group, h1
from .laurent import normalize_alexander
from .matrices import char_poly
from .mcg import CurveSpec, curated_payload
from .presentation import GroupPresentation
from .ribbon_disk import (FiberedDisk, disk_twist, exterior_presentation, half_spin,
                          is_homotopy_ribbon)
from .two_knot import (FiberedTwoKnot, SurgeryPlan, double_disk, gluck, spin,
                       torus_surgery_plan, torus_twist, two_knot_group)
from .words import abelianize

DEFAULT_REPORT_GROUPS = ("Z2", "Z3", "Z5", "S3", "D4")

_VERBS = {
    "load": 1, "spin": 1, "halfspin": 1, "double": 2, "disktwist": 3,
    "stallingstwist": 3, "glucktwist": 1, "torustwist": 2, "connectsum": 2,
    "plan": 2, "report": 1,
}
_INT_ARGS = {"double": (1,), "disktwist": (2,), "stallingstwist": (2,)}


@dataclass(frozen=True)
class Statement:
    verb: str
    args: tuple[str, ...]
    target: str | None = None
    line: int = 0

    def text(self) -> str:
        head = f"{self.target} = " if self.target else ""
        return head + " ".join((self.verb,) + self.args)


@dataclass(frozen=True)
class SurgeryScript:
    statements: tuple[Statement, ...]

    def text(self) -> str:
        return "\n".join(s.text() for s in self.statements) + ("\n" if self.statements else "")


def parse_script(source: str) -> SurgeryScript:
    statements = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        target = None
        if len(tokens) >= 2 and tokens[1][0] == "=":
            name, col = tokens[0]
            if not name.isidentifier():
                raise ScriptError(f"bad binding name {name!r}", lineno, col)
            target = name
            tokens = tokens[2:]
            if not tokens:
                raise ScriptError("binding without a verb", lineno, col)
        verb, col = tokens[0]
        if verb not in _VERBS:
            raise ScriptError(f"unknown verb {verb!r}", lineno, col)
        args = tokens[1:]
        if len(args) != _VERBS[verb]:
            raise ScriptError(
                f"verb {verb!r} takes {_VERBS[verb]} argument(s), got {len(args)}",
                lineno, col)
        for pos in _INT_ARGS.get(verb, ()):
            text, acol = args[pos]
            if not re.fullmatch(r"[+-]?\d+", text):
                raise ScriptError(f"argument {pos + 1} of {verb!r} must be an integer",
                                  lineno, acol)
        statements.append(Statement(verb, tuple(t for t, _ in args), target, lineno))
    return SurgeryScript(tuple(statements))


def print_script(script: SurgeryScript) -> str:
    return script.text()


@dataclass(frozen=True)
class InvariantReport:
    kind: str
    label: str | None
    genus_or_rank: int | None = None
    alexander: tuple[int, ...] | None = None
    h1_diagonal: tuple[int, ...] | None = None
    hom_counts: tuple[tuple[str, int], ...] | None = None
    ambient: str | None = None
    is_homotopy_ribbon: bool | None = None
    gluck_parity: int | None = None
    provenance: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()
    plan: tuple[dict, ...] | None = None

    def to_jsonable(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "genus_or_rank": self.genus_or_rank,
            "alexander": None if self.alexander is None else list(self.alexander),
            "h1_diagonal": None if self.h1_diagonal is None else list(self.h1_diagonal),
            "hom_counts": None if self.hom_counts is None
            else {name: n for name, n in self.hom_counts},
            "ambient": self.ambient,
            "is_homotopy_ribbon": self.is_homotopy_ribbon,
            "gluck_parity": self.gluck_parity,
            "provenance": list(self.provenance),
            "notes": list(self.notes),
            "plan": None if self.plan is None else list(self.plan),
        }

    def text(self) -> str:
        lines = [f"[{self.kind}] {self.label or '(unnamed)'}"]
        if self.genus_or_rank is not None:
            lines.append(f"  genus/rank: {self.genus_or_rank}")
        if self.ambient is not None:
            lines.append(f"  ambient: {self.ambient}")
        if self.alexander is not None:
            lines.append(f"  alexander (t^0..): {list(self.alexander)}")
        if self.h1_diagonal is not None:
            lines.append(f"  h1 diagonal: {list(self.h1_diagonal)}")
        if self.hom_counts is not None:
            counts = ", ".join(f"{name}:{n}" for name, n in self.hom_counts)
            lines.append(f"  hom counts: {counts}")
        if self.is_homotopy_ribbon is not None:
            lines.append(f"  homotopy-ribbon: {self.is_homotopy_ribbon}")
        if self.gluck_parity is not None:
            lines.append(f"  gluck parity: {self.gluck_parity}")
        if self.provenance:
            lines.append(f"  provenance: {'; '.join(self.provenance)}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        if self.plan is not None:
            lines.append(f"  plan entries: {len(self.plan)}")
            for e in self.plan:
                curve = e["curve"]
                cname = curve.get("name") if curve else "0-framed unlink torus"
                lines.append(f"    phase {e['phase']} {e['torus_id']}: "
                             f"{cname} sign {e['twist_sign']}")
        return "\n".join(lines)


def _twist_word_note(word) -> tuple[str, ...]:
    return tuple(f"{c.name or list(c.homology_class)}^{m}" for c, m in word)


def _presentation_invariants(pres: GroupPresentation, groups, budget, workers):
    counts = tuple((name, count_homs(pres, finite_group(name), budget, workers))
                   for name in groups)
    return tuple(h1(pres)), counts


def build_report(obj: Any, groups: tuple[str, ...] = DEFAULT_REPORT_GROUPS,
                 budget: int | None = None, workers: int = 1) -> InvariantReport:
    if isinstance(obj, FiberedKnot):
        diag = counts = None
        if obj.has_pi1:
            diag, counts = _presentation_invariants(knot_group(obj), groups,
                                                    budget, workers)
        alex = alexander_poly(obj)
        notes = ()
        if abs(alex.evaluate(1)) != 1:
            notes = (f"warning: |alexander(1)| = {abs(alex.evaluate(1))}, "
                     "expected 1 for a fibered knot in a homology sphere",)
        return InvariantReport(
            kind="fibered_knot", label=obj.label, genus_or_rank=obj.genus,
            alexander=tuple(alex.dense_coeffs()),
            h1_diagonal=diag, hom_counts=counts, ambient=str(obj.ambient),
            provenance=_twist_word_note(obj.monodromy.provenance), notes=notes)
    if isinstance(obj, FiberedDisk):
        alex = normalize_alexander(char_poly(abelianize(obj.monodromy.pi1_action)))
        diag = counts = None
        notes = ()
        if obj.fiber.is_handlebody:
            diag, counts = _presentation_invariants(exterior_presentation(obj),
                                                    groups, budget, workers)
        else:
            notes = (f"fiber carries summand {obj.fiber.summand_label!r}",)
        return InvariantReport(
            kind="fibered_disk", label=obj.label, genus_or_rank=obj.monodromy.genus,
            alexander=tuple(alex.dense_coeffs()), h1_diagonal=diag, hom_counts=counts,
            ambient=str(obj.ambient), is_homotopy_ribbon=is_homotopy_ribbon(obj),
            provenance=_twist_word_note(obj.twist_history), notes=notes)
    if isinstance(obj, FiberedTwoKnot):
        alex = normalize_alexander(char_poly(abelianize(obj.monodromy_pi1)))
        diag, counts = _presentation_invariants(two_knot_group(obj), groups,
                                                budget, workers)
        return InvariantReport(
            kind="fibered_two_knot", label=obj.label, genus_or_rank=obj.fiber_rank,
            alexander=tuple(alex.dense_coeffs()), h1_diagonal=diag, hom_counts=counts,
            ambient=str(obj.ambient), gluck_parity=obj.gluck_parity,
            provenance=obj.provenance)
    if isinstance(obj, CurveSpec):
        flags = (f"class {list(obj.homology_class)}",
                 f"bounds_disk_in_handlebody={obj.bounds_disk_in_handlebody}",
                 f"unknotted_in_ambient={obj.unknotted_in_ambient}",
                 f"fiber_framing_zero={obj.fiber_framing_zero}")
        return InvariantReport(kind="curve_spec", label=obj.name,
                               genus_or_rank=obj.genus, notes=flags)
    if isinstance(obj, SurgeryPlan):
        entries = tuple(serialize.to_jsonable(e) for e in obj.entries)
        return InvariantReport(
            kind="surgery_plan", label=None,
            notes=(f"genus {obj.source_genus} -> {obj.target_genus}",),
            plan=entries)
    raise ScriptError(f"cannot report on a {type(obj).__name__}")


def _load(name: str):
    try:
        return catalog_knot(name)
    except CatalogError:
        pass
    entry = curated_payload(name)
    return entry


def execute(script: "SurgeryScript | str", groups: tuple[str, ...] = DEFAULT_REPORT_GROUPS,
            budget: int | None = None, workers: int = 1) -> list[InvariantReport]:
    """Run a script; reports are emitted in statement order.  The first
    failing statement aborts with a ScriptError carrying its index (reports
    produced so far are attached to the error as `.reports`)."""
    if isinstance(script, str):
        script = parse_script(script)
    env: dict[str, Any] = {}
    reports: list[InvariantReport] = []

    def lookup(name: str, index: int):
        if name not in env:
            raise ScriptError(f"name {name!r} is not bound", statement=index)
        return env[name]

    def expect(value, types, index: int, what: str):
        if not isinstance(value, types):
            names = types.__name__ if isinstance(types, type) else \
                "/".join(t.__name__ for t in types)
            raise ScriptError(f"{what} must be a {names}, got {type(value).__name__}",
                              statement=index)
        return value

    for index, stmt in enumerate(script.statements):
        try:
            if stmt.verb == "load":
                result = _load(stmt.args[0])
            elif stmt.verb == "spin":
                result = spin(expect(lookup(stmt.args[0], index), FiberedKnot,
                                     index, "spin argument"))
            elif stmt.verb == "halfspin":
                result = half_spin(expect(lookup(stmt.args[0], index), FiberedKnot,
                                          index, "halfspin argument"))
            elif stmt.verb == "double":
                disk = expect(lookup(stmt.args[0], index), FiberedDisk,
                              index, "double argument")
                result = double_disk(disk, int(stmt.args[1]))
            elif stmt.verb == "disktwist":
                disk = expect(lookup(stmt.args[0], index), FiberedDisk,
                              index, "disktwist argument")
                curve = expect(lookup(stmt.args[1], index), CurveSpec,
                               index, "disktwist curve")
                result = disk_twist(disk, curve, int(stmt.args[2]))
            elif stmt.verb == "stallingstwist":
                knot = expect(lookup(stmt.args[0], index), FiberedKnot,
                              index, "stallingstwist argument")
                curve = expect(lookup(stmt.args[1], index), CurveSpec,
                               index, "stallingstwist curve")
                result = stallings_twist(knot, curve, int(stmt.args[2]))
            elif stmt.verb == "glucktwist":
                result = gluck(expect(lookup(stmt.args[0], index), FiberedTwoKnot,
                                      index, "glucktwist argument"))
            elif stmt.verb == "torustwist":
                two = expect(lookup(stmt.args[0], index), FiberedTwoKnot,
                             index, "torustwist argument")
                curve = expect(lookup(stmt.args[1], index), CurveSpec,
                               index, "torustwist curve")
                result = torus_twist(two, curve)
            elif stmt.verb == "connectsum":
                k1 = expect(lookup(stmt.args[0], index), FiberedKnot,
                            index, "connectsum argument")
                k2 = expect(lookup(stmt.args[1], index), FiberedKnot,
                            index, "connectsum argument")
                result = connected_sum(k1, k2)
            elif stmt.verb == "plan":
                k1 = expect(lookup(stmt.args[0], index), FiberedKnot,
                            index, "plan argument")
                k2 = expect(lookup(stmt.args[1], index), FiberedKnot,
                            index, "plan argument")
                result = torus_surgery_plan(k1, k2)
            else:  # report
                result = lookup(stmt.args[0], index)
                reports.append(build_report(result, groups, budget, workers))
            if stmt.target is not None:
                env[stmt.target] = result
        except ScriptError:
            raise
        except FibcalcError as exc:
            err = ScriptError(f"{stmt.verb}: {exc}", statement=index)
            err.reports = reports
            raise err from exc
    return reports


def reports_to_json(reports: list[InvariantReport]) -> str:
    return json.dumps([r.to_jsonable() for r in reports], sort_keys=True,
                      separators=(",", ":"))
