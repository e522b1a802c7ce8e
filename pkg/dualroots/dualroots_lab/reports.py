import enum
import json
from fractions import Fraction
from typing import Iterable, List, Union

from dualroots.dualroots_lab.consts import JSON_SCHEMA_VERSION


class Verdict(enum.Enum):
    passed = "Pass"
    failed = "Fail"
    inconclusive = "Inconclusive"
    degenerate_at_zero = "DegenerateAtZero"
    strict_interlace = "StrictInterlace"
    weak_interlace = "WeakInterlace"
    increasing = "Increasing"
    decreasing = "Decreasing"

    @property
    def outcome(self) -> "Verdict":
        """Collapses a detailed verdict to Pass, Fail or Inconclusive"""
        if self in (Verdict.failed, Verdict.inconclusive):
            return self
        return Verdict.passed


def fmt_rational(value: Union[int, Fraction]) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def aggregate(verdicts: Iterable[Verdict]) -> Verdict:
    outcomes = [Verdict(v).outcome for v in verdicts]
    if Verdict.failed in outcomes:
        return Verdict.failed
    if Verdict.inconclusive in outcomes:
        return Verdict.inconclusive
    return Verdict.passed


def exit_code_for(verdict: Verdict) -> int:
    return {Verdict.passed: 0, Verdict.failed: 1, Verdict.inconclusive: 2}[verdict.outcome]


class Report(dict):
    def __init__(
        self,
        theorem_id: str = None,
        inputs: dict = None,
        verdict: Verdict = Verdict.passed,
        witnesses: List[dict] = None,
        from_report: dict = None,
    ):
        """A JSON ready verdict of a single check

        Args:
            theorem_id (str, optional): The id of the checked statement.
            inputs (dict, optional): The check inputs, exact values as "p/q" strings.
            verdict (Verdict, optional): The verdict. Defaults to Pass.
            witnesses (List[dict], optional): Violations, near misses or
                informational notes. Defaults to none.
            from_report (dict, optional): Load from another report. Defaults to None.
        """
        super().__init__(from_report or {})
        if from_report is None:
            self.theorem_id = theorem_id
            self.inputs = inputs or {}
            self.verdict = verdict
            self["witnesses"] = list(witnesses or [])

    @property
    def theorem_id(self) -> str:
        return self.get("theorem_id", None)

    @theorem_id.setter
    def theorem_id(self, val: str):
        self["theorem_id"] = val

    @property
    def inputs(self) -> dict:
        return self.get("inputs", {})

    @inputs.setter
    def inputs(self, val: dict):
        self["inputs"] = val

    @property
    def verdict(self) -> Verdict:
        return Verdict(self["verdict"])

    @verdict.setter
    def verdict(self, val: Union[Verdict, str]):
        self["verdict"] = Verdict(val).value

    @property
    def outcome(self) -> Verdict:
        return self.verdict.outcome

    @property
    def witnesses(self) -> List[dict]:
        if "witnesses" not in self:
            self["witnesses"] = []
        return self["witnesses"]

    def add_witness(self, **witness):
        self.witnesses.append(witness)

    def fail(self, **witness):
        """Marks the report failed, keeping the witness"""
        self.verdict = Verdict.failed
        self.add_witness(**witness)

    def inconclusive(self, **witness):
        if self.outcome != Verdict.failed:
            self.verdict = Verdict.inconclusive
        self.add_witness(**witness)


class InterlacingReport(Report):
    @property
    def p_roots(self) -> List[dict]:
        return self.get("p_roots", [])

    @p_roots.setter
    def p_roots(self, val: List[dict]):
        self["p_roots"] = val

    @property
    def q_roots(self) -> List[dict]:
        return self.get("q_roots", [])

    @q_roots.setter
    def q_roots(self, val: List[dict]):
        self["q_roots"] = val

    @property
    def leading(self) -> str:
        return self.get("leading", None)

    @leading.setter
    def leading(self, val: str):
        self["leading"] = val

    @property
    def shared_roots(self) -> List[dict]:
        if "shared_roots" not in self:
            self["shared_roots"] = []
        return self["shared_roots"]


class MonotonicityReport(Report):
    @property
    def root_index(self) -> int:
        return self.get("root_index", None)

    @root_index.setter
    def root_index(self, val: int):
        self["root_index"] = val

    @property
    def grid(self) -> List[str]:
        return self.get("grid", [])

    @grid.setter
    def grid(self, val: List[str]):
        self["grid"] = val

    @property
    def values(self) -> List[dict]:
        if "values" not in self:
            self["values"] = []
        return self["values"]


class OrthogonalityReport(Report):
    @property
    def truncation_N(self) -> int:
        return self.get("truncation_N", None)

    @property
    def partial_sum(self) -> str:
        return self.get("partial_sum", None)

    @property
    def tail_bound(self) -> str:
        return self.get("tail_bound", None)

    @property
    def target(self) -> str:
        return self.get("target", None)


class SuiteReport(Report):
    """An aggregate of reports, verdict recomputed from its checks"""

    def __init__(self, theorem_id: str = None, inputs: dict = None, checks: List[Report] = None):
        super().__init__(theorem_id=theorem_id, inputs=inputs)
        self["checks"] = []
        for check in checks or []:
            self.add(check)

    @property
    def checks(self) -> List[dict]:
        return self["checks"]

    def add(self, check: Report):
        self.checks.append(check)
        self.verdict = aggregate([self.verdict, Verdict(check["verdict"])])
        return check

    def counts(self) -> dict:
        rslt = {v.value: 0 for v in (Verdict.passed, Verdict.failed, Verdict.inconclusive)}
        for check in self.checks:
            rslt[Verdict(check["verdict"]).outcome.value] += 1
        return rslt


def to_json(document: dict) -> str:
    """Deterministic JSON text for a report document"""
    return json.dumps(
        {"schema": JSON_SCHEMA_VERSION, **document},
        sort_keys=True,
        indent=2,
        ensure_ascii=False,
    )
