"""The bundled example corpus: session files with ``check`` lines."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .errors import FrobtraceError
from .session import CheckResult, Session

TAGS = ("literature", "oracle", "direct")


def _corpus():
    return resources.files("frobtrace").joinpath("docs", "examples")


def fixture_ids() -> list[str]:
    return sorted(p.name[: -len(".session")] for p in _corpus().iterdir() if p.name.endswith(".session"))


def fixture_source(fid: str) -> str:
    if fid not in fixture_ids():
        raise FrobtraceError(f"unknown fixture {fid!r}; known: {', '.join(fixture_ids())}")
    return _corpus().joinpath(f"{fid}.session").read_text(encoding="utf-8")


@dataclass
class Summary:
    lines: list[str] = field(default_factory=list)
    results: dict[str, list[CheckResult]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(len(v) for v in self.results.values())

    @property
    def failed(self) -> int:
        return sum(not c.passed for v in self.results.values() for c in v)

    @property
    def all_passed(self) -> bool:
        return self.failed == 0 and self.total > 0


def run_fixture(fid: str) -> list[CheckResult]:
    s = Session()
    s.run(fixture_source(fid))
    for c in s.checks:
        if c.tag not in TAGS:
            raise FrobtraceError(f"{fid}/{c.label}: unknown tag {c.tag!r}")
    return s.checks


def verify_builtin(which: str = "all") -> Summary:
    ids = fixture_ids() if which == "all" else [which]
    summary = Summary()
    for fid in ids:
        checks = run_fixture(fid)
        summary.results[fid] = checks
        for c in checks:
            if c.passed:
                summary.lines.append(f"PASS {fid}/{c.label} [{c.tag}]: {c.actual}")
            else:
                summary.lines.append(f"FAIL {fid}/{c.label} [{c.tag}]: expected {c.expected}, got {c.actual}")
        ok = sum(c.passed for c in checks)
        summary.lines.append(f"{fid}: {ok}/{len(checks)} PASS")
    summary.lines.append(f"total: {summary.total - summary.failed}/{summary.total} PASS")
    return summary
