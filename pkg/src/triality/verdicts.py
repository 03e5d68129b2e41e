"""Check outcomes: verdicts with witnesses, and ordered identity reports."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Witness:
    """First failing tuple of a check: slot labels plus the exact defect."""

    labels: tuple[str, ...]
    defect: list | None = None
    note: str = ""


@dataclass(frozen=True)
class Verdict:
    holds: bool | None  # None means the check was skipped
    mode: str  # "exhaustive" or "probabilistic"
    checked: int = 0
    trials: int | None = None
    prime: int | None = None
    witness: Witness | None = None
    skip_reason: str | None = None

    @property
    def skipped(self) -> bool:
        return self.holds is None

    @property
    def failed(self) -> bool:
        return self.holds is False

    def describe(self) -> str:
        if self.skipped:
            return f"SKIPPED ({self.skip_reason})"
        word = "holds" if self.holds else "FAILS"
        if self.mode == "probabilistic":
            extra = f" [probabilistic, {self.trials} trials mod {self.prime}]"
        else:
            extra = f" [exhaustive, {self.checked} tuples]"
        out = word + extra
        if self.witness is not None:
            out += f" witness ({', '.join(self.witness.labels)})"
        return out


def passed(mode: str, checked: int, *, trials=None, prime=None) -> Verdict:
    return Verdict(True, mode, checked, trials=trials, prime=prime)


def failed(mode: str, checked: int, witness: Witness, *, trials=None, prime=None) -> Verdict:
    return Verdict(False, mode, checked, trials=trials, prime=prime, witness=witness)


def skipped(reason: str) -> Verdict:
    return Verdict(None, "exhaustive", 0, skip_reason=reason)


@dataclass
class IdentityReport:
    """Ordered (identity name, verdict) pairs produced by a suite run."""

    entries: list[tuple[str, Verdict]] = field(default_factory=list)

    def add(self, name: str, verdict: Verdict) -> None:
        self.entries.append((name, verdict))

    def __getitem__(self, name: str) -> Verdict:
        for k, v in self.entries:
            if k == name:
                return v
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(k == name for k, _ in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def all_hold(self) -> bool:
        return all(v.holds is not False for _, v in self.entries)

    def failures(self) -> list[str]:
        return [k for k, v in self.entries if v.failed]
