"""Codebooks on disk: a line-oriented text format and a JSON twin.

Text layout::

    # metric=cyclic
    # n=6
    # d=4
    # label=<anything without a newline>
    1 3 5 2 4 6
    ...

Cyclic codebooks list the canonical (1-fixing) coset member on each line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from .errors import ParameterError
from .perm import CyclicCoset, Perm, check_perm, format_perm, parse_perm

METRICS = ("cyclic", "block")
_HEADER_KEYS = ("metric", "n", "d", "label")


@dataclass(frozen=True)
class Codebook:
    metric: str
    n: int
    d: int
    members: Tuple[Perm, ...]
    label: str = ""

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ParameterError(f"unknown metric {self.metric!r}")
        if "\n" in self.label:
            raise ParameterError("label must be a single line")
        members = tuple(check_perm(m) for m in self.members)
        object.__setattr__(self, "members", members)
        for idx, m in enumerate(members, 1):
            if len(m) != self.n:
                raise ParameterError(f"member {idx} has length {len(m)}, expected {self.n}")
            if self.metric == "cyclic" and m[0] != 1:
                raise ParameterError(f"member {idx} is not a canonical coset member")
        if len(set(members)) != len(members):
            raise ParameterError("codebook members must be distinct")

    @classmethod
    def from_cosets(cls, cosets: Sequence[CyclicCoset], d: int, label: str = "") -> "Codebook":
        n = cosets[0].n if cosets else 0
        return cls("cyclic", n, d, tuple(c.canonical for c in cosets), label)

    def __len__(self) -> int:
        return len(self.members)

    def cosets(self) -> List[CyclicCoset]:
        return [CyclicCoset(m) for m in self.members]

    # -- serialisation --

    def to_text(self) -> str:
        lines = [
            f"# metric={self.metric}",
            f"# n={self.n}",
            f"# d={self.d}",
            f"# label={self.label}",
        ]
        lines.extend(format_perm(m) for m in self.members)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Codebook":
        header = {}
        members = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if line.startswith("#"):
                key, sep, value = line[1:].strip().partition("=")
                if not sep or key not in _HEADER_KEYS:
                    raise ParameterError(f"line {lineno}: bad header {line!r}")
                header[key] = line.split("=", 1)[1] if key == "label" else value.strip()
            elif line.strip():
                try:
                    members.append(parse_perm(line))
                except ParameterError as exc:
                    raise ParameterError(f"line {lineno}: {exc}") from None
        missing = [k for k in _HEADER_KEYS if k not in header]
        if missing:
            raise ParameterError(f"missing header field(s): {', '.join(missing)}")
        return cls(header["metric"], int(header["n"]), int(header["d"]),
                   tuple(members), header["label"])

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "n": self.n,
            "d": self.d,
            "label": self.label,
            "members": [list(m) for m in self.members],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Codebook":
        return cls(data["metric"], int(data["n"]), int(data["d"]),
                   tuple(tuple(m) for m in data["members"]), data.get("label", ""))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"

    def write(self, path: Union[str, Path], structured: bool = False) -> Path:
        path = Path(path)
        path.write_text(self.to_json() if structured else self.to_text())
        return path


def read_codebook(path: Union[str, Path]) -> Codebook:
    """Load a codebook, detecting the JSON variant by its leading brace."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return Codebook.from_dict(json.loads(text))
    return Codebook.from_text(text)
