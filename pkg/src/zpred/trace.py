from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple


@dataclass
class QueryTrace:
    """Per-query counters. Owned by the caller; never shared between queries.

    ``fbs_calls`` holds ``(a, b, iterations)`` for every fat binary search the
    query ran. ``notes`` carries algorithm-specific facts (exit line, cut
    lengths) that the bound checks read. With ``debug`` set, every fat binary
    search iteration appends its ``(a, b)`` window to ``history``.
    """

    loop_iterations: int = 0
    fbs_iterations: int = 0
    static_fn_probes: int = 0
    window: Optional[Tuple[int, int]] = None
    fbs_calls: List[Tuple[int, int, int]] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)
    debug: bool = False
    history: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return self.loop_iterations + self.fbs_iterations

    def absorb(self, other: "QueryTrace") -> None:
        self.loop_iterations += other.loop_iterations
        self.fbs_iterations += other.fbs_iterations
        self.static_fn_probes += other.static_fn_probes
        self.fbs_calls.extend(other.fbs_calls)
        if other.window is not None:
            self.window = other.window

    def as_row(self) -> Dict[str, object]:
        return {"loop_iters": self.loop_iterations, "fbs_iters": self.fbs_iterations,
                "probes": self.static_fn_probes}
