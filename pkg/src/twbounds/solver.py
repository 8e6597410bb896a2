"""Whole-instance orchestration: decompose, run both bound workers, report.

The graph is reduced to almost-clique separator parts.  The upper-bound side
keeps one solution per part and always improves the widest one, publishing
recombined decompositions; the lower-bound side lifts minors of the largest
part first (moving to smaller still-relevant parts if it proves a part
exact), publishing verified certificates.  The workers meet through a shared
monotone bound pair and stop when the bounds match or the budget expires.
"""

from __future__ import annotations

import random
import threading
import time
from dataclasses import dataclass, field

from .btdp import SIZE_CAP, TreeDecomposition, validate_td
from .certificates import MinorCertificate, verify_certificate
from .control import Cancelled, CancelToken, SharedBounds
from .decompose import AcsDecomposition, decompose, recombine
from .graph import Graph, degeneracy
from .lower import LbParams, lb_main_loop
from .upper import Solution, UbParams, improve, initial_solution, shrink_solution


@dataclass(frozen=True)
class SolveConfig:
    timeout: float = 60.0
    seed: int = 1
    serial: bool = False
    ub_params: UbParams = field(default_factory=UbParams)
    lb_params: LbParams = field(default_factory=LbParams)
    size_cap: int = SIZE_CAP


@dataclass(frozen=True)
class SolveEvent:
    elapsed: float
    kind: str  # "lb" or "ub"
    value: int


@dataclass
class SolveReport:
    n: int
    m: int
    lower: int
    upper: int
    td: TreeDecomposition
    certificate: MinorCertificate | None
    events: list[SolveEvent]
    elapsed: float
    t_lb: float
    t_ub: float

    @property
    def solved(self) -> bool:
        return self.lower == self.upper

    def summary_text(self) -> str:
        """Deterministic summary: no wall-clock fields."""
        lines = [
            f"n {self.n}",
            f"m {self.m}",
            f"lower_bound {self.lower}",
            f"upper_bound {self.upper}",
            f"solved {int(self.solved)}",
            f"td_width {self.td.width}",
            f"certificate_groups {self.certificate.vertex_count if self.certificate else 0}",
            "events " + " ".join(f"{e.kind}:{e.value}" for e in self.events),
        ]
        return "\n".join(lines) + "\n"


class _Recorder:
    def __init__(self, started: float):
        self.started = started
        self.lock = threading.Lock()
        self.events: list[SolveEvent] = []
        self.best_td: TreeDecomposition | None = None
        self.best_cert: MinorCertificate | None = None
        self.t_lb = 0.0
        self.t_ub = 0.0

    def record_ub(self, value: int, td: TreeDecomposition) -> None:
        with self.lock:
            t = time.monotonic() - self.started
            self.events.append(SolveEvent(t, "ub", value))
            self.best_td = td
            self.t_ub = t

    def record_lb(self, value: int, cert: MinorCertificate) -> None:
        with self.lock:
            t = time.monotonic() - self.started
            self.events.append(SolveEvent(t, "lb", value))
            self.best_cert = cert
            self.t_lb = t


class _UbWorker:
    """Round-robin improvement over the per-part solutions."""

    def __init__(self, g, dec: AcsDecomposition, config: SolveConfig,
                 bounds: SharedBounds, recorder: _Recorder, budget: CancelToken):
        self.g = g
        self.dec = dec
        self.config = config
        self.bounds = bounds
        self.recorder = recorder
        self.budget = budget
        self.rng = random.Random(config.seed)
        self.sols: list[Solution] = []

    def start(self) -> None:
        for part in self.dec.parts:
            sol = initial_solution(part.graph, self.config.ub_params, self.rng, self.budget)
            self.sols.append(sol)
        self._publish()

    def _value(self) -> int:
        return max(s.value for s in self.sols)

    def _publish(self) -> None:
        value = self._value()
        td = recombine(self.dec, [s.best_td for s in self.sols])
        if self.bounds.update_upper(value):
            self.recorder.record_ub(value, td)
        elif self.recorder.best_td is None:
            with self.recorder.lock:
                self.recorder.best_td = td

    def step(self) -> bool:
        """Improve the widest part; returns False when no work remains."""
        if self.bounds.gap_closed() or self.budget.is_set():
            return False
        if len(self.sols) != len(self.dec.parts):
            return False  # initialization was cut short by the budget
        before = self._value()
        i0 = max(range(len(self.sols)), key=lambda i: (self.sols[i].value, -i))
        improved = improve(
            self.dec.parts[i0].graph, self.sols[i0], self.config.ub_params,
            self.rng, self.budget,
        )
        if improved.value < self.sols[i0].value:
            self.sols[i0] = shrink_solution(improved)
        else:
            self.sols[i0] = improved
        if self._value() < before:
            self._publish()
        return True

    def run(self) -> None:
        try:
            self.start()
            while self.step():
                pass
        except Cancelled:
            pass


class _LbWorker:
    """Lift minors part by part, largest bag first."""

    def __init__(self, g, dec: AcsDecomposition, config: SolveConfig,
                 bounds: SharedBounds, recorder: _Recorder, budget: CancelToken):
        self.g = g
        self.dec = dec
        self.config = config
        self.bounds = bounds
        self.recorder = recorder
        self.budget = budget
        self.rng = random.Random(config.seed)
        order = sorted(
            range(len(dec.parts)),
            key=lambda i: (-dec.parts[i].bag.bit_count(), i),
        )
        self._queue = order
        self._pos = 0
        self._gen = None

    def _next_gen(self):
        while self._pos < len(self._queue):
            part = self.dec.parts[self._queue[self._pos]]
            self._pos += 1
            # a part can only help if its width can exceed the current bound
            if part.graph.n - 1 > self.bounds.lower:
                return part, lb_main_loop(
                    part.graph, self.config.lb_params, self.rng, self.bounds,
                    self.budget, self.config.size_cap,
                )
        return None

    def step(self) -> bool:
        """Advance to the next lower-bound emission; False when done."""
        if self.bounds.gap_closed() or self.budget.is_set():
            return False
        if self._gen is None:
            nxt = self._next_gen()
            if nxt is None:
                return False
            self._part, self._gen = nxt
        try:
            k, classes = next(self._gen)
        except StopIteration:
            self._gen = None
            return self.step()
        groups = tuple(self._part.lift_group(c) for c in classes)
        cert = MinorCertificate(claimed_k=k, groups=groups)
        bad = verify_certificate(self.g, cert, self.budget, self.config.size_cap)
        if bad is not None:
            raise AssertionError(f"internal certificate failed verification: {bad}")
        if k >= self.bounds.lower:
            self.recorder.record_lb(k, cert)
        return True

    def run(self) -> None:
        try:
            while self.step():
                pass
        except Cancelled:
            pass


def solve(g: Graph, config: SolveConfig | None = None) -> SolveReport:
    """Run both bound workers on the decomposed instance and report."""
    if config is None:
        config = SolveConfig()
    started = time.monotonic()
    recorder = _Recorder(started)
    budget = CancelToken.with_timeout(config.timeout)

    if g.n == 0:
        td = TreeDecomposition((), (), -1)
        return SolveReport(0, 0, -1, -1, td, None, [], 0.0, 0.0, 0.0)

    dec = decompose(g, random.Random(config.seed))
    bounds = SharedBounds()
    ub = _UbWorker(g, dec, config, bounds, recorder, budget)
    lb = _LbWorker(g, dec, config, bounds, recorder, budget)

    if config.serial:
        try:
            ub.start()
        except Cancelled:
            pass
        ub_live = lb_live = True
        while (ub_live or lb_live) and not bounds.gap_closed() and not budget.is_set():
            if lb_live:
                try:
                    lb_live = lb.step()
                except Cancelled:
                    lb_live = False
            if ub_live and not bounds.gap_closed():
                try:
                    ub_live = ub.step()
                except Cancelled:
                    ub_live = False
    else:
        t_ub = threading.Thread(target=ub.run, name="ub-worker")
        t_lb = threading.Thread(target=lb.run, name="lb-worker")
        t_ub.start()
        t_lb.start()
        t_ub.join()
        t_lb.join()

    lower, upper = bounds.snapshot()
    td = recorder.best_td
    if td is None or upper is None:
        td = TreeDecomposition((g.full,), (), max(g.n - 1, 0))
        upper = td.width
    cert = recorder.best_cert
    if cert is None and lower == 0 and g.n >= 1:
        cert = MinorCertificate(claimed_k=0, groups=(1,))
    assert validate_td(g, td) is None
    return SolveReport(
        n=g.n,
        m=g.m,
        lower=lower,
        upper=upper,
        td=td,
        certificate=cert,
        events=list(recorder.events),
        elapsed=time.monotonic() - started,
        t_lb=recorder.t_lb,
        t_ub=recorder.t_ub,
    )
