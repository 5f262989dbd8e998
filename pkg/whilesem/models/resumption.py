"""
Resumptions: possibly infinite trees describing interactive behaviour.

A resumption is observed one head at a time. Children are built on demand, so
a resumption may denote an infinite tree while every observation does finite
work. Three flavours share the head vocabulary:

    Res   ret / in / out / delay        (delayful)
    ResR  ret / in / out                (delay-free)
    ResC  ret / in / out / black hole   (classical-style)

A resumption may carry a behaviour key. Two resumptions with equal keys are
guaranteed to behave identically, which lets checkers skip pairs they have
already explored.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, ClassVar, FrozenSet, Hashable, Optional, Sequence, Union

from whilesem.models.syntax import State
from whilesem.models.verdict import Step, Witness


# ---------------------------------------------------------------------------
# Heads
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ret:
    """Termination with a final state."""
    state: State

    kind: ClassVar[str] = "ret"


@dataclass(frozen=True)
class In:
    """Input request; `resume` maps every integer to the continuation."""
    resume: Callable[[int], "Resumption"] = field(compare=False)

    kind: ClassVar[str] = "in"


@dataclass(frozen=True)
class Out:
    """Output of `value`, continuing as `tail`."""
    value: int
    tail: "Resumption" = field(compare=False)

    kind: ClassVar[str] = "out"


@dataclass(frozen=True)
class Delay:
    """One internal step."""
    tail: "Resumption" = field(compare=False)

    kind: ClassVar[str] = "delay"


@dataclass(frozen=True)
class BlackHole:
    """Detected silent divergence; `evidence` explains how it was detected."""
    evidence: Any = field(default=None, compare=False)

    kind: ClassVar[str] = "black_hole"


Head = Union[Ret, In, Out, Delay, BlackHole]


def same_head(left: Head, right: Head) -> bool:
    """True iff two heads agree on constructor and observable payload."""
    if left.kind != right.kind:
        return False
    if isinstance(left, Ret):
        return left.state == right.state
    if isinstance(left, Out):
        return left.value == right.value
    return True


def describe(head: Head) -> str:
    """Short human-readable form of a head, used in witnesses."""
    if isinstance(head, Ret):
        return f"ret {head.state.render()}"
    if isinstance(head, Out):
        return f"out {head.value}"
    if isinstance(head, In):
        return "in"
    if isinstance(head, Delay):
        return "δ"
    return "•"


# ---------------------------------------------------------------------------
# Resumptions
# ---------------------------------------------------------------------------

class Resumption:
    """
    Lazily observed resumption tree.

    The head is computed by `make` on first observation and memoized. If
    `make` raises, nothing is memoized and the next observation runs it again,
    so errors are as deterministic as heads.
    """

    __slots__ = ("_make", "_head", "key")

    ALLOWED: ClassVar[FrozenSet[str]] = frozenset()

    def __init__(self, make: Callable[[], Head], key: Optional[Hashable] = None):
        self._make = make
        self._head: Optional[Head] = None
        self.key = key

    def observe(self) -> Head:
        """Return the head, computing it on first use."""
        if self._head is None:
            head = self._make()
            if head.kind not in self.ALLOWED:
                raise TypeError(f"{type(self).__name__} cannot have a {head.kind} head")
            self._head = head
            self._make = None
        return self._head

    def __repr__(self) -> str:
        if self._head is None:
            return f"{type(self).__name__}(<unobserved>)"
        return f"{type(self).__name__}({describe(self._head)} …)"

    @classmethod
    def ret(cls, state: State) -> "Resumption":
        return cls(lambda: Ret(state), key=("ret", state))

    @classmethod
    def inp(cls, resume: Callable[[int], "Resumption"],
            key: Optional[Hashable] = None) -> "Resumption":
        return cls(lambda: In(resume), key=key)

    @classmethod
    def out(cls, value: int, tail: "Resumption") -> "Resumption":
        key = ("out", value, tail.key) if tail.key is not None else None
        return cls(lambda: Out(value, tail), key=key)

    @classmethod
    def later(cls, make: Callable[[], "Resumption"],
              key: Optional[Hashable] = None) -> "Resumption":
        """Defer building a whole resumption until it is observed."""
        return cls(lambda: make().observe(), key=key)


class Res(Resumption):
    """Delayful resumption."""

    __slots__ = ()

    ALLOWED = frozenset([Ret.kind, In.kind, Out.kind, Delay.kind])

    @classmethod
    def delay(cls, tail: "Res") -> "Res":
        key = ("delay", tail.key) if tail.key is not None else None
        return cls(lambda: Delay(tail), key=key)


class ResR(Resumption):
    """Delay-free resumption."""

    __slots__ = ()

    ALLOWED = frozenset([Ret.kind, In.kind, Out.kind])


class ResC(Resumption):
    """Classical-style resumption with a black hole for silent divergence."""

    __slots__ = ()

    ALLOWED = frozenset([Ret.kind, In.kind, Out.kind, BlackHole.kind])

    @classmethod
    def black_hole(cls, evidence: Any = None) -> "ResC":
        return cls(lambda: BlackHole(evidence), key=("black_hole",))


# ---------------------------------------------------------------------------
# Convergence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Converged:
    """A non-delay head reached after exactly `delays_stripped` delays."""
    head: Head
    delays_stripped: int

    converged: ClassVar[bool] = True


@dataclass(frozen=True)
class FuelExhausted:
    """
    No non-delay head within the fuel.

    Attributes:
        rest: The resumption after `fuel` delays; its head is again a delay
        fuel: The fuel that ran out
    """
    rest: Resumption = field(compare=False)
    fuel: int = 0

    converged: ClassVar[bool] = False


ConvergeResult = Union[Converged, FuelExhausted]


def converges(r: Resumption, fuel: int) -> ConvergeResult:
    """
    Strip at most `fuel` delays looking for a non-delay head.

    Args:
        r: Resumption to converge
        fuel: Maximum number of delays to strip

    Returns:
        Converged with the head and the exact number of delays stripped, or
        FuelExhausted. Nothing beyond the first non-delay head is observed.

    Raises:
        ValueError: If fuel is less than 1
    """
    if fuel < 1:
        raise ValueError(f"fuel must be at least 1, got {fuel}")
    node = r
    head = node.observe()
    stripped = 0
    while isinstance(head, Delay):
        if stripped == fuel:
            return FuelExhausted(node, fuel)
        node = head.tail
        head = node.observe()
        stripped += 1
    return Converged(head, stripped)


def advance(rest: Resumption) -> Resumption:
    """Step past the delay at the front of an exhausted resumption."""
    head = rest.observe()
    if not isinstance(head, Delay):
        raise ValueError(f"expected a delay, found {describe(head)}")
    return head.tail


# ---------------------------------------------------------------------------
# Rendering and replay
# ---------------------------------------------------------------------------

def render(r: Resumption, depth: int, inputs: Sequence[int] = (0,)) -> str:
    """
    Render a bounded prefix in trace syntax.

    Each head costs one unit of depth: `δ`, `out v`, `in{v↦…}` (expanded for
    every sampled input), `ret {…}` and `•`, joined by dots. A prefix cut by
    the depth bound ends in `…`.
    """
    parts = []
    node = r
    while True:
        if depth <= 0:
            parts.append("…")
            break
        head = node.observe()
        depth -= 1
        if isinstance(head, Ret):
            parts.append(f"ret {head.state.render()}")
            break
        if isinstance(head, BlackHole):
            parts.append("•")
            break
        if isinstance(head, Delay):
            parts.append("δ")
            node = head.tail
        elif isinstance(head, Out):
            parts.append(f"out {head.value}")
            node = head.tail
        else:
            branches = ",".join(f"{v}↦{render(head.resume(v), depth, inputs)}" for v in inputs)
            parts.append("in{" + branches + "}")
            break
    return ".".join(parts)


class ReplayError(Exception):
    """Exception raised when a witness path does not fit a resumption."""


def replay(r: Resumption, witness: Witness) -> Union[Head, ConvergeResult]:
    """
    Follow a witness path through a resumption.

    Strong witnesses list every head, so the result is the head at the end of
    the path. Weak witnesses converge with the witness fuel before every
    action and at the end, so the result is a ConvergeResult.

    Raises:
        ReplayError: If the resumption does not offer a step of the path
    """
    node = r
    for step in witness.steps:
        if step.kind == Step.SKIP:
            for _ in range(step.value):
                node = _follow(node.observe(), step, node)
            continue
        if witness.weak and step.kind != Step.DELAY:
            result = converges(node, witness.fuel)
            if not result.converged:
                raise ReplayError(f"no convergence before {step}")
            head = result.head
        else:
            head = node.observe()
        node = _follow(head, step, node)
    if witness.weak:
        return converges(node, witness.fuel)
    return node.observe()


def _follow(head: Head, step: Step, node: Resumption) -> Resumption:
    if step.kind in (Step.DELAY, Step.SKIP) and isinstance(head, Delay):
        return head.tail
    if step.kind == Step.OUT and isinstance(head, Out) and head.value == step.value:
        return head.tail
    if step.kind == Step.IN and isinstance(head, In):
        return head.resume(step.value)
    raise ReplayError(f"cannot take {step} at {describe(head)}")


# ---------------------------------------------------------------------------
# Example resumptions
# ---------------------------------------------------------------------------

def bot() -> Res:
    """Silent divergence: an endless run of delays."""
    return Res.delay(Res.later(bot, key=("bot",)))


def rep(n: int) -> Res:
    """Output `n` forever, two delays before each output."""
    return Res.delay(Res.delay(Res.out(n, Res.later(lambda: rep(n), key=("rep", n)))))


def rep_fast(n: int) -> Res:
    """Output `n` forever, one delay before each output."""
    return Res.delay(Res.out(n, Res.later(lambda: rep_fast(n), key=("rep_fast", n))))


def echo(state: State) -> Res:
    """Echo inputs until a 0 arrives, then terminate with `state`."""
    def resume(n: int) -> Res:
        if n != 0:
            return Res.delay(Res.out(n, Res.later(lambda: echo(state), key=("echo", state))))
        return Res.delay(Res.ret(state))
    return Res.inp(resume, key=("echo", state))


def echo_div() -> Res:
    """Echo inputs until a 0 arrives, then diverge silently."""
    def resume(n: int) -> Res:
        if n != 0:
            return Res.delay(Res.out(n, Res.later(echo_div, key=("echo_div",))))
        return Res.delay(bot())
    return Res.inp(resume, key=("echo_div",))


def up(n: int) -> Res:
    """Count up from `n`, with a delay before every output and after it."""
    return Res.delay(Res.out(n, Res.delay(Res.later(lambda: up(n + 1), key=("up", n + 1)))))


def sum_res() -> Res:
    """Interactive adder: read two integers, output their sum, repeat."""
    def first(m: int) -> Res:
        return Res.inp(lambda n: Res.out(m + n, Res.later(sum_res, key=("sum",))))
    return Res.delay(Res.inp(first))


def mult_res() -> Res:
    """Delay-free multiplier that diverges silently on a negative first operand."""
    def first(m: int) -> Res:
        def second(n: int) -> Res:
            if m >= 0:
                return Res.out(m * n, Res.later(mult_res, key=("mult",)))
            return bot()
        return Res.inp(second)
    return Res.inp(first, key=("mult",))
