"""Torus front projections of Legendrian unknots in the complement of the Hopf link.

A front is stored at the level of a Gauss word: the cyclic sequence of
crossing visits and cusps met while traversing the oriented knot, together
with the class ``(a, b)`` of the projected curve in ``H_1(T^2)``.  Crossing
signs and cusp signs are caller-supplied labels; nothing here recomputes
them from an embedding.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Iterable, NamedTuple, Optional, Union


class HomologyClass(NamedTuple):
    a: int
    b: int


class Role(str, Enum):
    OVER = "over"
    UNDER = "under"

    def swapped(self) -> "Role":
        return Role.UNDER if self is Role.OVER else Role.OVER


class InvalidDiagram(ValueError):
    """Raised when an invariant is requested for a diagram that fails validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid diagram: " + "; ".join(self.violations))


def _check_sign(sign) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return int(sign)


@dataclass(frozen=True)
class CrossingEvent:
    crossing_id: str
    role: Role
    sign: int

    def __post_init__(self):
        object.__setattr__(self, "role", Role(self.role))
        object.__setattr__(self, "sign", _check_sign(self.sign))

    def sort_key(self) -> tuple:
        return (0, self.crossing_id, self.role.value, self.sign)


@dataclass(frozen=True)
class CuspEvent:
    sign: int

    def __post_init__(self):
        object.__setattr__(self, "sign", _check_sign(self.sign))

    def sort_key(self) -> tuple:
        return (1, "", "", self.sign)


Event = Union[CrossingEvent, CuspEvent]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def canonical_rotation(events: tuple) -> tuple:
    """Lexicographically smallest rotation of a cyclic event word."""
    if not events:
        return ()
    keys = [e.sort_key() for e in events]
    n = len(events)
    best = min(range(n), key=lambda i: keys[i:] + keys[:i])
    return events[best:] + events[:best]


@dataclass(frozen=True, eq=False)
class TorusFrontDiagram:
    """Cyclic event word plus homology class of a torus front.

    Equality is literal: the same cyclic word up to rotation and the same
    homology class.  The name is a label only and does not take part in
    comparisons.
    """

    events: tuple = ()
    homology: HomologyClass = HomologyClass(0, 0)
    name: Optional[str] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        a, b = self.homology
        object.__setattr__(self, "homology", HomologyClass(int(a), int(b)))

    @property
    def a(self) -> int:
        return self.homology[0]

    @property
    def b(self) -> int:
        return self.homology[1]

    def _key(self):
        return (canonical_rotation(self.events), self.homology)

    def __eq__(self, other):
        if not isinstance(other, TorusFrontDiagram):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def crossings(self) -> dict[str, list[CrossingEvent]]:
        out: dict[str, list[CrossingEvent]] = {}
        for ev in self.events:
            if isinstance(ev, CrossingEvent):
                out.setdefault(ev.crossing_id, []).append(ev)
        return out

    def cusps(self) -> list[CuspEvent]:
        return [ev for ev in self.events if isinstance(ev, CuspEvent)]

    def replace(self, events: Iterable[Event] = None, homology=None, name=None) -> "TorusFrontDiagram":
        return TorusFrontDiagram(
            events=self.events if events is None else tuple(events),
            homology=self.homology if homology is None else homology,
            name=self.name if name is None else name,
        )


def validate_diagram(d: TorusFrontDiagram) -> ValidationReport:
    violations = []
    for cid, occ in sorted(d.crossings().items()):
        if len(occ) == 1:
            violations.append(f"unpaired crossing {cid!r}")
            continue
        if len(occ) > 2:
            violations.append(f"crossing {cid!r} occurs {len(occ)} times")
            continue
        roles = Counter(ev.role for ev in occ)
        if roles[Role.OVER] != 1 or roles[Role.UNDER] != 1:
            violations.append(f"crossing {cid!r} needs one over and one under strand")
        if occ[0].sign != occ[1].sign:
            violations.append(f"crossing {cid!r} has inconsistent signs")
    n_cusps = len(d.cusps())
    if n_cusps % 2:
        violations.append(f"odd cusp count {n_cusps}")
    return ValidationReport(tuple(violations))


def _require_valid(d: TorusFrontDiagram) -> None:
    report = validate_diagram(d)
    if not report.ok:
        raise InvalidDiagram(report.violations)


def crossing_counts(d: TorusFrontDiagram) -> tuple[int, int]:
    """Number of positive and negative crossings, each crossing counted once."""
    pos = neg = 0
    for occ in d.crossings().values():
        if occ[0].sign > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg


def cusp_counts(d: TorusFrontDiagram) -> tuple[int, int]:
    signs = Counter(c.sign for c in d.cusps())
    return signs[1], signs[-1]


def thurston_bennequin(d: TorusFrontDiagram) -> int:
    _require_valid(d)
    pos, neg = crossing_counts(d)
    return pos - neg - len(d.cusps()) // 2 + d.a * d.b


def rotation_number(d: TorusFrontDiagram) -> int:
    _require_valid(d)
    up, down = cusp_counts(d)
    return (up - down) // 2 + d.a - d.b


def self_linking_pushoff(d: TorusFrontDiagram) -> int:
    """Self-linking number of the positive transverse push-off."""
    return thurston_bennequin(d) - rotation_number(d)


def classical_invariants(d: TorusFrontDiagram) -> tuple[int, int]:
    return thurston_bennequin(d), rotation_number(d)


def linear_unknot(m: int, n: int) -> TorusFrontDiagram:
    """The unknot ``K_{m,n}`` lifted from a linear curve of class ``(m, n)``.

    Only non-negative slopes have a unique Legendrian lift, so ``m * n < 0``
    is rejected.
    """
    if gcd(abs(m), abs(n)) != 1:
        raise ValueError(f"({m}, {n}) is not a primitive class")
    if m * n < 0:
        raise ValueError(f"negative slope ({m}, {n}) has no unique Legendrian lift")
    return TorusFrontDiagram(events=(), homology=(m, n), name=f"K({m},{n})")


def apply_symmetry_psi(d: TorusFrontDiagram) -> TorusFrontDiagram:
    """Image under the contactomorphism ``(x, y, z) -> (-y, -x, 1 - z)``.

    The homology class maps to ``(-b, -a)``.  Since ``z`` is reversed the
    over/under labels swap; crossing and cusp signs are kept, which is the
    labelling that leaves tb and rot unchanged.
    """
    _require_valid(d)
    events = []
    for ev in d.events:
        if isinstance(ev, CrossingEvent):
            events.append(CrossingEvent(ev.crossing_id, ev.role.swapped(), ev.sign))
        else:
            events.append(ev)
    name = f"psi({d.name})" if d.name else None
    return TorusFrontDiagram(tuple(events), (-d.b, -d.a), name)


def reverse_orientation(d: TorusFrontDiagram) -> TorusFrontDiagram:
    _require_valid(d)
    events = []
    for ev in reversed(d.events):
        if isinstance(ev, CuspEvent):
            events.append(CuspEvent(-ev.sign))
        else:
            events.append(ev)
    return TorusFrontDiagram(tuple(events), (-d.a, -d.b), d.name)
