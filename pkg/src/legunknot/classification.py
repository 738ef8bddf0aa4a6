"""Rules engine for Legendrian and transverse unknots in contact structures on S^3."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class StructureKind(str, Enum):
    TIGHT = "tight"
    OVERTWISTED = "overtwisted"


@dataclass(frozen=True)
class ContactStructureId:
    kind: StructureKind
    hopf: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", StructureKind(self.kind))
        if self.kind is StructureKind.TIGHT and self.hopf != 0:
            raise ValueError("the tight structure has Hopf invariant 0")

    @property
    def admits_nonloose_unknots(self) -> bool:
        return self.kind is StructureKind.OVERTWISTED and self.hopf == -1

    @property
    def is_tight(self) -> bool:
        return self.kind is StructureKind.TIGHT

    def label(self) -> str:
        return "tight" if self.is_tight else f"ot:{self.hopf}"

    @classmethod
    def parse(cls, text: str) -> "ContactStructureId":
        """Parse ``tight`` or ``ot:<hopf>``."""
        if text == "tight":
            return TIGHT
        if text.startswith("ot:"):
            try:
                return cls(StructureKind.OVERTWISTED, int(text[3:]))
            except ValueError:
                pass
        raise ValueError(f"bad structure {text!r}; expected 'tight' or 'ot:<hopf>'")


TIGHT = ContactStructureId(StructureKind.TIGHT, 0)
XI_MINUS_ONE = ContactStructureId(StructureKind.OVERTWISTED, -1)


@dataclass(frozen=True)
class LegendrianClassLabel:
    name: str
    oriented: bool = True
    loose: bool = True


@dataclass(frozen=True)
class ClassificationResult:
    nonloose: tuple[LegendrianClassLabel, ...] = ()
    loose: tuple[LegendrianClassLabel, ...] = ()
    # classes in the tight structure, where looseness does not apply
    tight: tuple[LegendrianClassLabel, ...] = ()

    @property
    def total(self) -> int:
        return len(self.nonloose) + len(self.loose) + len(self.tight)

    def all_classes(self) -> tuple[LegendrianClassLabel, ...]:
        return self.nonloose + self.loose + self.tight


class InadmissiblePair(ValueError):
    pass


def admissible_pair(tb: int, rot: int) -> bool:
    """Unknots have odd self-linking, so tb + rot must be odd."""
    return (tb + rot) % 2 == 1


def nonloose_labels(tb: int, rot: int) -> tuple[str, str] | tuple[()]:
    """Names of the two non-loose representatives, or ``()`` if there are none."""
    if tb <= 0 or abs(rot) != tb - 1:
        return ()
    n = tb
    if rot >= 0:
        return (f"K({n},1)", f"K(-1,-{n})")
    return (f"K(1,{n})", f"K(-{n},-1)")


def classify_unknots(structure: ContactStructureId, tb: int, rot: int) -> ClassificationResult:
    if not admissible_pair(tb, rot):
        raise InadmissiblePair(f"(tb, rot) = ({tb}, {rot}) has tb + rot even; no unknot realizes it")
    if structure.is_tight:
        if tb <= -1 and tb + abs(rot) <= -1:
            return ClassificationResult(tight=(LegendrianClassLabel("tight-std", loose=False),))
        return ClassificationResult()
    nonloose: tuple = ()
    if structure.admits_nonloose_unknots:
        nonloose = tuple(LegendrianClassLabel(n, loose=False) for n in nonloose_labels(tb, rot))
        if tb >= 0:
            loose = (LegendrianClassLabel("loose-A"), LegendrianClassLabel("loose-B"))
        else:
            loose = (LegendrianClassLabel("loose"),)
    else:
        loose = (LegendrianClassLabel("loose"),)
    return ClassificationResult(nonloose=nonloose, loose=loose)


def bennequin_check(tb: int, rot: int, chi: int) -> bool:
    return tb + abs(rot) <= -chi


def swiatkowski_check(tb: int, rot: int, chi: int) -> bool:
    return -abs(tb) + abs(rot) <= -chi


def transverse_unknot_classes(structure: ContactStructureId, sl: int) -> int:
    """Number of transverse unknots with self-linking ``sl``.

    In overtwisted structures every transverse unknot is loose.
    """
    if sl % 2 == 0:
        return 0
    if structure.is_tight:
        return 1 if sl <= -1 else 0
    return 1


@dataclass(frozen=True)
class GroupDescriptor:
    name: str
    generators: tuple[str, ...] = field(default=())

    @property
    def order(self) -> int:
        return 2 ** len(self.generators)


def mapping_class_group(structure: ContactStructureId) -> GroupDescriptor:
    """Coorientation-preserving contactomorphisms modulo contact isotopy."""
    if structure.is_tight:
        return GroupDescriptor("trivial")
    if structure.admits_nonloose_unknots:
        return GroupDescriptor("Z2+Z2", ("d", "kappa"))
    return GroupDescriptor("Z2", ("d",))


_KAPPA_SWAP = {"loose-A": "loose-B", "loose-B": "loose-A"}


def _kappa_partner(name: str, tb: int, rot: int) -> str:
    if name in _KAPPA_SWAP:
        return _KAPPA_SWAP[name]
    if name == "loose":
        return name
    pair = nonloose_labels(tb, rot)
    if name in pair:
        return pair[1 - pair.index(name)]
    raise KeyError(name)


def contactomorphism_action(
    element: tuple[int, int],
    cls: LegendrianClassLabel,
    context: tuple[ContactStructureId, int, int],
) -> LegendrianClassLabel:
    """Action of ``(d, kappa)`` on a Legendrian isotopy class of unknots in xi_{-1}.

    ``kappa`` swaps the two classes sharing classical invariants (and
    looseness); ``d`` fixes every class.
    """
    structure, tb, rot = context
    if not structure.admits_nonloose_unknots:
        raise ValueError("the (d, kappa) action is defined for xi_{-1} only")
    d, kappa = element
    if d not in (0, 1) or kappa not in (0, 1):
        raise ValueError(f"group element must be in Z2+Z2, got {element!r}")
    present = classify_unknots(structure, tb, rot).all_classes()
    if cls not in present:
        raise KeyError(f"class {cls.name!r} does not occur for (tb, rot) = ({tb}, {rot})")
    if not kappa:
        return cls
    partner = _kappa_partner(cls.name, tb, rot)
    return next(c for c in present if c.name == partner)


def group_elements() -> tuple[tuple[int, int], ...]:
    return ((0, 0), (1, 0), (0, 1), (1, 1))


def compose(g: tuple[int, int], h: tuple[int, int]) -> tuple[int, int]:
    return ((g[0] + h[0]) % 2, (g[1] + h[1]) % 2)


def action_kernel(tb_max: int = 4) -> tuple[tuple[int, int], ...]:
    """Group elements fixing every class in xi_{-1} with ``|tb| <= tb_max``."""
    kernel = []
    for g in group_elements():
        fixes_all = True
        for tb in range(-tb_max, tb_max + 1):
            for rot in range(-tb_max - 1, tb_max + 2):
                if not admissible_pair(tb, rot):
                    continue
                for c in classify_unknots(XI_MINUS_ONE, tb, rot).all_classes():
                    if contactomorphism_action(g, c, (XI_MINUS_ONE, tb, rot)) != c:
                        fixes_all = False
        if fixes_all:
            kernel.append(g)
    return tuple(kernel)


def lookup_label(structure: ContactStructureId, tb: int, rot: int, name: str) -> Optional[LegendrianClassLabel]:
    for c in classify_unknots(structure, tb, rot).all_classes():
        if c.name == name:
            return c
    return None
