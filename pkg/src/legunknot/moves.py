"""Local rewrites of torus fronts.

Move sites are indices into the event word.  Every rewrite checks its
invariant contract before returning, so a bad template surfaces as a
``MoveError`` rather than a silently wrong diagram.
"""

from __future__ import annotations

from enum import Enum
from itertools import count
from typing import Sequence

from .classification import ContactStructureId, admissible_pair
from .front import (
    CrossingEvent,
    CuspEvent,
    Role,
    TorusFrontDiagram,
    _require_valid,
    rotation_number,
    thurston_bennequin,
    validate_diagram,
)


class MoveError(ValueError):
    pass


class Looseness(str, Enum):
    MUST_BE_LOOSE = "must_be_loose"
    MAY_BE_NONLOOSE = "may_be_nonloose"
    NOT_REALIZABLE = "not_realizable"


def _sign(s: int) -> int:
    if s not in (1, -1):
        raise MoveError(f"sign must be +1 or -1, got {s!r}")
    return s


def _check_position(d: TorusFrontDiagram, position: int) -> int:
    if not 0 <= position <= len(d.events):
        raise MoveError(f"position {position} outside 0..{len(d.events)}")
    return position


def _fresh_ids(d: TorusFrontDiagram, k: int, prefix: str) -> list[str]:
    used = set(d.crossings())
    out = []
    for i in count(1):
        if len(out) == k:
            break
        cid = f"{prefix}{i}"
        if cid not in used:
            out.append(cid)
    return out


def _postcondition(before: TorusFrontDiagram, after: TorusFrontDiagram, dtb: int, drot: int, what: str):
    report = validate_diagram(after)
    if not report.ok:
        raise MoveError(f"{what} produced an invalid diagram: {'; '.join(report.violations)}")
    tb0, rot0 = thurston_bennequin(before), rotation_number(before)
    tb1, rot1 = thurston_bennequin(after), rotation_number(after)
    if (tb1 - tb0, rot1 - rot0) != (dtb, drot):
        raise MoveError(
            f"{what} changed (tb, rot) by ({tb1 - tb0}, {rot1 - rot0}), expected ({dtb}, {drot})"
        )
    return after


def stabilize(d: TorusFrontDiagram, s: int, position: int = 0) -> TorusFrontDiagram:
    """Add a zig-zag: two cusps of sign ``s`` inserted before ``events[position]``."""
    _require_valid(d)
    s = _sign(s)
    position = _check_position(d, position)
    ev = list(d.events)
    ev[position:position] = [CuspEvent(s), CuspEvent(s)]
    return _postcondition(d, d.replace(events=ev), -1, s, "stabilize")


def destabilize(d: TorusFrontDiagram, s: int, position: int | None = None) -> TorusFrontDiagram:
    """Remove an adjacent pair of cusps of sign ``s``.

    With ``position`` given the pair must start there; otherwise the first
    pair in word order (cyclically) is removed.
    """
    _require_valid(d)
    s = _sign(s)
    ev = list(d.events)
    n = len(ev)

    def is_site(i):
        return n >= 2 and ev[i] == CuspEvent(s) and ev[(i + 1) % n] == CuspEvent(s)

    if position is not None:
        if not 0 <= position < max(n, 1) or not is_site(position):
            raise MoveError(f"no cusp pair of sign {s:+d} at position {position}")
        site = position
    else:
        site = next((i for i in range(n) if is_site(i)), None)
        if site is None:
            raise MoveError(f"no cusp pair of sign {s:+d} to remove")
    if site == n - 1:
        out = ev[1:n - 1]
    else:
        out = ev[:site] + ev[site + 2:]
    return _postcondition(d, d.replace(events=out), 1, -s, "destabilize")


HOPF_COMPONENTS = ("z0", "z1")


def hopf_pass(d: TorusFrontDiagram, component: str, direction: int, position: int = 0) -> TorusFrontDiagram:
    """Push a segment of the knot across one component of the Hopf link.

    Passing ``z0`` shifts ``a`` by ``direction``, passing ``z1`` shifts ``b``.
    The change of ``a*b`` and of ``a - b`` is absorbed by a cusp pair plus a
    run of kinked crossings inserted at ``position``.
    """
    _require_valid(d)
    delta = _sign(direction)
    position = _check_position(d, position)
    a, b = d.homology
    if component == "z0":
        new_h = (a + delta, b)
        cusp_sign = -delta
        net = 1 - delta * b
    elif component == "z1":
        new_h = (a, b + delta)
        cusp_sign = delta
        net = 1 - delta * a
    else:
        raise MoveError(f"unknown Hopf component {component!r}; expected one of {HOPF_COMPONENTS}")
    xsign = 1 if net >= 0 else -1
    tokens = []
    for cid in _fresh_ids(d, abs(net), "h"):
        tokens += [CrossingEvent(cid, Role.OVER, xsign), CrossingEvent(cid, Role.UNDER, xsign)]
    tokens += [CuspEvent(cusp_sign), CuspEvent(cusp_sign)]
    ev = list(d.events)
    ev[position:position] = tokens
    return _postcondition(d, d.replace(events=ev, homology=new_h), 0, 0, "hopf_pass")


class Reidemeister(str, Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"


def _rotated(d: TorusFrontDiagram, site: int) -> list:
    ev = list(d.events)
    if not ev:
        raise MoveError("empty event word has no move sites")
    if not 0 <= site < len(ev):
        raise MoveError(f"site {site} outside 0..{len(ev) - 1}")
    return ev[site:] + ev[:site]


def _r1_remove(d, site):
    ev = _rotated(d, site)
    if len(ev) < 4:
        raise MoveError("R1 pattern needs four events")
    x, c1, c2, y = ev[:4]
    ok = (
        isinstance(x, CrossingEvent) and isinstance(y, CrossingEvent)
        and x.crossing_id == y.crossing_id and x.sign == 1
        and isinstance(c1, CuspEvent) and isinstance(c2, CuspEvent) and c1.sign == -c2.sign
    )
    if not ok:
        raise MoveError(f"R1 pattern not found at site {site}")
    return ev[4:]


def _r1_insert(d, site, cusp_sign):
    _check_position(d, site)
    (cid,) = _fresh_ids(d, 1, "r")
    ev = list(d.events)
    ev[site:site] = [
        CrossingEvent(cid, Role.OVER, 1), CuspEvent(cusp_sign), CuspEvent(-cusp_sign), CrossingEvent(cid, Role.UNDER, 1)
    ]
    return ev


def _r2_remove(d, site):
    ev = list(d.events)
    n = len(ev)
    if not 0 <= site < n:
        raise MoveError(f"site {site} outside 0..{n - 1}")
    x, y = ev[site], ev[(site + 1) % n]
    if not (isinstance(x, CrossingEvent) and isinstance(y, CrossingEvent)) or x.crossing_id == y.crossing_id:
        raise MoveError(f"R2 pattern not found at site {site}")
    if x.sign != -y.sign or x.role != y.role:
        raise MoveError("R2 needs two crossings of opposite sign on the same strand side")
    ids = {x.crossing_id, y.crossing_id}
    other = [
        j for j in range(n)
        if j not in (site, (site + 1) % n) and isinstance(ev[j], CrossingEvent) and ev[j].crossing_id in ids
    ]
    if len(other) != 2 or not ((other[1] - other[0]) % n in (1, n - 1)):
        raise MoveError("R2 crossings are not adjacent on the second strand")
    drop = {site, (site + 1) % n, *other}
    return [e for j, e in enumerate(ev) if j not in drop]


def _r2_insert(d, site, sign):
    if isinstance(site, int) or len(site) != 2:
        raise MoveError("R2 insertion needs a pair of positions (over strand, under strand)")
    i, j = site
    _check_position(d, i)
    _check_position(d, j)
    x, y = _fresh_ids(d, 2, "r")
    over = [CrossingEvent(x, Role.OVER, sign), CrossingEvent(y, Role.OVER, -sign)]
    under = [CrossingEvent(x, Role.UNDER, sign), CrossingEvent(y, Role.UNDER, -sign)]
    ev = list(d.events)
    # insert the later position first so the earlier index stays valid
    for pos, toks in sorted([(i, over), (j, under)], key=lambda t: t[0], reverse=True):
        ev[pos:pos] = toks
    return ev


def _r3(d, site):
    ev = list(d.events)
    n = len(ev)
    if not 0 <= site < n:
        raise MoveError(f"site {site} outside 0..{n - 1}")

    def pair_at(i):
        p, q = ev[i], ev[(i + 1) % n]
        if isinstance(p, CrossingEvent) and isinstance(q, CrossingEvent) and p.crossing_id != q.crossing_id:
            return frozenset((p.crossing_id, q.crossing_id))
        return None

    first = pair_at(site)
    if first is None:
        raise MoveError(f"R3 pattern not found at site {site}")
    ids = set(first)
    starts = [site]
    for i in range(n):
        if i == site or (i - site) % n in (1, n - 1):
            continue
        p = pair_at(i)
        if p is not None and p != first and len(p & first) == 1:
            ids |= p
            starts.append(i)
    if len(ids) != 3 or len(starts) != 3:
        raise MoveError("R3 needs three crossings pairwise adjacent on three strands")
    pairs = {pair_at(i) for i in starts}
    if len(pairs) != 3:
        raise MoveError("R3 strands do not cover all three crossing pairs")
    touched = set()
    for i in starts:
        touched |= {i, (i + 1) % n}
    if len(touched) != 6:
        raise MoveError("R3 strand segments overlap")
    kinds = sorted(
        "".join(sorted(ev[i].role.value[0] + ev[(i + 1) % n].role.value[0])) for i in starts
    )
    if kinds != ["oo", "ou", "uu"]:
        raise MoveError("R3 strands must be top, middle and bottom")
    for i in starts:
        j = (i + 1) % n
        ev[i], ev[j] = ev[j], ev[i]
    return ev


def reidemeister(
    d: TorusFrontDiagram,
    move: str,
    site,
    *,
    insert: bool = False,
    sign: int = 1,
) -> TorusFrontDiagram:
    """Apply a Reidemeister-type rewrite at ``site``.

    R1 and R2 remove their pattern starting at ``site`` unless ``insert`` is
    set.  For R1 insertion ``sign`` is the sign of the first cusp; for R2 it
    is the sign of the first crossing and ``site`` is a pair of positions.
    R3 is its own inverse.
    """
    _require_valid(d)
    move = Reidemeister(move)
    if move is Reidemeister.R1:
        ev = _r1_insert(d, site, _sign(sign)) if insert else _r1_remove(d, site)
    elif move is Reidemeister.R2:
        ev = _r2_insert(d, site, _sign(sign)) if insert else _r2_remove(d, site)
    else:
        ev = _r3(d, site)
    return _postcondition(d, d.replace(events=ev), 0, 0, f"reidemeister {move.value}")


def apply_moves(d: TorusFrontDiagram, steps: Sequence[dict]) -> TorusFrontDiagram:
    """Run a list of ``{"op": ..., **kwargs}`` steps in order."""
    ops = {
        "stabilize": stabilize,
        "destabilize": destabilize,
        "hopf_pass": hopf_pass,
        "reidemeister": reidemeister,
    }
    for step in steps:
        step = dict(step)
        op = step.pop("op")
        if op not in ops:
            raise MoveError(f"unknown move {op!r}")
        d = ops[op](d, **step)
    return d


def predict_looseness(structure: ContactStructureId, tb: int, rot: int) -> Looseness:
    if structure.kind != "overtwisted":
        raise ValueError("looseness is only meaningful in an overtwisted structure")
    if not admissible_pair(tb, rot):
        return Looseness.NOT_REALIZABLE
    if structure.admits_nonloose_unknots and tb > 0 and abs(rot) == tb - 1:
        return Looseness.MAY_BE_NONLOOSE
    return Looseness.MUST_BE_LOOSE
