"""Rewrites of virtual Gauss codes that always preserve the virtual link type.

Sites are ``(component, offset)`` pairs; passages are inserted before the
passage currently at ``offset`` (``offset == len(component)`` appends).

Only rewrites whose validity does not depend on planar adjacency are
offered: classical kinks, virtual kinks, virtual pokes (a finger of one
strand pushed across another, crossing it virtually twice) and detours that
reduce to those.  Every rewrite returns a :class:`MoveRecord` whose inverse
restores the input exactly.
"""
import json
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .codes import GaussCode, Kind, Passage

Site = Tuple[int, int]


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    sites: Tuple[Site, ...] = ()
    labels: Tuple[int, ...] = ()
    # passages deleted from the input: (component, index in input, token)
    removed: Tuple[Tuple[int, int, str], ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "sites": [list(s) for s in self.sites],
            "labels": list(self.labels),
            "removed": [list(r) for r in self.removed],
        }

    @classmethod
    def from_json(cls, data) -> "MoveRecord":
        return cls(
            data["kind"],
            tuple(tuple(s) for s in data.get("sites", ())),
            tuple(data.get("labels", ())),
            tuple(tuple(r) for r in data.get("removed", ())),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _token_passage(tok: str) -> Passage:
    kind = Kind(tok[0])
    if kind.classical:
        return Passage(int(tok[1:-1]), kind, -1 if tok[-1] == "-" else 1)
    return Passage(int(tok[1:]), kind)


def _check_site(code: GaussCode, site: Site) -> Site:
    comp, off = site
    if not 0 <= comp < len(code.components):
        raise IndexError(f"no component {comp}")
    if not 0 <= off <= len(code.components[comp]):
        raise IndexError(f"offset {off} outside component {comp}")
    return comp, off


def _insert(code: GaussCode, insertions) -> GaussCode:
    """``insertions``: list of (site, [passages]); sites refer to ``code``."""
    comps = [list(c) for c in code.components]
    # later offsets first so earlier sites stay valid
    order = sorted(range(len(insertions)), key=lambda i: (insertions[i][0][0], -insertions[i][0][1], -i))
    for i in order:
        (comp, off), passages = insertions[i]
        comps[comp][off:off] = list(passages)
    return GaussCode(tuple(tuple(c) for c in comps))


def delete_labels(code: GaussCode, labels) -> Tuple[GaussCode, Tuple[Tuple[int, int, str], ...]]:
    labels = set(labels)
    removed = []
    comps = []
    for ci, comp in enumerate(code.components):
        keep = []
        for j, p in enumerate(comp):
            if p.crossing_id in labels:
                removed.append((ci, j, p.token()))
            else:
                keep.append(p)
        comps.append(tuple(keep))
    return GaussCode(tuple(comps)), tuple(removed)


def apply_inverse(code: GaussCode, record: MoveRecord) -> GaussCode:
    """Undo ``record`` on the code it produced."""
    if record.labels:
        code, _ = delete_labels(code, record.labels)
    if record.removed:
        comps = [list(c) for c in code.components]
        for ci, j, tok in sorted(record.removed):
            comps[ci].insert(j, _token_passage(tok))
        code = GaussCode(tuple(tuple(c) for c in comps))
    return code


# --------------------------------------------------------------------------
# insertions


def insert_kink(code: GaussCode, site: Site, sign: int = 1, order: str = "OU"):
    """Reidemeister I: adjacent ``O k U k`` (or ``U k O k``) with a fresh label."""
    site = _check_site(code, site)
    if order not in ("OU", "UO"):
        raise ValueError("order must be 'OU' or 'UO'")
    k = code.fresh_label()
    pair = [Passage(k, Kind(order[0]), sign), Passage(k, Kind(order[1]), sign)]
    return _insert(code, [(site, pair)]), MoveRecord("kink", (site,), (k,))


def insert_virtual_kink(code: GaussCode, site: Site, order: str = "RL"):
    site = _check_site(code, site)
    if order not in ("RL", "LR"):
        raise ValueError("order must be 'RL' or 'LR'")
    k = code.fresh_label()
    pair = [Passage(k, Kind(order[0])), Passage(k, Kind(order[1]))]
    return _insert(code, [(site, pair)]), MoveRecord("virtual_kink", (site,), (k,))


def insert_virtual_poke(code: GaussCode, siteA: Site, siteB: Site, variant: str = "parallel"):
    """Two fresh virtual crossings ``k, l``: ``R k, L l`` at ``siteA`` and
    ``L k, R l`` (parallel) or ``R l, L k`` (antiparallel) at ``siteB``."""
    siteA = _check_site(code, siteA)
    siteB = _check_site(code, siteB)
    if siteA == siteB:
        raise ValueError("poke sites must differ")
    k = code.fresh_label()
    l = k + 1
    a = [Passage(k, Kind.RIGHT), Passage(l, Kind.LEFT)]
    if variant == "parallel":
        b = [Passage(k, Kind.LEFT), Passage(l, Kind.RIGHT)]
    elif variant == "antiparallel":
        b = [Passage(l, Kind.RIGHT), Passage(k, Kind.LEFT)]
    else:
        raise ValueError("variant must be 'parallel' or 'antiparallel'")
    return _insert(code, [(siteA, a), (siteB, b)]), MoveRecord("virtual_poke", (siteA, siteB), (k, l))


# --------------------------------------------------------------------------
# removals (inverse moves found in the code)


def _cyclic_pairs(comp):
    m = len(comp)
    if m < 2:
        return []
    if m == 2:
        return [(0, 1)]
    return [(j, (j + 1) % m) for j in range(m)]


def find_kinks(code: GaussCode, virtual: bool = False) -> List[int]:
    """Labels whose two passages are cyclically adjacent in one component."""
    out = []
    for comp in code.components:
        for i, j in _cyclic_pairs(comp):
            p, q = comp[i], comp[j]
            if p.crossing_id == q.crossing_id and (not p.kind.classical) == virtual:
                out.append(p.crossing_id)
    return sorted(set(out))


def find_pokes(code: GaussCode) -> List[Tuple[int, int]]:
    """Pairs of virtual crossings forming a bigon: two disjoint adjacent
    places each holding one passage of ``k`` and one of ``l`` with
    opposite R/L sides."""
    places: Dict[Tuple[int, int], List[Tuple[int, int, int]]] = {}
    for ci, comp in enumerate(code.components):
        for i, j in _cyclic_pairs(comp):
            p, q = comp[i], comp[j]
            if p.kind.classical or q.kind.classical or p.crossing_id == q.crossing_id:
                continue
            if p.kind == q.kind:
                continue
            key = tuple(sorted((p.crossing_id, q.crossing_id)))
            places.setdefault(key, []).append((ci, i, j))
    out = []
    for key, locs in places.items():
        for x in range(len(locs)):
            for y in range(x + 1, len(locs)):
                a, b = locs[x], locs[y]
                if a[0] == b[0] and {a[1], a[2]} & {b[1], b[2]}:
                    continue
                out.append(key)
                break
            else:
                continue
            break
    return sorted(set(out))


def remove_crossings(code: GaussCode, labels, kind: str):
    new, removed = delete_labels(code, labels)
    return new, MoveRecord(kind, (), (), removed)


def remove_kink(code: GaussCode, label: int):
    if label not in find_kinks(code):
        raise ValueError(f"crossing {label} is not a removable kink")
    return remove_crossings(code, [label], "remove_kink")


def remove_virtual_kink(code: GaussCode, label: int):
    if label not in find_kinks(code, virtual=True):
        raise ValueError(f"crossing {label} is not a removable virtual kink")
    return remove_crossings(code, [label], "remove_virtual_kink")


def remove_poke(code: GaussCode, k: int, l: int):
    if tuple(sorted((k, l))) not in find_pokes(code):
        raise ValueError(f"crossings {k}, {l} do not form a removable bigon")
    return remove_crossings(code, [k, l], "remove_virtual_poke")


# --------------------------------------------------------------------------
# detours


def reduce_virtual(code: GaussCode) -> GaussCode:
    """Greedily cancel virtual kinks and bigons, then renumber virtual
    crossings by first appearance."""
    while True:
        kinks = find_kinks(code, virtual=True)
        if kinks:
            code, _ = delete_labels(code, kinks[:1])
            continue
        pokes = find_pokes(code)
        if pokes:
            code, _ = delete_labels(code, pokes[0])
            continue
        break
    mapping = {}
    nxt = max(code.classical_labels(), default=0) + 1
    comps = []
    for comp in code.components:
        out = []
        for p in comp:
            if p.kind.classical:
                out.append(p)
            else:
                if p.crossing_id not in mapping:
                    mapping[p.crossing_id] = nxt
                    nxt += 1
                out.append(Passage(mapping[p.crossing_id], p.kind))
        comps.append(tuple(out))
    return GaussCode(tuple(comps))


def detour_reroute(code: GaussCode, segment: Tuple[int, int, int], plan: Sequence):
    """Replace the virtual crossings on a run of passages by a new set.

    ``segment`` is ``(component, start, length)`` (no wrap-around) and may
    be empty.  Each plan entry is ``(target_component, target_offset, side)``
    or ``(..., side, rank)``; ``side`` is the R/L kind of the segment-side
    passage, targets are offsets into the code with every crossing that
    meets the segment deleted, and partners sharing a target are ordered by
    ``rank`` then plan order.

    The new code must reduce to the same normal form as the input under
    virtual kink and bigon cancellation; otherwise the reroute is rejected,
    since its validity would depend on the planar picture.
    """
    ci, start, length = segment
    comp = code.components[ci]
    if start < 0 or length < 0 or start + length > len(comp):
        raise IndexError("segment outside component")
    run = comp[start:start + length]
    for p in run:
        if p.kind.classical:
            raise ValueError(f"segment contains classical passage {p.token()}")
    doomed = sorted({p.crossing_id for p in run})
    stripped, removed = delete_labels(code, doomed)
    seg_off = sum(1 for p in comp[:start] if p.crossing_id not in doomed)
    base = code.fresh_label()
    seg_passages, partner_groups = [], {}
    labels = []
    for idx, entry in enumerate(plan):
        tc, to, side = entry[0], entry[1], entry[2]
        rank = entry[3] if len(entry) > 3 else 0
        side = Kind(side)
        if side.classical:
            raise ValueError("plan sides must be 'R' or 'L'")
        _check_site(stripped, (tc, to))
        if (tc, to) == (ci, seg_off):
            raise ValueError("plan target coincides with the segment position")
        k = base + idx
        labels.append(k)
        other = Kind.LEFT if side is Kind.RIGHT else Kind.RIGHT
        seg_passages.append(Passage(k, side))
        partner_groups.setdefault((tc, to), []).append((rank, idx, Passage(k, other)))
    insertions = [((ci, seg_off), seg_passages)]
    for site, items in partner_groups.items():
        insertions.append((site, [p for _, _, p in sorted(items, key=lambda t: (t[0], t[1]))]))
    new = _insert(stripped, insertions)
    if reduce_virtual(new) != reduce_virtual(code):
        raise ValueError("reroute does not reduce to virtual kink/bigon moves; rejected as unsound")
    return new, MoveRecord("detour", ((ci, seg_off),), tuple(labels), removed)


# --------------------------------------------------------------------------
# fuzzing


def _random_site(rng: random.Random, code: GaussCode) -> Site:
    ci = rng.randrange(len(code.components))
    return ci, rng.randrange(len(code.components[ci]) + 1)


def _random_detour(rng: random.Random, code: GaussCode):
    """Reroute a random virtual run so that it picks up or drops a bigon."""
    runs = []
    for ci, comp in enumerate(code.components):
        for s in range(len(comp) + 1):
            e = s
            while e < len(comp) and not comp[e].kind.classical:
                e += 1
            runs.append((ci, s, e - s))
    ci, s, length = rng.choice(runs)
    length = rng.randint(0, length)
    comp = code.components[ci]
    run = comp[s:s + length]
    doomed = {p.crossing_id for p in run}
    if any(sum(1 for p in run if p.crossing_id == d) == 2 for d in doomed):
        return None  # self-crossing runs are left to the kink moves
    stripped, _ = delete_labels(code, doomed)
    seg_off = sum(1 for p in comp[:s] if p.crossing_id not in doomed)
    # replay the current run as a plan: locate every partner in the stripped code
    plan = []
    for p in run:
        for cj, other in enumerate(code.components):
            for j, q in enumerate(other):
                if q.crossing_id == p.crossing_id and q is not p and q.kind != p.kind:
                    off = sum(1 for r in other[:j] if r.crossing_id not in doomed)
                    rank = j
                    plan.append([cj, off, p.kind.value, rank])
    if any((e[0], e[1]) == (ci, seg_off) for e in plan):
        return None
    # tie ranks inside a gap follow the original order
    if plan and rng.random() < 0.5:
        i = rng.randrange(len(plan) - 1) if len(plan) > 1 else None
        if i is not None and plan[i][:2] == plan[i + 1][:2] and plan[i][2] != plan[i + 1][2] \
                and abs(plan[i][3] - plan[i + 1][3]) == 1:
            del plan[i:i + 2]
            return detour_reroute(code, (ci, s, length), plan)
    site = _random_site(rng, stripped)
    if site == (ci, seg_off):
        return None
    pos = rng.randint(0, len(plan))
    side = rng.choice("RL")
    other = "L" if side == "R" else "R"
    # both partners sit before (or after) every existing partner in that gap
    edge = -1 if rng.random() < 0.5 else 10 ** 9
    ranks = [edge, edge + 1] if rng.random() < 0.5 else [edge + 1, edge]
    plan[pos:pos] = [[site[0], site[1], side, ranks[0]], [site[0], site[1], other, ranks[1]]]
    return detour_reroute(code, (ci, s, length), plan)


MOVE_KINDS = ("kink", "virtual_kink", "virtual_poke", "detour",
              "remove_kink", "remove_virtual_kink", "remove_virtual_poke")


def random_move(rng: random.Random, code: GaussCode):
    """One random applicable rewrite, or None if the drawn kind does not apply."""
    kind = rng.choice(MOVE_KINDS)
    if kind == "kink":
        return insert_kink(code, _random_site(rng, code), rng.choice((1, -1)), rng.choice(("OU", "UO")))
    if kind == "virtual_kink":
        return insert_virtual_kink(code, _random_site(rng, code), rng.choice(("RL", "LR")))
    if kind == "virtual_poke":
        a, b = _random_site(rng, code), _random_site(rng, code)
        if a == b:
            return None
        return insert_virtual_poke(code, a, b, rng.choice(("parallel", "antiparallel")))
    if kind == "detour":
        try:
            return _random_detour(rng, code)
        except ValueError:
            return None
    if kind == "remove_kink":
        labels = find_kinks(code)
        return remove_kink(code, rng.choice(labels)) if labels else None
    if kind == "remove_virtual_kink":
        labels = find_kinks(code, virtual=True)
        return remove_virtual_kink(code, rng.choice(labels)) if labels else None
    pokes = find_pokes(code)
    return remove_poke(code, *rng.choice(pokes)) if pokes else None


def random_equivalent(code: GaussCode, seed: int, n_moves: int, max_passages: Optional[int] = None):
    """Apply ``n_moves`` random rewrites; deterministic in ``seed``.

    With ``max_passages`` set, insertions that would exceed it are skipped in
    favour of another draw.
    """
    if n_moves < 0:
        raise ValueError("n_moves must be >= 0")
    rng = random.Random(seed)
    records = []
    attempts = 0
    while len(records) < n_moves:
        attempts += 1
        if attempts > 100 * (n_moves + 1):
            break
        res = random_move(rng, code)
        if res is None:
            continue
        new, rec = res
        if max_passages is not None and len(new.passages) > max_passages and \
                len(new.passages) > len(code.passages):
            continue
        code = new
        records.append(rec)
    return code, records


def replay(code: GaussCode, records: Sequence[MoveRecord]) -> GaussCode:
    """Undo ``records`` (as returned by :func:`random_equivalent`) in reverse."""
    for rec in reversed(records):
        code = apply_inverse(code, rec)
    return code
