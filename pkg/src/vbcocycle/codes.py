"""Virtual signed Gauss codes.

Two text encodings are supported:

* tokens, e.g. ``U1+ O2+ R3 O4+ L5 / O6- U6-``.  ``O``/``U`` are over and
  under passages of a classical crossing and must carry a sign; ``R``/``L``
  mark entering a virtual crossing from the right or left input.  ``/``
  separates components and ``0`` stands for a crossing-free component.
* Gaussian integers, e.g. ``[-1-I,-2-2*I,3,1+I,2+2*I,-3,0]``.  The real part
  is negative for under/right passages and positive for over/left ones, its
  absolute value is the label; the imaginary part is ``sign(real) * k`` with
  ``k = 0`` for positive, ``1`` for negative and ``2`` for virtual crossings.
  A ``0`` entry ends a component.
"""
import re
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Sequence, Tuple


class Kind(str, Enum):
    OVER = "O"
    UNDER = "U"
    RIGHT = "R"
    LEFT = "L"

    @property
    def classical(self) -> bool:
        return self in (Kind.OVER, Kind.UNDER)


class CodeSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CodeValidationError(ValueError):
    def __init__(self, label, rule):
        super().__init__(f"crossing {label}: {rule}")
        self.label = label
        self.rule = rule


@dataclass(frozen=True)
class Passage:
    crossing_id: int
    kind: Kind
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.crossing_id < 1:
            raise ValueError("crossing labels are positive integers")
        if not self.kind.classical:
            object.__setattr__(self, "sign", 1)
        elif self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def token(self) -> str:
        if self.kind.classical:
            return f"{self.kind.value}{self.crossing_id}{'+' if self.sign > 0 else '-'}"
        return f"{self.kind.value}{self.crossing_id}"

    def gaussint(self) -> str:
        neg = self.kind in (Kind.UNDER, Kind.RIGHT)
        re_part = -self.crossing_id if neg else self.crossing_id
        k = 2 if not self.kind.classical else (0 if self.sign > 0 else 1)
        im = -k if neg else k
        if im == 0:
            return str(re_part)
        if im == 1:
            return f"{re_part}+I"
        if im == -1:
            return f"{re_part}-I"
        return f"{re_part}{'+' if im > 0 else '-'}{abs(im)}*I"


def P(token: str) -> Passage:
    """Shorthand: ``P("U1+")``."""
    m = _TOKEN_RE.fullmatch(token.strip())
    if not m or not m.group(1):
        raise CodeSyntaxError(f"not a passage token {token!r}", 0)
    kind, label, sign = Kind(m.group(1).upper()), int(m.group(2)), m.group(3)
    if kind.classical and sign is None:
        raise CodeSyntaxError(f"classical passage {token!r} needs a sign", 0)
    return Passage(label, kind, -1 if sign == "-" else 1)


@dataclass(frozen=True)
class GaussCode:
    """Ordered components, each a cyclic sequence of passages.

    Equality is literal: component order and starting passage matter.
    """

    components: Tuple[Tuple[Passage, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        if not comps:
            comps = ((),)
        object.__setattr__(self, "components", comps)
        validate(self)

    @property
    def passages(self) -> List[Passage]:
        return [p for comp in self.components for p in comp]

    def classical_labels(self) -> List[int]:
        return sorted({p.crossing_id for p in self.passages if p.kind.classical})

    def virtual_labels(self) -> List[int]:
        return sorted({p.crossing_id for p in self.passages if not p.kind.classical})

    def labels(self) -> List[int]:
        return sorted({p.crossing_id for p in self.passages})

    def fresh_label(self) -> int:
        return max(self.labels(), default=0) + 1

    def sign(self, label: int) -> int:
        for p in self.passages:
            if p.crossing_id == label:
                return p.sign
        raise KeyError(label)

    def __str__(self):
        return serialize_code(self, "tokens")

    def to_json(self) -> dict:
        return {
            "components": [
                [{"kind": p.kind.value, "id": p.crossing_id, "sign": p.sign} for p in comp]
                for comp in self.components
            ]
        }

    @classmethod
    def from_json(cls, data) -> "GaussCode":
        return cls(tuple(
            tuple(Passage(int(d["id"]), Kind(d["kind"]), int(d.get("sign", 1))) for d in comp)
            for comp in data["components"]
        ))


def validate(code: GaussCode) -> None:
    seen: Dict[int, List[Passage]] = defaultdict(list)
    for p in code.passages:
        seen[p.crossing_id].append(p)
    for label, ps in sorted(seen.items()):
        kinds = sorted(p.kind.value for p in ps)
        classical = [p.kind.classical for p in ps]
        if any(classical) and not all(classical):
            raise CodeValidationError(label, "label used for both a classical and a virtual crossing")
        if all(classical):
            if len(ps) != 2 or kinds != ["O", "U"]:
                if len(ps) == 1:
                    raise CodeValidationError(label, "missing partner passage")
                raise CodeValidationError(label, f"needs exactly one O and one U passage, found {kinds}")
            if ps[0].sign != ps[1].sign:
                raise CodeValidationError(label, "mismatched signs on O and U passages")
        else:
            if len(ps) == 1:
                raise CodeValidationError(label, "missing partner passage")
            if kinds != ["L", "R"]:
                raise CodeValidationError(label, f"virtual crossing needs one R and one L passage, found {kinds}")


# --------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:([OURL])\s*(\d+)\s*\^?\s*([+-])?|(/)|(0)(?![\d]))", re.I)


def _parse_tokens(text: str) -> GaussCode:
    comps: List[List[Passage]] = [[]]
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise CodeSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                  pos + len(text[pos:]) - len(text[pos:].lstrip()))
        kind, label, sign, slash, zero = m.groups()
        if slash:
            comps.append([])
        elif zero:
            pass
        else:
            kind = Kind(kind.upper())
            if kind.classical and sign is None:
                raise CodeSyntaxError(f"classical passage {kind.value}{label} needs a sign", m.start(1))
            if not kind.classical and sign is not None:
                raise CodeSyntaxError(f"virtual passage {kind.value}{label} takes no sign", m.start(3))
            comps[-1].append(Passage(int(label), kind, -1 if sign == "-" else 1))
        pos = m.end()
    return GaussCode(tuple(tuple(c) for c in comps))


def _parse_gaussint_entry(entry: str, offset: int) -> Tuple[int, int]:
    s = entry.replace(" ", "")
    m = re.fullmatch(r"([+-]?\d+)?(?:([+-]?)(\d*)\*?I)?", s)
    if not m or s == "":
        raise CodeSyntaxError(f"malformed Gaussian integer {entry.strip()!r}", offset)
    re_s, im_sign, im_mag = m.group(1), m.group(2), m.group(3)
    re_part = int(re_s) if re_s else 0
    im = 0
    if "I" in s:
        if re_s and not im_sign:
            raise CodeSyntaxError(f"malformed Gaussian integer {entry.strip()!r}", offset)
        im = int(im_mag) if im_mag else 1
        if im_sign == "-":
            im = -im
    return re_part, im


def _parse_gaussint(text: str) -> GaussCode:
    body = text.strip()
    start = text.find(body) if body else 0
    if body.startswith("["):
        if not body.endswith("]"):
            raise CodeSyntaxError("missing closing bracket", start + len(body))
        body = body[1:-1]
        start += 1
    comps: List[List[Passage]] = [[]]
    closed = False
    offset = start
    for entry in body.split(","):
        if entry.strip() == "":
            raise CodeSyntaxError("empty entry", offset)
        re_part, im = _parse_gaussint_entry(entry, offset)
        if re_part == 0:
            if im:
                raise CodeSyntaxError("zero real part with nonzero imaginary part", offset)
            comps.append([])
            closed = True
        else:
            sgn = 1 if re_part > 0 else -1
            k = im * sgn
            if k not in (0, 1, 2):
                raise CodeSyntaxError(f"imaginary part {im} inconsistent with real part {re_part}", offset)
            label = abs(re_part)
            if k == 2:
                kind = Kind.LEFT if sgn > 0 else Kind.RIGHT
                sign = 1
            else:
                kind = Kind.OVER if sgn > 0 else Kind.UNDER
                sign = 1 if k == 0 else -1
            comps[-1].append(Passage(label, kind, sign))
            closed = False
        offset += len(entry) + 1
    if closed:
        comps.pop()
    return GaussCode(tuple(tuple(c) for c in comps))


def parse_code(text: str) -> GaussCode:
    """Parse either text encoding into a validated :class:`GaussCode`."""
    stripped = text.strip()
    if stripped == "":
        return GaussCode(((),))
    if stripped.startswith("[") or "I" in stripped or re.fullmatch(r"[\d\s,+-]+", stripped):
        return _parse_gaussint(text)
    return _parse_tokens(text)


def serialize_code(code: GaussCode, format: str = "tokens") -> str:
    if format == "tokens":
        return " / ".join(" ".join(p.token() for p in comp) if comp else "0" for comp in code.components)
    if format == "gaussint":
        if code.components == ((),):
            return "0"
        entries = []
        for comp in code.components:
            entries.extend(p.gaussint() for p in comp)
            entries.append("0")
        return "[" + ",".join(entries) + "]"
    if format == "json":
        import json
        return json.dumps(code.to_json(), sort_keys=True)
    raise ValueError(f"unknown format {format!r}")


# --------------------------------------------------------------------------
# diagram


@dataclass(frozen=True)
class ClassicalCrossing:
    label: int
    sign: int
    under_in: int
    over_in: int
    under_out: int
    over_out: int


@dataclass(frozen=True)
class VirtualCrossing:
    """``right_in`` continues to ``left_out`` (through the R passage);
    ``left_in`` continues to ``right_out`` (through the L passage)."""

    label: int
    right_in: int
    left_in: int
    right_out: int
    left_out: int


@dataclass(frozen=True)
class Diagram:
    """Semiarc/crossing incidence model of a code.

    Semiarc ``offset + j`` of a component leaves its ``j``-th passage and
    enters passage ``j + 1`` (cyclically).  A crossing-free component owns one
    closed semiarc.
    """

    code: GaussCode
    n_semiarcs: int
    classical: Tuple[ClassicalCrossing, ...]
    virtual: Tuple[VirtualCrossing, ...]
    closed: Tuple[int, ...]
    component_offsets: Tuple[int, ...]

    # per passage (component, index) -> (entering semiarc, leaving semiarc)
    def passage_semiarcs(self, comp: int, j: int) -> Tuple[int, int]:
        m = len(self.code.components[comp])
        off = self.component_offsets[comp]
        return off + (j - 1) % m, off + j


def build_diagram(code: GaussCode) -> Diagram:
    offsets = []
    slots: Dict[Tuple[int, Kind], Tuple[int, int]] = {}
    closed = []
    idx = 0
    for comp in code.components:
        offsets.append(idx)
        m = len(comp)
        if m == 0:
            closed.append(idx)
            idx += 1
            continue
        for j, p in enumerate(comp):
            slots[(p.crossing_id, p.kind)] = (idx + (j - 1) % m, idx + j)
        idx += m
    classical, virtual = [], []
    for label in code.classical_labels():
        u_in, u_out = slots[(label, Kind.UNDER)]
        o_in, o_out = slots[(label, Kind.OVER)]
        classical.append(ClassicalCrossing(label, code.sign(label), u_in, o_in, u_out, o_out))
    for label in code.virtual_labels():
        r_in, r_through = slots[(label, Kind.RIGHT)]
        l_in, l_through = slots[(label, Kind.LEFT)]
        virtual.append(VirtualCrossing(label, r_in, l_in, right_out=l_through, left_out=r_through))
    return Diagram(code, idx, tuple(classical), tuple(virtual), tuple(closed), tuple(offsets))


# --------------------------------------------------------------------------
# catalog

_CATALOG = {
    "unknot": ("0", "crossing-free loop"),
    "trefoil": ("O1+ U2+ O3+ U1+ O2+ U3+", "right-handed trefoil"),
    "figure8": ("U1+ O2+ U3- O4- U2+ O1+ U4- O3-", "figure-eight knot"),
    "virtual_trefoil": ("O1+ R3 O2+ U1+ L3 U2+", "two classical crossings, one virtual"),
    "virtual_hopf": ("U1+ R2 / O1+ L2", "virtual Hopf link"),
    "virtual_link22": ("U1- R2 U3- R4 / O1- L2 O3- L4",
                      "two-component link, two classical and two virtual crossings"),
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    code: GaussCode
    note: str


def catalog_entries() -> Dict[str, CatalogEntry]:
    return {name: CatalogEntry(name, parse_code(text), note) for name, (text, note) in _CATALOG.items()}


def catalog_lookup(name: str) -> GaussCode:
    try:
        text, _ = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(sorted(_CATALOG))}") from None
    return parse_code(text)
