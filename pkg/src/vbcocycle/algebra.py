"""Finite biquandles, their automorphisms, and virtual biquandle structures.

Elements are the integers ``1..n``. A table stores the four operations

* ``up(a, b)``     = a^b
* ``upbar(a, b)``  = a^{b-bar}
* ``low(a, b)``    = a_b
* ``lowbar(a, b)`` = a_{b-bar}

as nested tuples indexed from zero internally.
"""
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

OPERATIONS = ("up", "upbar", "low", "lowbar")


class AxiomError(ValueError):
    pass


# --------------------------------------------------------------------------
# permutations


class Permutation(tuple):
    """A bijection of ``{1..n}`` in one-line notation ``[s(1), ..., s(n)]``."""

    def __new__(cls, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {list(images)}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        img = list(range(1, n + 1))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                img[a - 1] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "Permutation":
        """Parse ``[2,3,1]`` (one-line) or ``(123)`` / ``(1 2)(3 4)`` (cycles)."""
        text = text.strip()
        if text.startswith("["):
            return cls(int(x) for x in text.strip("[]").split(",") if x.strip())
        if text.startswith("("):
            cycles = []
            for chunk in text.replace(")", " ").split("("):
                chunk = chunk.strip()
                if not chunk:
                    continue
                if " " in chunk or "," in chunk:
                    cycles.append([int(x) for x in chunk.replace(",", " ").split()])
                else:
                    cycles.append([int(ch) for ch in chunk])
            if n is None:
                n = max((max(c) for c in cycles), default=1)
            return cls.from_cycles(n, cycles)
        raise ValueError(f"cannot parse permutation {text!r}")

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, a: int) -> int:
        return self[a - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x - 1] = i + 1
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other`` (apply ``other`` first)."""
        return Permutation(self[x - 1] for x in other)

    def power(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(len(self))
        for _ in range(abs(k)):
            out = base.compose(out)
        return out

    def is_identity(self) -> bool:
        return all(x == i + 1 for i, x in enumerate(self))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen, out = set(), []
        for a in range(1, len(self) + 1):
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = self(a)
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self(b)
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "(1)"
        sep = " " if len(self) > 9 else ""
        return "".join("(" + sep.join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({list(self)})"


# --------------------------------------------------------------------------
# tables


def _check_square(name, tab, n):
    if len(tab) != n or any(len(row) != n for row in tab):
        raise ValueError(f"{name} table must be {n}x{n}")
    for row in tab:
        for x in row:
            if not 1 <= x <= n:
                raise ValueError(f"{name} table entry {x} outside 1..{n}")


@dataclass(frozen=True)
class BiquandleTable:
    """Four ``n x n`` operation tables over ``{1..n}``.

    Construction validates shape and entry range only; use
    :func:`check_axioms` (or :meth:`verified`) for the biquandle axioms.
    """

    n: int
    up_table: Tuple[Tuple[int, ...], ...]
    upbar_table: Tuple[Tuple[int, ...], ...]
    low_table: Tuple[Tuple[int, ...], ...]
    lowbar_table: Tuple[Tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for op in OPERATIONS:
            tab = tuple(tuple(int(x) for x in row) for row in getattr(self, op + "_table"))
            _check_square(op, tab, self.n)
            object.__setattr__(self, op + "_table", tab)

    def up(self, a: int, b: int) -> int:
        return self.up_table[a - 1][b - 1]

    def upbar(self, a: int, b: int) -> int:
        return self.upbar_table[a - 1][b - 1]

    def low(self, a: int, b: int) -> int:
        return self.low_table[a - 1][b - 1]

    def lowbar(self, a: int, b: int) -> int:
        return self.lowbar_table[a - 1][b - 1]

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    @property
    def is_quandle(self) -> bool:
        return all(
            self.low(a, b) == a and self.lowbar(a, b) == a
            for a in self.elements
            for b in self.elements
        )

    def verified(self) -> "BiquandleTable":
        report = check_axioms(self)
        if not report.ok:
            raise AxiomError(str(report))
        return self

    # serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "up": [list(r) for r in self.up_table],
            "upbar": [list(r) for r in self.upbar_table],
            "low": [list(r) for r in self.low_table],
            "lowbar": [list(r) for r in self.lowbar_table],
        }

    @classmethod
    def from_json(cls, data) -> "BiquandleTable":
        """Accept the four-table dict or a ``2n x 2n`` block matrix.

        Block layout: upper-left ``i^{j-bar}``, upper-right ``i^j``,
        lower-left ``i_{j-bar}``, lower-right ``i_j``.
        """
        if isinstance(data, dict) and "up" in data:
            n = int(data.get("n", len(data["up"])))
            return cls(n, data["up"], data["upbar"], data["low"], data["lowbar"])
        if isinstance(data, dict) and "matrix" in data:
            data = data["matrix"]
        return cls.from_block_matrix(data)

    @classmethod
    def from_block_matrix(cls, rows) -> "BiquandleTable":
        if len(rows) % 2 or any(len(r) != len(rows) for r in rows):
            raise ValueError("block matrix must be 2n x 2n")
        n = len(rows) // 2
        top, bottom = rows[:n], rows[n:]
        return cls(
            n,
            up_table=[r[n:] for r in top],
            upbar_table=[r[:n] for r in top],
            low_table=[r[n:] for r in bottom],
            lowbar_table=[r[:n] for r in bottom],
        )

    def block_matrix(self) -> List[List[int]]:
        top = [list(self.upbar_table[i]) + list(self.up_table[i]) for i in range(self.n)]
        bottom = [list(self.lowbar_table[i]) + list(self.low_table[i]) for i in range(self.n)]
        return top + bottom


def trivial_biquandle(n: int) -> BiquandleTable:
    rows = [[a] * n for a in range(1, n + 1)]
    return BiquandleTable(n, rows, rows, rows, rows, name=f"T_{n}")


def _unit_inverse(u: int, n: int) -> int:
    if gcd(u % n, n) != 1:
        raise ValueError(f"{u} is not a unit modulo {n}")
    return pow(u, -1, n)


def alexander_biquandle(n: int, s: int, t: int) -> BiquandleTable:
    """Alexander biquandle on ``Z_n``.

    ``a^b = t a + (1 - s t) b``, ``a^{b-bar} = t^-1 a + (1 - s^-1 t^-1) b``,
    ``a_b = s a``, ``a_{b-bar} = s^-1 a``.  Element ``i`` is the residue
    ``i mod n``, so element ``n`` is the residue 0.
    """
    if n < 1:
        raise ValueError("n must be positive")
    si = _unit_inverse(s, n)
    ti = _unit_inverse(t, n)

    def el(r):
        r %= n
        return n if r == 0 else r

    def table(f):
        return [[el(f(a, b)) for b in range(1, n + 1)] for a in range(1, n + 1)]

    tab = BiquandleTable(
        n,
        up_table=table(lambda a, b: t * a + (1 - s * t) * b),
        upbar_table=table(lambda a, b: ti * a + (1 - si * ti) * b),
        low_table=table(lambda a, b: s * a),
        lowbar_table=table(lambda a, b: si * a),
        name=f"Alexander({n},{s},{t})",
    )
    return tab.verified()


# --------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    results: Dict[str, bool]
    witnesses: Dict[str, tuple]

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def __str__(self):
        parts = []
        for ax, good in self.results.items():
            if good:
                parts.append(f"axiom {ax}: pass")
            else:
                parts.append(f"axiom {ax}: FAIL {self.witnesses[ax]}")
        return "; ".join(parts)


def _axiom1(T):
    E = T.elements
    for a, b in product(E, E):
        ab, ba = T.up(a, b), T.low(b, a)
        abb, bab = T.upbar(a, b), T.lowbar(b, a)
        if T.upbar(ab, ba) != a:
            return (a, b, "a = (a^b)^{bar(b_a)}")
        if T.lowbar(ba, ab) != b:
            return (a, b, "b = (b_a)_{bar(a^b)}")
        if T.up(abb, bab) != a:
            return (a, b, "a = (a^{bar b})^{b_{bar a}}")
        if T.low(bab, abb) != b:
            return (a, b, "b = (b_{bar a})_{a^{bar b}}")
    return None


def _axiom2(T):
    E = T.elements
    for a, b in product(E, E):
        xs = [
            x for x in E
            if x == T.up(a, T.lowbar(b, x)) and a == T.upbar(x, b) and b == T.low(T.lowbar(b, x), a)
        ]
        if len(xs) != 1:
            return (a, b, "x", tuple(xs))
        ys = [
            y for y in E
            if y == T.upbar(a, T.low(b, y)) and a == T.up(y, b) and b == T.lowbar(T.low(b, y), a)
        ]
        if len(ys) != 1:
            return (a, b, "y", tuple(ys))
    return None


def _axiom3(T):
    up, upb, low, lowb = T.up, T.upbar, T.low, T.lowbar
    E = T.elements
    for a, b, c in product(E, E, E):
        if up(up(a, b), c) != up(up(a, low(c, b)), up(b, c)):
            return (a, b, c, 1)
        if low(low(c, b), a) != low(low(c, low(a, b)), low(b, a)):
            return (a, b, c, 2)
        if up(low(b, a), low(c, up(a, b))) != low(up(b, c), up(a, low(c, b))):
            return (a, b, c, 3)
        if upb(upb(a, b), c) != upb(upb(a, lowb(c, b)), upb(b, c)):
            return (a, b, c, 4)
        if lowb(lowb(c, b), a) != lowb(lowb(c, lowb(a, b)), lowb(b, a)):
            return (a, b, c, 5)
        if upb(lowb(b, a), lowb(c, upb(a, b))) != lowb(upb(b, c), upb(a, lowb(c, b))):
            return (a, b, c, 6)
    return None


def _kink_solutions(T, a):
    xs = [x for x in T.elements if x == T.low(a, x) and a == T.up(x, a)]
    ys = [y for y in T.elements if y == T.upbar(a, y) and a == T.lowbar(y, a)]
    return xs, ys


def _axiom4(T):
    for a in T.elements:
        xs, ys = _kink_solutions(T, a)
        if len(xs) != 1 or len(ys) != 1:
            return (a, tuple(xs), tuple(ys))
    return None


def check_axioms(table: BiquandleTable) -> AxiomReport:
    """Exhaustively test biquandle axioms 1-4; failures carry a witness."""
    results, witnesses = {}, {}
    for name, fn in (("1", _axiom1), ("2", _axiom2), ("3", _axiom3), ("4", _axiom4)):
        w = fn(table)
        results[name] = w is None
        if w is not None:
            witnesses[name] = w
    return AxiomReport(results, witnesses)


def kink_witnesses(table: BiquandleTable, a: int) -> Tuple[int, int]:
    """The unique ``(x, y)`` with ``x = a_x, a = x^a`` and ``y = a^{y-bar}, a = y_{a-bar}``."""
    xs, ys = _kink_solutions(table, a)
    if len(xs) != 1 or len(ys) != 1:
        raise AxiomError(f"axiom 4 fails at a={a}: x candidates {xs}, y candidates {ys}")
    return xs[0], ys[0]


# --------------------------------------------------------------------------
# automorphisms


def is_automorphism(table: BiquandleTable, S: Permutation) -> bool:
    if len(S) != table.n:
        return False
    for op in OPERATIONS:
        f = getattr(table, op)
        for a, b in product(table.elements, table.elements):
            if S(f(a, b)) != f(S(a), S(b)):
                return False
    return True


def automorphism_group(table: BiquandleTable) -> List[Permutation]:
    """All automorphisms, sorted lexicographically in one-line notation.

    Images are fixed one element at a time; after each assignment every
    operation value whose arguments and result are all assigned is checked.
    """
    n = table.n
    ops = [getattr(table, op) for op in OPERATIONS]
    img = [0] * (n + 1)
    used = [False] * (n + 1)
    out = []

    def consistent(k):
        # pairs involving the newly assigned element k, with all of k's partners <= k
        for op in ops:
            for a in range(1, k + 1):
                for x, y in ((a, k), (k, a)):
                    r = op(x, y)
                    if r <= k and img[r] != op(img[x], img[y]):
                        return False
        return True

    def extend(k):
        if k > n:
            perm = Permutation(img[1:])
            if is_automorphism(table, perm):
                out.append(perm)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            img[k], used[v] = v, True
            if consistent(k):
                extend(k + 1)
            used[v] = False
        img[k] = 0

    extend(1)
    return sorted(out)


def conjugacy_classes(group: Sequence[Permutation]) -> List[List[Permutation]]:
    remaining = sorted(set(group))
    classes = []
    while remaining:
        g = remaining[0]
        cls = sorted({h.compose(g).compose(h.inverse()) for h in group})
        classes.append(cls)
        cset = set(cls)
        remaining = [x for x in remaining if x not in cset]
    return classes


def conjugacy_class_reps(table: BiquandleTable) -> List[Permutation]:
    """Lexicographically least member of each conjugacy class of Aut(table)."""
    return [cls[0] for cls in conjugacy_classes(automorphism_group(table))]


def find_conjugator(group, S, S2) -> Optional[Permutation]:
    """Some ``h`` in ``group`` with ``h S h^-1 = S2``, or None."""
    for h in group:
        if h.compose(S).compose(h.inverse()) == S2:
            return h
    return None


@dataclass(frozen=True)
class VirtualBiquandle:
    table: BiquandleTable
    S: Permutation

    def __post_init__(self):
        object.__setattr__(self, "S", Permutation(self.S))
        if not is_automorphism(self.table, self.S):
            raise AxiomError(f"{list(self.S)} is not an automorphism of the table")

    @property
    def n(self) -> int:
        return self.table.n

    @property
    def S_inv(self) -> Permutation:
        return self.S.inverse()


def virtual_isomorphic(vb1: VirtualBiquandle, vb2: VirtualBiquandle) -> bool:
    """(B, S) and (B, S') are isomorphic iff S, S' are conjugate in Aut(B)."""
    if vb1.table != vb2.table:
        raise ValueError("virtual_isomorphic compares structures on the same table only")
    group = automorphism_group(vb1.table)
    return find_conjugator(group, vb1.S, vb2.S) is not None
