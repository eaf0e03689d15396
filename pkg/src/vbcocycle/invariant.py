"""Colorings, Boltzmann weights and the virtual Yang-Baxter cocycle invariant."""
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import BiquandleTable, Permutation, VirtualBiquandle, conjugacy_class_reps
from .codes import Diagram, GaussCode, build_diagram
from .cohomology import (
    Compatibility,
    as_cochain,
    compatibility_check,
    compatible_pairs,
    evaluate,
)

Coloring = Tuple[int, ...]


class IncompatibleCocycles(ValueError):
    pass


def _diagram(code_or_diagram) -> Diagram:
    if isinstance(code_or_diagram, Diagram):
        return code_or_diagram
    return build_diagram(code_or_diagram)


def _crossing_rules(diagram: Diagram, vb: VirtualBiquandle):
    """Each rule is ``(inputs, outputs, fn)`` with ``fn(*input colors) -> output colors``.

    Classical crossings get a forward rule and, by axiom 1, a backward one;
    virtual crossings act on each strand separately.
    """
    T, S = vb.table, vb.S
    Si = S.inverse()
    rules = []
    for c in diagram.classical:
        ins, outs = (c.under_in, c.over_in), (c.under_out, c.over_out)
        if c.sign > 0:
            fwd = lambda a, b: (T.up(a, b), T.low(b, a))
            back = lambda a, b: (T.upbar(a, b), T.lowbar(b, a))
        else:
            fwd = lambda a, b: (T.upbar(a, b), T.lowbar(b, a))
            back = lambda a, b: (T.up(a, b), T.low(b, a))
        rules.append((ins, outs, fwd))
        rules.append((outs, ins, back))
    for c in diagram.virtual:
        rules.append(((c.right_in,), (c.left_out,), lambda x: (S(x),)))
        rules.append(((c.left_out,), (c.right_in,), lambda x: (Si(x),)))
        rules.append(((c.left_in,), (c.right_out,), lambda y: (Si(y),)))
        rules.append(((c.right_out,), (c.left_in,), lambda y: (S(y),)))
    return rules


def enumerate_colorings(code, vb: VirtualBiquandle) -> List[Coloring]:
    """All semiarc colorings satisfying every crossing rule, lexicographically sorted.

    Backtracks over semiarcs in index order; whenever both inputs of a
    crossing are colored its outputs are forced (or checked).
    """
    diagram = _diagram(code)
    m = diagram.n_semiarcs
    rules = _crossing_rules(diagram, vb)
    by_input: Dict[int, List[int]] = {}
    for k, (ins, _, _) in enumerate(rules):
        for s in set(ins):
            by_input.setdefault(s, []).append(k)
    colors: List[Optional[int]] = [None] * m
    found = []

    def propagate(start: int, trail: List[int]) -> bool:
        queue = [start]
        while queue:
            s = queue.pop()
            for k in by_input.get(s, ()):
                ins, outs, fn = rules[k]
                vals = [colors[i] for i in ins]
                if None in vals:
                    continue
                for o, val in zip(outs, fn(*vals)):
                    if colors[o] is None:
                        colors[o] = val
                        trail.append(o)
                        queue.append(o)
                    elif colors[o] != val:
                        return False
        return True

    def search(pos: int):
        while pos < m and colors[pos] is not None:
            pos += 1
        if pos == m:
            found.append(tuple(colors))
            return
        for val in vb.table.elements:
            colors[pos] = val
            trail = [pos]
            if propagate(pos, trail):
                search(pos + 1)
            for s in trail:
                colors[s] = None

    search(0)
    return sorted(found)


def counting_invariant(code, vb: VirtualBiquandle) -> int:
    return len(enumerate_colorings(code, vb))


@dataclass(frozen=True, order=True)
class WeightPair:
    bw_c: Fraction
    bw_v: Fraction

    @property
    def total(self) -> Fraction:
        return self.bw_c + self.bw_v


def boltzmann_weight(coloring: Sequence[int], code, phi, v, S: Permutation) -> WeightPair:
    """Classical part: ``+phi(u_in, o_in)`` at positive crossings and
    ``-phi(u_out, o_out)`` at negative ones.  Virtual part:
    ``v(x, y) - v(S^-1 y, S x)`` with ``x``/``y`` the right/left inputs."""
    diagram = _diagram(code)
    S = Permutation(S)
    n = len(S)
    Si = S.inverse()
    bw_c = Fraction(0)
    for c in diagram.classical:
        if c.sign > 0:
            bw_c += evaluate(phi, n, coloring[c.under_in], coloring[c.over_in])
        else:
            bw_c -= evaluate(phi, n, coloring[c.under_out], coloring[c.over_out])
    bw_v = Fraction(0)
    for c in diagram.virtual:
        x, y = coloring[c.right_in], coloring[c.left_in]
        bw_v += evaluate(v, n, x, y) - evaluate(v, n, Si(y), S(x))
    return WeightPair(bw_c, bw_v)


@dataclass(frozen=True)
class InvariantValue:
    """Multiset of weight pairs, one per coloring.

    ``mode`` is ``strong`` or ``weak``; ``unchecked`` marks values computed
    without the compatibility gate (these are not guaranteed invariants).
    """

    weights: Tuple[WeightPair, ...]
    mode: str = "strong"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(sorted(self.weights)))

    @property
    def count(self) -> int:
        return len(self.weights)

    def multiset(self) -> Counter:
        return Counter((w.bw_c, w.bw_v) for w in self.weights)

    def sums(self) -> Counter:
        return Counter(w.total for w in self.weights)

    def invariant_part(self):
        """The part asserted invariant: pairs when strong, sums otherwise."""
        return self.multiset() if self.mode == "strong" else self.sums()

    def evaluate(self, t=1, s=None) -> Fraction:
        """Evaluate the polynomial form; ``s`` defaults to ``t``."""
        if s is None:
            s = t
        t, s = Fraction(t), Fraction(s)
        total = Fraction(0)
        for w in self.weights:
            _require_integral(w.bw_c, w.bw_v)
            total += t ** int(w.bw_c) * s ** int(w.bw_v)
        return total

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "mode": self.mode,
            "weights": [[_num(w.bw_c), _num(w.bw_v)] for w in self.weights],
            "poly": render_invariant(self, "auto"),
        }


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def phi_vyb(code, vb: VirtualBiquandle, phi, v, check: bool = True) -> InvariantValue:
    """Virtual Yang-Baxter 2-cocycle invariant of ``code``.

    Incompatible pairs are rejected unless ``check=False``, in which case
    the state sum is returned with mode ``unchecked``.
    """
    diagram = _diagram(code)
    n = vb.n
    phi = as_cochain(phi, n)
    v = as_cochain(v, n)
    if check:
        compat = compatibility_check(vb.table, vb.S, phi, v)
        if compat is Compatibility.INCOMPATIBLE:
            raise IncompatibleCocycles("(phi, v) is not a compatible pair for this virtual biquandle")
        mode = "strong" if compat is Compatibility.STRONGLY_COMPATIBLE else "weak"
    else:
        mode = "unchecked"
    weights = [boltzmann_weight(col, diagram, phi, v, vb.S) for col in enumerate_colorings(diagram, vb)]
    return InvariantValue(tuple(weights), mode)


# --------------------------------------------------------------------------
# rendering


def _require_integral(*xs):
    for x in xs:
        if Fraction(x).denominator != 1:
            raise ValueError(f"non-integral exponent {x}; scale the cocycles first")


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    if 0 < k < 10:
        return f"{var}^{k}"
    return f"{var}^{{{k}}}"


def _laurent(terms: Dict[Tuple[int, ...], int], variables: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts = []
    for exps in sorted(terms):
        coeff = terms[exps]
        mono = "".join(_power(var, k) for var, k in zip(variables, exps))
        if not mono:
            body = str(abs(coeff))
        elif abs(coeff) == 1:
            body = mono
        else:
            body = f"{abs(coeff)}{mono}"
        sign = "-" if coeff < 0 else "+"
        parts.append(body if (not parts and sign == "+") else (sign + body if parts else "-" + body))
    return "".join(parts)


def render_invariant(inv: InvariantValue, mode: str = "auto") -> str:
    """Render as ``multiset``, ``poly1`` or ``poly2``.

    ``auto`` picks ``poly2`` for strong values and ``poly1`` otherwise.
    ``poly1`` uses ``t`` for strong (and unchecked) values and ``T`` for weak
    ones; ``poly2`` writes ``s`` (virtual) before ``t`` (classical) and sorts
    terms by the virtual exponent, then the classical one.
    """
    if mode == "auto":
        mode = "poly2" if inv.mode == "strong" else "poly1"
    if mode == "multiset":
        if inv.mode == "strong":
            items = sorted(inv.multiset().items())
            body = ", ".join(f"({_num(c)}, {_num(v)})^{k}" for (c, v), k in items)
        else:
            items = sorted(inv.sums().items())
            body = ", ".join(f"{_num(w)}^{k}" for w, k in items)
        return "{" + body + "}"
    if mode == "poly1":
        var = "T" if inv.mode == "weak" else "t"
        terms: Dict[Tuple[int, ...], int] = {}
        for w, k in inv.sums().items():
            _require_integral(w)
            terms[(int(w),)] = terms.get((int(w),), 0) + k
        return _laurent(terms, [var])
    if mode == "poly2":
        if inv.mode != "strong":
            raise ValueError("two-variable rendering needs a strongly compatible pair")
        terms = {}
        for (c, v), k in inv.multiset().items():
            _require_integral(c, v)
            terms[(int(v), int(c))] = k
        return _laurent(terms, ["s", "t"])
    raise ValueError(f"unknown render mode {mode!r}")


# --------------------------------------------------------------------------
# non-classicality


@dataclass
class NonclassicalReport:
    counts: Dict[Tuple[int, ...], int]
    counting_test: bool
    s_power_test: bool
    s_power_witness: Optional[dict] = None

    @property
    def nonclassical(self) -> bool:
        return self.counting_test or self.s_power_test

    def to_json(self) -> dict:
        return {
            "nonclassical": self.nonclassical,
            "counting_test": self.counting_test,
            "s_power_test": self.s_power_test,
            "counts": {str(list(k)): c for k, c in sorted(self.counts.items())},
            "s_power_witness": self.s_power_witness,
        }


def detect_nonclassical(code, table: BiquandleTable) -> NonclassicalReport:
    """Counting test over conjugacy representatives, then the s-power test
    over strongly compatible basis pairs."""
    diagram = _diagram(code)
    reps = conjugacy_class_reps(table)
    counts = {}
    colorings = {}
    for S in reps:
        vb = VirtualBiquandle(table, S)
        colorings[S] = enumerate_colorings(diagram, vb)
        counts[tuple(S)] = len(colorings[S])
    counting = len(set(counts.values())) > 1
    witness = None
    if diagram.virtual:
        for S in reps:
            if not colorings[S]:
                continue
            for pair in compatible_pairs(table, S):
                if not pair.strong:
                    continue
                for col in colorings[S]:
                    w = boltzmann_weight(col, diagram, pair.phi, pair.v, S)
                    if w.bw_v != 0:
                        witness = {"S": list(S), "v": [_num(x) for x in pair.v], "coloring": list(col)}
                        break
                if witness:
                    break
            if witness:
                break
    return NonclassicalReport(counts, counting, witness is not None, witness)
