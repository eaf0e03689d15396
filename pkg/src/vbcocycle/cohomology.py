"""Yang-Baxter 2-cocycles, S-homology chains, and cocycle compatibility.

A 2-cochain on an ``n``-element set is a rational vector of length ``n*n``;
entry ``n*(i-1) + (j-1)`` (0-based) is the coefficient of ``chi_(i,j)``.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import (
    AxiomError,
    BiquandleTable,
    Permutation,
    is_automorphism,
    kink_witnesses,
)
from .exactla import in_span, rref_kernel_basis, span_basis


def pair_index(n: int, i: int, j: int) -> int:
    return n * (i - 1) + (j - 1)


def chi(n: int, *pairs) -> Tuple[Fraction, ...]:
    """Sum of characteristic cochains; ``chi(3, (1, 2), (1, 3))``.

    A pair may carry a coefficient as a third entry.
    """
    v = [Fraction(0)] * (n * n)
    for p in pairs:
        i, j = p[0], p[1]
        c = p[2] if len(p) > 2 else 1
        v[pair_index(n, i, j)] += Fraction(c)
    return tuple(v)


def zero_cochain(n: int) -> Tuple[Fraction, ...]:
    return (Fraction(0),) * (n * n)


def as_cochain(vec: Sequence, n: int) -> Tuple[Fraction, ...]:
    vec = tuple(Fraction(x) for x in vec)
    if len(vec) != n * n:
        raise ValueError(f"cochain must have length {n * n}, got {len(vec)}")
    return vec


def evaluate(cochain: Sequence, n: int, a: int, b: int) -> Fraction:
    return cochain[pair_index(n, a, b)]


# --------------------------------------------------------------------------
# S-chains


class SChain(dict):
    """Formal rational combination of tuples; zero terms are dropped."""

    def __init__(self, terms: Optional[Iterable] = None):
        super().__init__()
        if terms is None:
            return
        items = terms.items() if isinstance(terms, dict) else terms
        for tup, c in items:
            self.add(tuple(tup), c)

    @classmethod
    def of(cls, tup) -> "SChain":
        return cls([(tuple(tup), 1)])

    def add(self, tup, coeff) -> None:
        c = self.get(tup, Fraction(0)) + Fraction(coeff)
        if c == 0:
            self.pop(tup, None)
        else:
            self[tup] = c

    def __add__(self, other):
        out = SChain(self)
        for t, c in other.items():
            out.add(t, c)
        return out

    def __sub__(self, other):
        out = SChain(self)
        for t, c in other.items():
            out.add(t, -c)
        return out

    def __neg__(self):
        return SChain((t, -c) for t, c in self.items())

    def scale(self, k) -> "SChain":
        return SChain((t, Fraction(k) * c) for t, c in self.items())

    def terms(self) -> List[Tuple[tuple, Fraction]]:
        return sorted(self.items())

    def __repr__(self):
        if not self:
            return "0"
        return " + ".join(f"{c}*{t}" for t, c in self.terms())


def _apply(S: Permutation, k: int, x: int) -> int:
    if k == 0:
        return x
    return S.power(k)(x)


def omega_map(n: int, tup: Sequence[int], S: Permutation) -> tuple:
    """i-th entry (1-based) is ``S^(2i-n-1)(x_(n-i+1))``."""
    if len(tup) != n:
        raise ValueError(f"expected a {n}-tuple, got {len(tup)} entries")
    return tuple(_apply(S, 2 * i - n - 1, tup[n - i]) for i in range(1, n + 1))


def face1(tup, i, S):
    """(S x_1, ..., S x_(i-1), x_(i+1), ..., x_n)"""
    return tuple(S(x) for x in tup[: i - 1]) + tuple(tup[i:])


def face2(tup, i, S):
    """(x_1, ..., x_(i-1), S^-1 x_(i+1), ..., S^-1 x_n)"""
    Si = S.inverse()
    return tuple(tup[: i - 1]) + tuple(Si(x) for x in tup[i:])


def s_boundary(n: int, chain, S: Permutation) -> SChain:
    """``sum_i (-1)^i (face1_i - face2_i)`` extended linearly."""
    if n < 1:
        raise ValueError("boundary is defined in degree >= 1")
    if not isinstance(chain, dict):
        chain = SChain.of(chain)
    out = SChain()
    for tup, c in chain.items():
        if len(tup) != n:
            raise ValueError(f"chain term {tup} is not of degree {n}")
        for i in range(1, n + 1):
            sgn = c if i % 2 == 0 else -c
            out.add(face1(tup, i, S), sgn)
            out.add(face2(tup, i, S), -sgn)
    return out


def subcomplex_sign(n: int) -> int:
    return 1 if n % 4 in (0, 1) else -1


def subcomplex_generator(n: int, tup: Sequence[int], S: Permutation) -> SChain:
    """``x + (-1)^j omega_n(x)``, j = 0 for n = 0,1 mod 4 and 1 otherwise."""
    tup = tuple(tup)
    return SChain.of(tup) + SChain.of(omega_map(n, tup, S)).scale(subcomplex_sign(n))


def cochain_row(chain: SChain, n_elements: int) -> List[Fraction]:
    """Row vector ``r`` with ``r . v = v(chain)`` for degree-2 chains."""
    row = [Fraction(0)] * (n_elements * n_elements)
    for (a, b), c in chain.items():
        row[pair_index(n_elements, a, b)] += c
    return row


# --------------------------------------------------------------------------
# Yang-Baxter cocycles


def yb_cocycle_rows(table: BiquandleTable) -> List[List[Fraction]]:
    """One row per (a, b, c): the 2-cocycle identity as ``row . phi = 0``."""
    n = table.n
    up, low = table.up, table.low
    rows = []
    for a, b, c in product(table.elements, repeat=3):
        ch = SChain()
        ch.add((a, b), 1)
        ch.add((up(a, b), c), 1)
        ch.add((low(b, a), low(c, up(a, b))), 1)
        ch.add((b, c), -1)
        ch.add((a, low(c, b)), -1)
        ch.add((up(a, low(c, b)), up(b, c)), -1)
        rows.append(cochain_row(ch, n))
    return rows


def reduced_pairs(table: BiquandleTable) -> List[Tuple[int, int]]:
    """Pairs a kink crossing sees: ``(x(a), a)`` for positive kinks and
    ``(y(a), a)`` (outbound under, outbound over) for negative ones."""
    pairs = []
    for a in table.elements:
        x, y = kink_witnesses(table, a)
        for p in ((x, a), (y, a)):
            if p not in pairs:
                pairs.append(p)
    return pairs


def reduced_rows(table: BiquandleTable) -> List[List[Fraction]]:
    n = table.n
    rows = []
    for a, b in reduced_pairs(table):
        row = [Fraction(0)] * (n * n)
        row[pair_index(n, a, b)] = Fraction(1)
        rows.append(row)
    return rows


def yb_cocycle_basis(table: BiquandleTable, reduced: bool = True) -> List[Tuple[Fraction, ...]]:
    rows = yb_cocycle_rows(table)
    if reduced:
        rows += reduced_rows(table)
    return rref_kernel_basis(rows, table.n ** 2)


def is_yb_cocycle(table: BiquandleTable, phi: Sequence, reduced: bool = True) -> bool:
    rows = yb_cocycle_rows(table) + (reduced_rows(table) if reduced else [])
    return all(sum(r * x for r, x in zip(row, phi) if r) == 0 for row in rows)


def yb_coboundary(g: Callable[[int], Fraction], table: BiquandleTable) -> Tuple[Fraction, ...]:
    """``g(a) + g(b) - g(a^b) - g(b_a)``."""
    n = table.n
    g = _as_function(g)
    v = [Fraction(0)] * (n * n)
    for a, b in product(table.elements, repeat=2):
        v[pair_index(n, a, b)] = g(a) + g(b) - g(table.up(a, b)) - g(table.low(b, a))
    return tuple(v)


def yb_coboundary_basis(table: BiquandleTable) -> List[Tuple[Fraction, ...]]:
    """Spanning basis of the image of :func:`yb_coboundary`."""
    n = table.n
    gens = []
    for e in table.elements:
        gens.append(yb_coboundary(lambda x, e=e: Fraction(int(x == e)), table))
    return span_basis(gens, n * n)


def _as_function(g):
    if callable(g):
        return lambda x: Fraction(g(x))
    vals = [Fraction(x) for x in g]
    return lambda x: vals[x - 1]


# --------------------------------------------------------------------------
# S-cocycles


def s_cocycle_rows(n_elements: int, S: Permutation) -> List[List[Fraction]]:
    """Rows ``v(boundary(x - omega_3 x)) = 0`` over all 3-tuples in lex order."""
    S = Permutation(S)
    if len(S) != n_elements:
        raise ValueError("permutation size does not match the number of elements")
    rows = []
    for tup in product(range(1, n_elements + 1), repeat=3):
        ch = s_boundary(3, subcomplex_generator(3, tup, S), S)
        rows.append(cochain_row(ch, n_elements))
    return rows


def s_cocycle_basis(n_elements: int, S: Permutation) -> List[Tuple[Fraction, ...]]:
    return rref_kernel_basis(s_cocycle_rows(n_elements, S), n_elements ** 2)


def is_s_cocycle(n_elements: int, S: Permutation, v: Sequence) -> bool:
    return all(sum(r * x for r, x in zip(row, v) if r) == 0 for row in s_cocycle_rows(n_elements, S))


def s_coboundary(f, S: Permutation) -> Tuple[Fraction, ...]:
    """``f o boundary_2``: ``-f(y) + f(S^-1 y) + f(S x) - f(x)``."""
    S = Permutation(S)
    n = len(S)
    f = _as_function(f)
    Si = S.inverse()
    v = [Fraction(0)] * (n * n)
    for x, y in product(range(1, n + 1), repeat=2):
        v[pair_index(n, x, y)] = -f(y) + f(Si(y)) + f(S(x)) - f(x)
    return tuple(v)


def degenerate_generators(n_elements: int, S: Permutation) -> List[Tuple[Fraction, ...]]:
    S = Permutation(S)
    Si = S.inverse()
    gens = []
    for a, b in product(range(1, n_elements + 1), repeat=2):
        gens.append(chi(n_elements, (a, b), (Si(b), S(a))))
    return gens


def degenerate_basis(n_elements: int, S: Permutation) -> List[Tuple[Fraction, ...]]:
    """Span of ``chi_(a,b) + chi_(S^-1 b, S a)``."""
    return span_basis(degenerate_generators(n_elements, S), n_elements ** 2)


def is_degenerate(n_elements: int, S: Permutation, v: Sequence) -> bool:
    return in_span(v, degenerate_basis(n_elements, S))[0]


# --------------------------------------------------------------------------
# compatibility


class Compatibility(Enum):
    INCOMPATIBLE = "incompatible"
    COMPATIBLE = "compatible"
    STRONGLY_COMPATIBLE = "strongly_compatible"

    def __bool__(self):
        return self is not Compatibility.INCOMPATIBLE


def compatibility_terms(table: BiquandleTable, S: Permutation, a: int, b: int, c: int):
    """Signed pair lists ``(lhs_phi, rhs_v)`` of the mixed-move identity

    ``phi(a,b) - phi(Sa,Sb) = v(b,c) + v(a,S^-1 c) + v(S^-1 c, S(a^b))
    + v(S^-2 c, S(b_a)) - v(a^b,c) - v(b_a,S^-1 c) - v(S^-1 c, S b) - v(S^-2 c, S a)``.
    """
    Si = S.inverse()
    ab, ba = table.up(a, b), table.low(b, a)
    c1, c2 = Si(c), Si(Si(c))
    lhs = [((a, b), 1), ((S(a), S(b)), -1)]
    rhs = [
        ((b, c), 1), ((a, c1), 1), ((c1, S(ab)), 1), ((c2, S(ba)), 1),
        ((ab, c), -1), ((ba, c1), -1), ((c1, S(b)), -1), ((c2, S(a)), -1),
    ]
    return lhs, rhs


def compatibility_rows(table: BiquandleTable, S: Permutation) -> List[List[Fraction]]:
    """Rows over the joint vector ``(phi, v)`` expressing ``lhs - rhs = 0``."""
    n = table.n
    rows = []
    for a, b, c in product(table.elements, repeat=3):
        lhs, rhs = compatibility_terms(table, S, a, b, c)
        row = [Fraction(0)] * (2 * n * n)
        for (x, y), k in lhs:
            row[pair_index(n, x, y)] += k
        for (x, y), k in rhs:
            row[n * n + pair_index(n, x, y)] -= k
        rows.append(row)
    return rows


def _s_invariant(table, S, phi) -> bool:
    n = table.n
    return all(
        evaluate(phi, n, a, b) == evaluate(phi, n, S(a), S(b))
        for a, b in product(table.elements, repeat=2)
    )


def compatibility_check(table: BiquandleTable, S: Permutation, phi: Sequence, v: Sequence,
                        check_cocycles: bool = True) -> Compatibility:
    S = Permutation(S)
    n = table.n
    phi = as_cochain(phi, n)
    v = as_cochain(v, n)
    if check_cocycles:
        if not is_yb_cocycle(table, phi):
            raise ValueError("phi is not a reduced Yang-Baxter 2-cocycle of the table")
        if not is_s_cocycle(n, S, v):
            raise ValueError("v is not an S 2-cocycle")
    joint = phi + v
    for row in compatibility_rows(table, S):
        if sum(r * x for r, x in zip(row, joint) if r) != 0:
            return Compatibility.INCOMPATIBLE
    if _s_invariant(table, S, phi):
        return Compatibility.STRONGLY_COMPATIBLE
    return Compatibility.COMPATIBLE


@dataclass(frozen=True)
class CompatiblePair:
    phi: Tuple[Fraction, ...]
    v: Tuple[Fraction, ...]
    degenerate_v: bool
    strong: bool

    def to_json(self) -> dict:
        return {
            "phi": [_num(x) for x in self.phi],
            "v": [_num(x) for x in self.v],
            "degenerate_v": self.degenerate_v,
            "strong": self.strong,
        }


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def compatible_pair_rows(table: BiquandleTable, S: Permutation) -> List[List[Fraction]]:
    n2 = table.n ** 2
    pad = [Fraction(0)] * n2
    rows = [r + pad for r in yb_cocycle_rows(table) + reduced_rows(table)]
    rows += [pad + r for r in s_cocycle_rows(table.n, S)]
    rows += compatibility_rows(table, S)
    return rows


def compatible_pairs(table: BiquandleTable, S: Permutation) -> List[CompatiblePair]:
    """Canonical basis of the space of compatible ``(phi, v)`` pairs."""
    S = Permutation(S)
    if not is_automorphism(table, S):
        raise AxiomError(f"{list(S)} is not an automorphism of the table")
    n, n2 = table.n, table.n ** 2
    basis = rref_kernel_basis(compatible_pair_rows(table, S), 2 * n2)
    degen = degenerate_basis(n, S)
    out = []
    for vec in basis:
        phi, v = vec[:n2], vec[n2:]
        out.append(CompatiblePair(
            phi=phi,
            v=v,
            degenerate_v=in_span(v, degen)[0],
            strong=_s_invariant(table, S, phi),
        ))
    return out


def pair_in_compatible_space(table: BiquandleTable, S: Permutation, phi, v) -> bool:
    basis = rref_kernel_basis(compatible_pair_rows(table, Permutation(S)), 2 * table.n ** 2)
    return in_span(tuple(phi) + tuple(v), basis)[0]
