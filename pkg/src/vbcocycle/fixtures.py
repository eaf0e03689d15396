"""Reference virtual biquandles, cocycle pairs and expected invariant values.

Cocycle vectors use 0-based index ``n*(i-1) + (j-1)`` for ``chi_(i,j)``.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from .algebra import BiquandleTable, Permutation, VirtualBiquandle, alexander_biquandle, trivial_biquandle
from .cohomology import chi, zero_cochain

# order-3 biquandle, block layout [upbar | up ; lowbar | low], used with S=(23)
SWAP23_TABLE = BiquandleTable.from_block_matrix([
    [1, 1, 1, 1, 1, 1],
    [2, 3, 3, 2, 3, 3],
    [3, 2, 2, 3, 2, 2],
    [1, 1, 1, 1, 1, 1],
    [3, 3, 3, 3, 3, 3],
    [2, 2, 2, 2, 2, 2],
]).verified()

# rows of colorings of virtual_link22, columns = semiarcs 0..7
SWAP23_COLORINGS = (
    (1, 1, 1, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, 2, 3, 2, 3),
    (1, 1, 1, 1, 3, 2, 3, 2),
    (2, 3, 3, 2, 1, 1, 1, 1),
    (2, 3, 2, 3, 2, 3, 2, 3),
    (2, 3, 2, 3, 3, 2, 3, 2),
    (3, 2, 2, 3, 1, 1, 1, 1),
    (3, 2, 3, 2, 2, 3, 2, 3),
    (3, 2, 3, 2, 3, 2, 3, 2),
)

Z6_V = chi(6, (1, 4, -1), (1, 6, -2), (2, 2, 2), (2, 3, 2), (2, 4, 1), (2, 5, 2),
           (3, 4, -1), (4, 2, 1), (4, 3, 1))
Z6_PHI = chi(6, (2, 1), (2, 3), (2, 4), (2, 6), (4, 3, -1), (4, 6, -1), (6, 1, -1), (6, 4, -1))


@dataclass(frozen=True)
class Fixture:
    name: str
    code: Optional[str]  # catalog name
    table: BiquandleTable
    S: Permutation
    phi: Tuple
    v: Tuple
    flag: str  # expected compatibility: "strong" or "weak"
    rendered: Optional[str]
    note: str = ""

    @property
    def vb(self) -> VirtualBiquandle:
        return VirtualBiquandle(self.table, self.S)


FIXTURES = {
    "trivial3_cycle": Fixture(
        "trivial3_cycle", "virtual_trefoil", trivial_biquandle(3), Permutation([2, 3, 1]),
        chi(3, (1, 3), (2, 1), (2, 3)), zero_cochain(3), "strong", "3t",
        "trivial biquandle of order 3 with a 3-cycle automorphism"),
    "swap23": Fixture(
        "swap23", "virtual_link22", SWAP23_TABLE, Permutation([1, 3, 2]),
        zero_cochain(3), chi(3, (1, 2), (1, 3)), "strong", "2s^{-2}+5+2s^2"),
    "alex322_swap12": Fixture(
        "alex322_swap12", "virtual_link22", alexander_biquandle(3, 2, 2), Permutation([2, 1, 3]),
        chi(3, (1, 3), (2, 3)), chi(3, (1, 3), (2, 3)), "strong", "5+2s^{-2}+2s^2t^{-2}"),
    "z6_reflection": Fixture(
        "z6_reflection", "virtual_hopf", alexander_biquandle(6, 1, 5), Permutation([1, 6, 5, 4, 3, 2]),
        Z6_PHI, Z6_V, "weak", "3T^{-1}+6+3T"),
}
