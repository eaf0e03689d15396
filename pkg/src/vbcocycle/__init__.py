"""Virtual biquandles, Yang-Baxter and S-cocycles, and the virtual
Yang-Baxter 2-cocycle invariant of virtual links."""
from .algebra import (
    AxiomError,
    BiquandleTable,
    Permutation,
    VirtualBiquandle,
    alexander_biquandle,
    automorphism_group,
    check_axioms,
    conjugacy_class_reps,
    trivial_biquandle,
)
from .codes import GaussCode, build_diagram, catalog_lookup, parse_code, serialize_code
from .cohomology import (
    Compatibility,
    chi,
    compatibility_check,
    compatible_pairs,
    degenerate_basis,
    s_cocycle_basis,
    yb_cocycle_basis,
)
from .invariant import (
    IncompatibleCocycles,
    InvariantValue,
    counting_invariant,
    detect_nonclassical,
    enumerate_colorings,
    phi_vyb,
    render_invariant,
)

__version__ = "0.1.0"
