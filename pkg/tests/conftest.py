import random

from vbcocycle.codes import GaussCode, Kind, Passage


def random_code(rng: random.Random, n_components=None, n_crossings=None, virtual_ratio=0.4) -> GaussCode:
    """A random well-formed signed Gauss code (not necessarily planar)."""
    if n_components is None:
        n_components = rng.randint(1, 3)
    if n_crossings is None:
        n_crossings = rng.randint(0, 5)
    slots = []
    for k in range(1, n_crossings + 1):
        if rng.random() < virtual_ratio:
            slots += [Passage(k, Kind.RIGHT), Passage(k, Kind.LEFT)]
        else:
            sign = rng.choice((1, -1))
            slots += [Passage(k, Kind.OVER, sign), Passage(k, Kind.UNDER, sign)]
    rng.shuffle(slots)
    cuts = sorted(rng.randint(0, len(slots)) for _ in range(n_components - 1))
    comps, prev = [], 0
    for c in cuts + [len(slots)]:
        comps.append(tuple(slots[prev:c]))
        prev = c
    return GaussCode(tuple(comps))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
