"""Shipped link diagrams and their expected-result fixtures.

Fixtures are produced by :func:`build_fixture` (run ``scripts/make_fixtures.py``)
from the brute-force oracles and the Smith normal form, never typed by hand.
"""

from __future__ import annotations

import json
from importlib import resources

from ..homology import khovanov_homology
from ..kauffman import kauffman_jones, state_census
from ..pd import LinkDiagram, parse_pd

FIXTURES = "fixtures.json"


def names() -> list[str]:
    return sorted(p.name[:-3] for p in resources.files(__name__).iterdir() if p.name.endswith(".pd"))


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.pd").read_text()


def load(name: str) -> LinkDiagram:
    return parse_pd(text(name))


def build_fixture(d: LinkDiagram) -> dict:
    h = khovanov_homology(d)
    return {
        "crossings": len(d.crossings),
        "writhe": d.writhe,
        "components": d.n_components,
        "jones": kauffman_jones(d).to_json(),
        "states": sorted([k, c, n] for (k, c), n in state_census(d).items()),
        "homology": [
            {"i": i, "j": j, "free": g.free_rank, "torsion": list(g.torsion)}
            for (i, j), g in h.nonzero().items()
        ],
    }


def fixtures() -> dict[str, dict]:
    return json.loads(resources.files(__name__).joinpath(FIXTURES).read_text())
