"""JSON family definitions.

Four kinds are recognised, dispatched on the ``kind`` field:

``generic``
    {"kind": "generic", "p": 0, "q": 1, "a": 5.0,
     "psi": [{"m": 1, "cos": 0.0, "sin": 4.0}],
     "g0": 0.0, "g": [], "mu_window": null, "check_window": true}

``arnold`` / ``modified_arnold``
    {"kind": "arnold", "p": 2, "q": 3,
     "alpha": {"v0": 0.6666666666666666, "d": 2.0},
     "beta": {"v0": 0.0, "d": 1.0}, "gamma": {"v0": 0.0, "d": 0.0}}

``pwl``
    {"kind": "pwl", "p": 0, "q": 1,
     "breaks": [{"b0": 0.0, "db": 0.0}, {"b0": 0.5, "db": 0.0}],
     "values": [{"a0": 0.0, "da": 1.0}, {"a0": 0.5, "da": 2.0}]}

``pwl_nf``
    {"kind": "pwl_nf", "p": 0, "q": 1,
     "pieces": [{"gamma": 0.0, "A": 1.0, "B": 2.0},
                {"gamma": 0.5, "A": 2.0, "B": -2.0}]}
"""

from __future__ import annotations

import json

from .errors import FamilyValidationError
from .lifts import AffinePath, ArnoldFamily, HarmonicProfile, SmoothFamily
from .pwl import PWLFamily, PWLNormalForm


def _profile(items):
    return HarmonicProfile(
        tuple((t["m"], t.get("cos", 0.0), t.get("sin", 0.0)) for t in items or [])
    )


def _path(doc, key, default_v0=0.0, default_d=0.0):
    node = doc.get(key) or {}
    return AffinePath(v0=node.get("v0", default_v0), d=node.get("d", default_d))


def family_from_dict(doc):
    """Build a family object from a parsed JSON document."""
    kind = doc.get("kind")
    if kind == "generic":
        return SmoothFamily(
            p=int(doc["p"]),
            q=int(doc["q"]),
            a=float(doc["a"]),
            psi=_profile(doc.get("psi")),
            g0=float(doc.get("g0", 0.0)),
            g=_profile(doc.get("g")),
            mu_window=doc.get("mu_window"),
            check_window=bool(doc.get("check_window", True)),
        )
    if kind in ("arnold", "modified_arnold"):
        p = doc.get("p")
        q = doc.get("q")
        alpha_v0 = None
        if "alpha" in doc and "v0" in doc["alpha"]:
            alpha_v0 = doc["alpha"]["v0"]
        elif p is not None:
            alpha_v0 = p / q
        if alpha_v0 is None:
            raise FamilyValidationError("arnold family needs alpha.v0 or p and q")
        return ArnoldFamily(
            alpha=AffinePath(v0=alpha_v0, d=doc.get("alpha", {}).get("d", 0.0)),
            beta=_path(doc, "beta"),
            gamma=_path(doc, "gamma"),
            p=None if p is None else int(p),
            q=None if q is None else int(q),
            mu_window=doc.get("mu_window"),
            check_window=bool(doc.get("check_window", True)),
        )
    if kind == "pwl":
        return PWLFamily(
            breaks=tuple((b["b0"], b.get("db", 0.0)) for b in doc["breaks"]),
            values=tuple((a["a0"], a.get("da", 0.0)) for a in doc["values"]),
            p=int(doc.get("p", 0)),
            q=int(doc.get("q", 1)),
        )
    if kind == "pwl_nf":
        pieces = doc["pieces"]
        return PWLNormalForm(
            p=int(doc.get("p", 0)),
            q=int(doc.get("q", 1)),
            gammas=[pc["gamma"] for pc in pieces],
            A=[pc["A"] for pc in pieces],
            B=[pc["B"] for pc in pieces],
        )
    raise FamilyValidationError(f"unknown family kind {kind!r}")


def load_family(path):
    """Read a family definition from a JSON file."""
    with open(path) as fh:
        return family_from_dict(json.load(fh))
