"""Invariant bundles for the CLI and fingerprints for the fuzzer."""

from dataclasses import dataclass

from . import SCHEMA_VERSION
from .biquandle import (VirtualBiquandle, alexander_biquandle, alexander_quandle,
                        count_colorings, count_virtual_colorings, generalized_alexander,
                        scaling, tetrahedral_quandle, xi)
from .cochain import indices, parity_class_trivial
from .egc import serialize_egc
from .laurent import normalize_units
from .numeric import index_polynomial, wriggle_report, writhe

CHECKS = ("Q", "wriggle", "colorings", "alexander", "khovanov", "parity-class")


def _panel():
    """Small biquandles used by the colorings check."""
    ab = alexander_biquandle(5, 2, 3)
    return {
        "quandle Z3 t=2": ("plain", alexander_quandle(3, 2)),
        "quandle Z5 t=2": ("plain", alexander_quandle(5, 2)),
        "tetrahedral quandle": ("plain", tetrahedral_quandle()),
        "biquandle Z5 s=2 t=3": ("plain", ab),
        "biquandle Z5 s=2 t=3, f=3x": ("virtual", VirtualBiquandle(ab, scaling(5, 3))),
        "biquandle Z5 s=2 t=3, f=2x": ("virtual", VirtualBiquandle(ab, scaling(5, 2))),
    }


_PANEL = None


def coloring_profile(code):
    global _PANEL
    if _PANEL is None:
        _PANEL = _panel()
    out = {}
    for name, (kind, B) in _PANEL.items():
        out[name] = count_virtual_colorings(code, B) if kind == "virtual" else count_colorings(code, B)
    return out


def negative_crossings(code):
    return sum(1 for s in code.signs.values() if s < 0)


def khovanov_fingerprint(code):
    """Homology with degrees shifted by the number of negative crossings.

    The complex has no global normalisation of its own; shifting by n_-
    is what makes the groups comparable across R1 and R2 moves.
    """
    from .khovanov import khovanov_homology
    shift = negative_crossings(code)
    groups = khovanov_homology(code).groups
    return tuple((h - shift, r, t) for h, r, t in groups if r or t)


def invariant_fingerprint(code, checks):
    """Hashable tuple of the selected invariants, in sorted check order."""
    out = []
    for name in sorted(checks):
        key = name.lower()
        if key == "q":
            val = index_polynomial(code)
        elif key == "wriggle":
            val = wriggle_report(code).pairwise
        elif key == "colorings":
            val = tuple(sorted(coloring_profile(code).items()))
        elif key == "alexander":
            val = (normalize_units(generalized_alexander(code)), normalize_units(xi(code)))
        elif key == "khovanov":
            val = khovanov_fingerprint(code)
        elif key == "parity-class":
            val = parity_class_trivial(code)
        else:
            raise ValueError(f"unknown check {name!r}; expected one of {', '.join(CHECKS)}")
        out.append((key, val))
    return tuple(out)


@dataclass
class InvariantBundle:
    code: str
    writhe: int
    wriggle: dict
    Q: object
    indices: dict
    parity_trivial: bool
    alexander: dict = None
    khovanov: dict = None

    def to_json(self):
        d = {"schema_version": SCHEMA_VERSION, "code": self.code, "writhe": self.writhe,
             "wriggle": self.wriggle["wriggle"], "pairwise": self.wriggle["pairwise"],
             "lk_over": self.wriggle["lk_over"], "lk_under": self.wriggle["lk_under"],
             "Q": self.Q.to_json(), "indices": {str(c): v for c, v in sorted(self.indices.items())},
             "parity_class_trivial": self.parity_trivial}
        if self.alexander is not None:
            d["alexander"] = {k: v.to_json() for k, v in self.alexander.items()}
        if self.khovanov is not None:
            d["khovanov"] = self.khovanov
        return d


def bundle(code, alexander=False, khovanov=False):
    alex = None
    if alexander:
        alex = {"abq": normalize_units(generalized_alexander(code)),
                "vaq": normalize_units(xi(code))}
    kh = None
    if khovanov:
        from .khovanov import khovanov_homology
        kh = khovanov_homology(code).to_json()
    return InvariantBundle(serialize_egc(code), writhe(code), wriggle_report(code).to_json(),
                           index_polynomial(code), indices(code), parity_class_trivial(code),
                           alex, kh)
