"""JSON representation documents.

    {
      "field":  {"p": 3, "f": 1, "ell": 7},
      "ring":   "LaurentExt(Cyclotomic(24), T)",
      "psi":    {"level": 0, "zeta_p": "z3"},                # optional
      "rep":    {"phi": [["T"]], "sigma": [["1"]],
                 "wd_n": [[...]],                             # optional
                 "filtration": [{"v": "1/2", "generators": [matrix, ...]}]},
      "family": {"target": "Q", "hom": {"T": "2"},            # optional
                 "fibers": [{"label": "mod 73", "ring": "FiniteField(73)",
                             "hom": {"T": "5"},
                             "lift": {"ring": "Cyclotomic(24)", "hom": {"T": "5"}},
                             "reduction": {}}]}
    }

Ring elements are strings in element syntax; matrices are lists of rows.
Without a family block the representation's ring is both chart and target.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SyntaxParseError
from .factors import AdditiveCharacter
from .family import Fiber, FamilyPresentation
from .homs import RingHom, identity_hom, make_hom
from .rings import Ring
from .syntax import format_matrix, parse_element, parse_matrix, parse_ring
from .weil import FiltrationData, LocalFieldData, TameRep, WDRep, mk_tame, mk_wd


@dataclass
class RepDocument:
    field: LocalFieldData
    ring: Ring
    rep: TameRep | WDRep
    psi: AdditiveCharacter | None = None
    level: int = 0
    filtration: FiltrationData | None = None
    presentation: FamilyPresentation | None = None
    fibers: list = field(default_factory=list)
    raw: dict = field(default_factory=dict)

    @property
    def is_family(self) -> bool:
        return self.presentation is not None and self.presentation.f.source is not self.presentation.f.target

    def fiber(self, label: str) -> Fiber:
        for fb in self.fibers:
            if fb.label == label:
                return fb
        raise SyntaxParseError(f"no fiber labelled {label!r}")


def _images(spec: dict, target: Ring) -> dict:
    if not isinstance(spec, dict):
        raise SyntaxParseError("hom images must be an object {generator: value}")
    return {k: parse_element(str(v), target) for k, v in spec.items()}


def _hom(source: Ring, target: Ring, spec: dict | None, label: str = "") -> RingHom:
    if source is target and not spec:
        return identity_hom(source)
    return make_hom(source, target, _images(spec or {}, target), label)


def parse_fiber_spec(text: str, source: Ring) -> Fiber:
    """``RING:gen=value,gen=value`` (images optional), e.g. ``Q:T=2``."""
    ring_text, _, rest = text.partition(":")
    target = parse_ring(ring_text)
    images = {}
    for part in filter(None, (s.strip() for s in rest.split(","))):
        name, eq, value = part.partition("=")
        if not eq:
            raise SyntaxParseError(f"bad image {part!r} in fiber spec")
        images[name.strip()] = value.strip()
    return Fiber(_hom(source, target, images, text), label=text)


def load(path) -> RepDocument:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SyntaxParseError(f"{path}: {exc}") from None
    return from_dict(data)


def from_dict(data: dict) -> RepDocument:
    try:
        fd = data["field"]
        F = LocalFieldData(int(fd["p"]), int(fd.get("f", 1)), int(fd.get("ell", 0)))
        R = parse_ring(data["ring"])
        rd = data["rep"]
        phi = parse_matrix(rd["phi"], R)
        sigma = parse_matrix(rd["sigma"], R)
    except (KeyError, TypeError) as exc:
        raise SyntaxParseError(f"document is missing {exc}") from None
    if len(phi) != len(sigma):
        raise SyntaxParseError("phi and sigma have different sizes")
    rep = mk_tame(R, phi, sigma, F)
    if rd.get("wd_n") is not None:
        N = parse_matrix(rd["wd_n"], R)
        if len(N) != len(phi):
            raise SyntaxParseError("wd_n has the wrong size")
        rep = mk_wd(rep, N)
    filt = None
    if rd.get("filtration"):
        steps = []
        for step in rd["filtration"]:
            gens = [parse_matrix(g, R) for g in step["generators"]]
            steps.append((Fraction(str(step["v"])), gens))
        filt = FiltrationData.from_generators(steps)
    pd = data.get("psi") or {}
    level = int(pd.get("level", 0))
    psi = None
    if pd.get("zeta_p"):
        psi = AdditiveCharacter(parse_element(str(pd["zeta_p"]), R), F.p, level)
    doc = RepDocument(F, R, rep, psi, level, filt, raw=data)
    fam = data.get("family")
    if fam is not None:
        target = parse_ring(fam.get("target", data["ring"]))
        f = _hom(R, target, fam.get("hom"), "chart")
        base = rep.rep if isinstance(rep, WDRep) else rep
        doc.presentation = FamilyPresentation(base, f)
        for i, fb in enumerate(fam.get("fibers", [])):
            doc.fibers.append(_fiber(fb, doc.presentation, i))
    return doc


def _fiber(spec: dict, pres: FamilyPresentation, i: int) -> Fiber:
    kappa = parse_ring(spec["ring"])
    label = spec.get("label", f"fiber{i}")
    hom = _hom(pres.target, kappa, spec.get("hom"), label)
    lift = red = None
    if "lift" in spec:
        K = parse_ring(spec["lift"]["ring"])
        lift = _hom(pres.source, K, spec["lift"].get("hom"), "lift")
        red = _hom(K, kappa, spec.get("reduction"), "reduction")
    return Fiber(hom, lift, red, label)


# ---------------------------------------------------------------------------
# writing


def rep_to_dict(a, field: LocalFieldData | None = None) -> dict:
    r = a.rep if isinstance(a, WDRep) else a
    F = field or r.field
    out = {
        "field": {"p": F.p, "f": F.f, "ell": F.ell},
        "ring": str(r.ring.descriptor),
        "rep": {"phi": format_matrix(r.phi), "sigma": format_matrix(r.sigma)},
    }
    if isinstance(a, WDRep):
        out["rep"]["wd_n"] = format_matrix(a.N)
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True)
