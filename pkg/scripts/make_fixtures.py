"""Write the bundled family fixtures into src/tamegamma/fixtures/.

Each fixture is a family over a characteristic-zero chart with at least three
fibers; several fibers have residue characteristic ell and carry a lift.
Run from the repository root:  python3 scripts/make_fixtures.py [--check]
"""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from tamegamma.documents import from_dict
from tamegamma.family import verify_interpolation

OUT = Path(__file__).resolve().parent.parent / "src" / "tamegamma" / "fixtures"

SQRT2 = "z24^3 + z24^-3"


def fam(name, p, f, ring, phi, sigma, fibers, target=None, hom=None):
    doc = {
        "name": name,
        "field": {"p": p, "f": f, "ell": 0},
        "ring": ring,
        "rep": {"phi": phi, "sigma": sigma},
        "family": {"fibers": fibers},
    }
    if target:
        doc["family"]["target"] = target
        doc["family"]["hom"] = hom or {}
    return name, doc


def fiber(ring, label, **images):
    return {"label": label, "ring": ring, "hom": images}


def ell_fiber(ring, label, lift_ring, lift, reduction=None, **images):
    return {"label": label, "ring": ring, "hom": images,
            "lift": {"ring": lift_ring, "hom": lift}, "reduction": reduction or {}}


L24 = "LaurentExt(Cyclotomic(24), T)"

FIXTURES = [
    # Laurent families over Q; the chart is enlarged by z_p on the fly
    fam("laurent_q_unramified_q3", 3, 1, "LaurentExt(Q, T)", [["T"]], [["1"]],
        [fiber("Q", "T=1", T="1"), fiber("Q", "T=2", T="2"), fiber("Q", "T=3", T="3")]),
    fam("laurent_q_unramified_q5", 5, 1, "LaurentExt(Q, T)", [["2*T"]], [["1"]],
        [fiber("Q", "T=1", T="1"), fiber("Q", "T=-1", T="-1"), fiber("Q", "T=1/2", T="1/2")]),
    fam("laurent_q_jordan_q7", 7, 1, "LaurentExt(Q, T)", [["T", "1"], ["0", "T^-1"]], [["1", "0"], ["0", "1"]],
        [fiber("Q", "T=2", T="2"), fiber("Q", "T=3", T="3"), fiber("Cyclotomic(4)", "T=i", T="z4")]),
    # Laurent families over Q(z24), q = 3 and 9
    fam("laurent_z24_quadratic_q3", 3, 1, L24, [["T"]], [["-1"]],
        [fiber("Cyclotomic(24)", "T=2", T="2"), fiber("Cyclotomic(24)", "T=z24", T="z24"),
         ell_fiber("FiniteField(73)", "mod 73, T=5", "Cyclotomic(24)", {"T": "5"}, T="5")]),
    fam("laurent_z24_induced_q3", 3, 1, L24, [["0", "T"], ["1", "0"]], [["z8", "0"], ["0", "z8^3"]],
        [fiber("Cyclotomic(24)", "T=5", T="5"), fiber("Cyclotomic(24)", "T=-z24^2", T="-z24^2"),
         ell_fiber("FiniteField(73)", "mod 73, T=3", "Cyclotomic(24)", {"T": "3"}, T="3")]),
    fam("laurent_z24_sum_q3", 3, 1, L24, [["T", "0"], ["0", "3*T^2"]], [["1", "0"], ["0", "-1"]],
        [fiber("Cyclotomic(24)", "T=1", T="1"), fiber("Cyclotomic(24)", "T=z8", T="z8"),
         ell_fiber("FiniteField(97)", "mod 97, T=2", "Cyclotomic(24)", {"T": "2"}, T="2")]),
    fam("laurent_z24_jordan_q3", 3, 1, L24, [["T", "1"], ["0", "T"]], [["1", "0"], ["0", "1"]],
        [fiber("Cyclotomic(24)", "T=1", T="1"), fiber("Cyclotomic(24)", "T=-2", T="-2"),
         ell_fiber("FiniteField(73)", "mod 73, T=10", "Cyclotomic(24)", {"T": "10"}, T="10")]),
    fam("laurent_z24_three_dim_q3", 3, 1, L24,
        [["0", "T", "0"], ["1", "0", "0"], ["0", "0", "T^-1"]],
        [["z8", "0", "0"], ["0", "z8^3", "0"], ["0", "0", "-1"]],
        [fiber("Cyclotomic(24)", "T=2", T="2"), fiber("Cyclotomic(24)", "T=z3", T="z3"),
         ell_fiber("FiniteField(97)", "mod 97, T=5", "Cyclotomic(24)", {"T": "5"}, T="5")]),
    fam("laurent_z24_octic_q9", 3, 2, L24, [["T"]], [["z8"]],
        [fiber("Cyclotomic(24)", "T=1", T="1"), fiber("Cyclotomic(24)", "T=2", T="2"),
         ell_fiber("FiniteField(73)", "mod 73, T=10", "Cyclotomic(24)", {"T": "10"}, T="10")]),
    # other residue characteristics
    fam("laurent_z20_quartic_q5", 5, 1, "LaurentExt(Cyclotomic(20), T)", [["T"]], [["z4"]],
        [fiber("Cyclotomic(20)", "T=1", T="1"), fiber("Cyclotomic(20)", "T=3", T="3"),
         ell_fiber("FiniteField(41)", "mod 41, T=3", "Cyclotomic(20)", {"T": "3"}, T="3")]),
    fam("laurent_z21_cubic_q7", 7, 1, "LaurentExt(Cyclotomic(21), T)", [["T", "0"], ["0", "-1"]],
        [["z3", "0"], ["0", "z3^2"]],
        [fiber("Cyclotomic(21)", "T=1", T="1"), fiber("Cyclotomic(21)", "T=z7", T="z7"),
         ell_fiber("FiniteField(43)", "mod 43, T=2", "Cyclotomic(21)", {"T": "2"}, T="2")]),
    fam("laurent_z48_induced_q9", 3, 2, "LaurentExt(Cyclotomic(48), T)", [["0", "T"], ["1", "0"]],
        [["z16", "0"], ["0", "z16^9"]],
        [fiber("Cyclotomic(48)", "T=1", T="1"), fiber("Cyclotomic(48)", "T=2", T="2"),
         ell_fiber("FiniteField(97)", "mod 97, T=2", "Cyclotomic(48)", {"T": "2"}, T="2")]),
    # quotients Q(z)[T]/(T^2 - 2)
    fam("quotient_z24_sqrt2_q3", 3, 1, "Quotient(Cyclotomic(24), T, T^2 - 2)", [["T"]], [["-1"]],
        [fiber("Cyclotomic(24)", "T=sqrt2", T=SQRT2), fiber("Cyclotomic(24)", "T=-sqrt2", T=f"-({SQRT2})"),
         ell_fiber("FiniteField(73)", "mod 73, T=sqrt2", "Cyclotomic(24)", {"T": SQRT2}, T=SQRT2)]),
    fam("quotient_z24_sqrt2_rank2_q3", 3, 1, "Quotient(Cyclotomic(24), T, T^2 - 2)",
        [["T", "1"], ["1", "T"]], [["1", "0"], ["0", "1"]],
        [fiber("Cyclotomic(24)", "T=sqrt2", T=SQRT2), fiber("Cyclotomic(24)", "T=-sqrt2", T=f"-({SQRT2})"),
         ell_fiber("FiniteField(97)", "mod 97, T=sqrt2", "Cyclotomic(24)", {"T": SQRT2}, T=SQRT2)]),
    fam("quotient_z8_sqrt2_q3", 3, 1, "Quotient(Cyclotomic(8), T, T^2 - 2)",
        [["0", "T"], ["1", "0"]], [["z8", "0"], ["0", "z8^3"]],
        [fiber("Cyclotomic(8)", "T=sqrt2", T="z8 + z8^-1"), fiber("Cyclotomic(8)", "T=-sqrt2", T="-z8 - z8^-1"),
         fiber("Cyclotomic(24)", "T=sqrt2 in Q(z24)", T=SQRT2)]),
    # polynomial (non-Laurent) families with constant determinant
    fam("poly_q_unipotent_q3", 3, 1, "PolyExt(Q, T)", [["1", "T"], ["0", "2"]], [["1", "0"], ["0", "1"]],
        [fiber("Q", "T=0", T="0"), fiber("Q", "T=1", T="1"), fiber("Q", "T=5", T="5")]),
    fam("poly_z24_trace_q3", 3, 1, "PolyExt(Cyclotomic(24), T)", [["T", "1"], ["-1", "0"]],
        [["1", "0"], ["0", "1"]],
        [fiber("Cyclotomic(24)", "T=0", T="0"), fiber("Cyclotomic(24)", "T=3", T="3"),
         ell_fiber("FiniteField(73)", "mod 73, T=4", "Cyclotomic(24)", {"T": "4"}, T="4")]),
    fam("poly_z24_mixed_q3", 3, 1, "PolyExt(Cyclotomic(24), T)",
        [["1", "T", "0"], ["0", "2", "0"], ["0", "0", "3"]],
        [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]],
        [fiber("Cyclotomic(24)", "T=0", T="0"), fiber("Cyclotomic(24)", "T=z24", T="z24"),
         ell_fiber("FiniteField(97)", "mod 97, T=7", "Cyclotomic(24)", {"T": "7"}, T="7")]),
    # integral layers as targets
    fam("integral_z24_mod73sq_quadratic_q3", 3, 1, L24, [["T"]], [["-1"]],
        [ell_fiber("FiniteField(73)", "mod 73", "Cyclotomic(24)", {"T": "5"}),
         ell_fiber("FiniteField(73)", "mod 73, other root", "Cyclotomic(24)", {"T": "5"},
                   {"z24": "z24^5"}, z24="z24^5"),
         ell_fiber("FiniteField(73, 2)", "mod 73 in F_73^2", "Cyclotomic(24)", {"T": "5"})],
        target="ModularCyclotomic(24, 73, 2)", hom={"T": "5"}),
    fam("integral_z24_mod97_induced_q3", 3, 1, L24, [["0", "T"], ["1", "0"]], [["z8", "0"], ["0", "z8^3"]],
        [ell_fiber("FiniteField(97)", "mod 97", "Cyclotomic(24)", {"T": "7"}),
         ell_fiber("FiniteField(97)", "mod 97, other root", "Cyclotomic(24)", {"T": "7"},
                   {"z24": "z24^7"}, z24="z24^7"),
         ell_fiber("FiniteField(97, 2)", "mod 97 in F_97^2", "Cyclotomic(24)", {"T": "7"})],
        target="ModularCyclotomic(24, 97, 1)", hom={"T": "7"}),
    fam("integral_z3_mod49_quadratic_q3", 3, 1, "LaurentExt(Cyclotomic(3), T)", [["T"]], [["-1"]],
        [ell_fiber("FiniteField(7)", "mod 7, z3=2", "Cyclotomic(3)", {"T": "2"}, {"z3": "2"}, z3="2"),
         ell_fiber("FiniteField(7)", "mod 7, z3=4", "Cyclotomic(3)", {"T": "2"}, {"z3": "4"}, z3="4"),
         ell_fiber("FiniteField(7, 2)", "mod 7 in F_49", "Cyclotomic(3)", {"T": "2"}, {"z3": "2"}, z3="2")],
        target="ModularCyclotomic(3, 7, 2)", hom={"T": "2"}),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="verify each fixture before writing")
    args = ap.parse_args(argv)
    OUT.mkdir(parents=True, exist_ok=True)
    for name, doc in FIXTURES:
        if args.check:
            parsed = from_dict(doc)
            recs = verify_interpolation(parsed.presentation, parsed.fibers, case=name)
            bad = [r["fiber"] for r in recs if not r["pass"]]
            print(f"{name}: {len(recs) - len(bad)}/{len(recs)} fibers pass" + (f" (failed: {bad})" if bad else ""))
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {len(FIXTURES)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
