#!/usr/bin/env python3
"""Smoke test for the finlat_py extension module.

Builds nothing itself: run `cargo build -p finlat-py` (or --release) first.
The script locates the compiled cdylib, exposes it under the importable name
finlat_py, and exercises the main surface.
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libfinlat_py.so",
        ROOT / "target" / "debug" / "libfinlat_py.so",
        ROOT / "target" / "release" / "libfinlat_py.dylib",
        ROOT / "target" / "debug" / "libfinlat_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p finlat-py")
    stage = Path(tempfile.mkdtemp(prefix="finlat_py_"))
    shutil.copy2(built, stage / "finlat_py.so")
    sys.path.insert(0, str(stage))
    import finlat_py

    return finlat_py


def main():
    finlat = load_module()

    # chains: every element strongly irreducible and strongly hollow
    chain = finlat.Lattice.from_spec("chain:4")
    assert chain.is_total_order()
    assert all(chain.is_strongly_irreducible(p) for p in range(len(chain)))
    assert chain.si_spectrum() == [0, 1, 2]

    # M3: only top is SI, only bottom is SH, spectra empty
    m3 = finlat.Lattice.from_spec("M:3")
    assert not m3.is_distributive() and m3.is_modular()
    assert m3.si_spectrum() == [] and m3.sh_spectrum() == []
    profiles = m3.classify()
    si = [c["element"] for c in profiles if c["strongly_irreducible"]]
    sh = [c["element"] for c in profiles if c["strongly_hollow"]]
    assert si == [m3.top()] and sh == [m3.bottom()]

    # divisor lattice: verified closed basis, SI meet representation of 1
    d36 = finlat.Lattice.from_spec("divisor:36")
    basis = d36.closed_basis()
    assert basis["verified"] and basis["kind"] == "closed"
    reps = d36.meet_representations(d36.label_index("1"), kind="si")
    assert [[d36.label(p) for p in rep] for rep in reps] == [["4", "9"]]

    # characterization battery and the structural dichotomy
    d12 = finlat.Lattice.from_spec("divisor:12")
    four = d12.label_index("4")
    report = d12.characterization(four)
    assert report["omega_nonempty"] and report["cond_a"] == report["cond_e"]
    outcome = d12.dichotomy(four)
    assert "Witness" in outcome and outcome["Witness"]["uniform_verified"]

    # duality and JSON round trip
    n5 = finlat.Lattice.from_spec("N5")
    assert not n5.is_modular()
    assert finlat.Lattice.from_json(n5.to_json()).size() == 5

    # abelian groups: the Z4 x Z9 classification
    group = finlat.AbelianGroup([4, 9])
    assert group.invariant_factors() == [36]
    report = group.strongly_hollow()
    assert report["routes_agree"]
    orders = sorted(s["order"] for s in report["strongly_hollow"] if s["order"] > 1)
    assert orders == [2, 3, 4, 9], orders

    klein = finlat.AbelianGroup([2, 2])
    assert not klein.is_cyclic()
    assert klein.subgroup_lattice().size() == 5
    assert klein.hom_count(finlat.AbelianGroup([2])) == 4

    # localization and the randomized transfer battery
    loc = finlat.localization_correspondence(12, 2)
    assert loc["galois_laws"]["fg_identity"]
    assert loc["correspondence"]["si_equivalence_holds"]
    battery = finlat.transfer_battery(seed=3, count=25)
    assert battery["failures"] == []

    print("finlat_py smoke test passed")


if __name__ == "__main__":
    main()
