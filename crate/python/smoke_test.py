#!/usr/bin/env python3
"""Smoke test for the hv_py extension module.

Build the extension first:

    cargo build -p hv-python --release   (or without --release)

then run this script from anywhere inside the repository:

    python3 python/smoke_test.py
"""

import pathlib
import shutil
import sys
import sysconfig
import tempfile


def locate_extension():
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / "release" / "libhv_py.so",
        root / "target" / "debug" / "libhv_py.so",
        root / "target" / "release" / "libhv_py.dylib",
        root / "target" / "debug" / "libhv_py.dylib",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("build the extension first: cargo build -p hv-python --release")
    return max(built, key=lambda p: p.stat().st_mtime)


def import_hv_py():
    lib = locate_extension()
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    staging = pathlib.Path(tempfile.mkdtemp(prefix="hv_py_"))
    shutil.copy2(lib, staging / f"hv_py{suffix}")
    sys.path.insert(0, str(staging))
    import hv_py

    return hv_py


def main():
    hv = import_hv_py()

    # Lie bracket with a central term
    assert hv.bracket("L[2]", "L[-2]") == "-4*L[0] + 1/2*z1"
    assert hv.bracket("I[3]", "I[-3]") == "3*z3"
    assert hv.bracket("z1", "L[5]") == "0"

    # PBW normal ordering
    assert hv.normalize("L[1]*L[-1]") == "L[-1]*L[1] - 2*L[0]"
    assert hv.normalize("I[1]*I[-1]*L[0]") == "L[0]*I[-1]*I[1] + z3*L[0]"

    # reduced module with nonsingular psi: the Whittaker space is a line
    ctx = hv.Context(
        psi=("2", "3", "5"),
        xi=("1", "1", "1", "1"),
        module="reduced",
        degree=4,
        l0=4,
    )
    assert ctx.solve() == ["w"]

    # dot action and descent
    assert ctx.defect("L[1]", "L[-1]*w") == "-2*L[0]*w"
    trace, scalar = ctx.descend("L[-1]*w")
    assert trace == ["I[2]"] and scalar == "-10"

    # local nilpotency
    assert ctx.nilpotency_index("L[1]", "L[-1]*w") == 3

    # membership with a witness: [L_1, I_-1] = -I_0 acts by -xi_0 here,
    # so w = 2*(I[-1]*w) - L[1]*(I[-1]*w)
    witness = ctx.member("w", ["I[-1]*w"])
    assert witness == [("2", "g0"), ("-1", "L[1].g0")]

    # degree statistics
    assert ctx.maxdeg("L[-2]*I[-1]*w") == 3
    assert ctx.maxdeg("0") is None

    # universal module: the Whittaker space is polynomials in the centrals
    uni = hv.Context(module="universal", degree=2, l0=2, zdeg=1)
    sols = uni.solve()
    assert sols == ["w", "z0*w", "z1*w", "z2*w", "z3*w"]
    assert uni.verify("3.1") == (12, 0)

    # central evaluation lands in the reduced module
    seven = hv.Context(xi=("7", "0", "0", "0"), module="universal")
    assert seven.reduce("z0*w") == "7*w"

    # singular psi with psi(I1) = 0: the cyclic vector stays unreachable
    sing = hv.Context(
        psi=("2", "3", "0"),
        xi=("0", "1", "0", "0"),
        module="reduced",
        degree=4,
        l0=4,
        gen_index=3,
    )
    assert sing.member("w", ["I[-1]*w", "I[-2]*w"]) is None

    print("smoke test ok")


if __name__ == "__main__":
    main()
