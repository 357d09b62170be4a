"""Smoke test for the compiled extension module.

Build first with `cargo build --release -p aloop-py`; the script loads
target/release/libaloop.so (or the path in ALOOP_EXT) directly.
"""

import importlib.machinery
import importlib.util
import os
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    default = ROOT / "target" / "release" / "libaloop.so"
    path = pathlib.Path(os.environ.get("ALOOP_EXT", default))
    loader = importlib.machinery.ExtensionFileLoader("aloop", str(path))
    spec = importlib.util.spec_from_loader("aloop", loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    aloop = load()

    q = aloop.terg(3, 1, 1)
    info = q.analyze()
    assert q.order == 27 and info["a_loop"] and not info["associative"]
    assert dict(info["element_orders"])[9] == 24

    q3 = aloop.qn(3)
    assert q3.nucleus_sizes() == [1, 8, 1, 1]
    assert q3.exponent() == 2

    same = aloop.Loop.from_aloop(q.to_aloop())
    assert same == q
    assert aloop.find_isomorphism(aloop.terg(3, 0, 1), aloop.terg(3, 0, 2)) is not None
    assert aloop.find_isomorphism(aloop.terg(3, 0, 0), aloop.terg(3, 1, 0)) is None

    eight = aloop.enumerate(8)
    assert len(eight) == 4 and all(l.is_a_loop() for l in eight)
    assert len(aloop.enumerate(8, center_nontrivial=True, exponent=2)) == 1
    assert [len(c) for c in aloop.classify_p3(3)] == [3, 1, 2, 3]
    assert len(aloop.cocycles(aloop.abelian([2, 2]), 2)) == 5

    try:
        aloop.terg(1, 0, 0)
    except ValueError as e:
        assert "invalid parameters" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("python smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
