"""Load the compiled extension and exercise each binding once.

Build first with
    cargo build -p lcsc-py --features extension-module
then run
    python3 python/smoke_test.py
"""

import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "crates" / "core" / "tests" / "data"


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "liblcsc_py.so"
        if lib.exists():
            break
    else:
        sys.exit("liblcsc_py.so not found; build the lcsc-py crate first")
    tmp = pathlib.Path(tempfile.mkdtemp()) / "lcsc_py.so"
    shutil.copy(lib, tmp)
    spec = importlib.util.spec_from_file_location("lcsc_py", tmp)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    lcsc = load()
    fork = (DATA / "fork.json").read_text()

    report = json.loads(lcsc.analyze(fork))
    assert report["groupoid"]["units"] == 4 and report["groupoid"]["arrows"] == 8, report["groupoid"]
    assert json.loads(lcsc.validate(fork))["ok"] is True

    tight = json.loads(lcsc.filters(fork, tight=True, check_equivalences=True))
    assert len(tight["filters"]) == 4

    summary, dot = lcsc.groupoid(fork)
    assert dot.startswith("digraph") and "verdict" in json.loads(summary)

    zs = json.loads(lcsc.zs((DATA / "swap_system.json").read_text()))
    assert zs["checklist"]["all_hold"] is True

    assert lcsc.corpus(seed=7, n=5) == lcsc.corpus(seed=7, n=5)

    try:
        lcsc.analyze((DATA / "cyclic.json").read_text())
    except lcsc.LcscError as e:
        message, stage, code = e.args
        assert stage == "parse" and code == 2, e.args
    else:
        raise AssertionError("cyclic input without a depth bound must fail")

    try:
        lcsc.analyze(fork, cap=2)
    except lcsc.LcscError as e:
        assert e.args[1:] == ("semigroup", 3), e.args
    else:
        raise AssertionError("cap 2 must be exceeded")

    print(f"lcsc_py {lcsc.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
