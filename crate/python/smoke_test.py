"""Smoke test for the pydecaylab extension module.

Build first with
    cargo build --release -p pydecaylab --features extension-module
then run
    python3 python/smoke_test.py [path/to/libpydecaylab.so]
"""

import importlib.util
import json
import math
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def load(path):
    spec = importlib.util.spec_from_file_location("pydecaylab", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    path = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "target" / "release" / "libpydecaylab.so"
    lab = load(path)

    sg = lab.DiagonalSemigroup(n_max=10000)
    k = sg.weiss(2.0, a=0.5)["K_exact"]
    assert 0.49 <= k <= 0.5, k

    ts = [10.0 * 1.05**j for j in range(80)]
    fit = lab.fit_decay(sg.decay_curve(ts, a=1.0), "poly")
    assert abs(fit["alt_inv_alpha"] - 1.0) < 1e-2, fit

    adm = sg.l2_admissibility(a=0.6)
    w = sg.weiss(2.0, a=0.6)
    assert math.isclose(adm["M_exact"], 2.0 * w["K_exact"] ** 2, rel_tol=1e-12)

    cert = lab.certificate(0.75, 1.0, 2.0 * math.exp(1.5), 1.0, 1.0, lambda tau: tau)
    assert cert["M_adm"] > cert["M_ft"] > 0.0

    try:
        lab.certificate(0.4, 1.0, 10.0, 1.0, 1.0, lambda tau: 1.0)
    except lab.DecaylabError as err:
        assert "hypothesis" in str(err)
    else:
        raise AssertionError("beta = 0.4 accepted")

    code, out, _ = lab.run_cli(["example33", "--nmax", "1000"])
    assert code == 0
    report = json.loads(out)
    assert len(report["inputs_digest"]) == 64

    print("pydecaylab smoke test passed")


if __name__ == "__main__":
    main()
