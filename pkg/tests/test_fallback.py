"""The pure-Python kernel path must agree with the compiled one."""

import json
import os
import subprocess
import sys

import pytest

from almostkneser import _accel

SCRIPT = """
import json
from almostkneser import _accel
from almostkneser.core import Params
from almostkneser.search import SearchConfig, max_family
out = {"backend": _accel.backend_name(), "runs": []}
for n, k, t, s, nti in [(4, 2, 1, 1, True), (6, 2, 1, 3, True), (5, 3, 2, 1, True), (6, 2, 1, 1, False)]:
    r = max_family(SearchConfig(Params(n, k, t, s), require_not_t_intersecting=nti))
    out["runs"].append([r.max_size, [str(c) for c in r.canonical_classes], r.stats["nodes"]])
print(json.dumps(out))
"""


def _run(disable: bool) -> dict:
    env = dict(os.environ)
    env["KNS_DISABLE_NUMBA"] = "1" if disable else "0"
    proc = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True,
                          text=True, check=True, timeout=300)
    return json.loads(proc.stdout)


def test_env_flag_selects_backend():
    assert _run(True)["backend"] == "python"


@pytest.mark.skipif(not _accel.USING_NUMBA, reason="numba not active in this interpreter")
def test_fallback_matches_numba():
    py, nb = _run(True), _run(False)
    assert nb["backend"].startswith("numba")
    # same tree, same answers, same node counts
    assert py["runs"] == nb["runs"]
