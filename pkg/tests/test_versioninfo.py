from __future__ import annotations

import json
import re

import pytest

from mathrepro import __version__
from mathrepro.env import DependencySpec, ManifestFile, collect_versioninfo
from mathrepro.env.versioninfo import UNKNOWN, build_id, probe_cpu, probe_memory


def test_brief_report():
    r = collect_versioninfo()
    text = r.format()
    assert text.splitlines()[0] == f"mathrepro version {__version__}"
    assert "Dependencies" not in text
    assert re.fullmatch(r"[0-9a-f]{64}", r.build_id)
    assert r.memory_total == UNKNOWN


def test_full_report_lists_manifest():
    m = ManifestFile((DependencySpec("Zed", "00000000-0000-4000-8000-000000000001", "1.2.3", "ab" * 32),))
    r = collect_versioninfo("full", m)
    text = r.format()
    assert "Memory:" in text
    assert "  Zed 1.2.3 [00000000-0000-4000-8000-000000000001] " + "ab" * 32 in text
    d = r.to_dict()
    assert d["dependencies"][0]["name"] == "Zed"
    assert json.loads(json.dumps(d)) == d


def test_full_without_manifest():
    assert "  (none)" in collect_versioninfo("full").format()


def test_bad_verbosity():
    with pytest.raises(ValueError):
        collect_versioninfo("loud")


def test_probes_fall_back_to_unknown(tmp_path, monkeypatch):
    monkeypatch.setattr("platform.processor", lambda: "")
    assert probe_cpu(tmp_path / "missing")[0] == UNKNOWN
    (tmp_path / "cpuinfo").write_text("processor\t: 0\nmodel name\t: Test CPU 9000\n")
    assert probe_cpu(tmp_path / "cpuinfo")[0] == "Test CPU 9000"
    (tmp_path / "meminfo").write_text("MemTotal:       1024 kB\n")
    assert probe_memory(tmp_path / "meminfo") == 1024 * 1024


def test_build_id_is_stable():
    assert build_id() == build_id()
