import json
from pathlib import Path

import pytest

import athena

FIXTURES = Path(__file__).resolve().parents[2] / "tests" / "fixtures"
ARCH_2X2 = "rows = 2\ncols = 2\nqubits_per_chip = 7\ncompute_fraction = 0.58\n"


def fixture(name):
    return (FIXTURES / name).read_text()


def test_epr_constants():
    assert 0.999 <= athena.epr_success_prob(0.125, 52) <= 0.9995
    assert abs(athena.epr_generation_latency_us() - 259.1) < 0.5


def test_compile_validates_and_keeps_teff_under_ees():
    circuit = athena.generate("qaoa-3reg", 16, seed=2)
    on = athena.compile(circuit, ARCH_2X2)
    off = athena.compile(circuit, ARCH_2X2, ees=False)
    assert on["metrics"]["t_eff"] == off["metrics"]["t_eff"]
    assert on["metrics"]["makespan_ns"] <= off["metrics"]["makespan_ns"]
    assert athena.validate(on["schedule_json"], circuit, ARCH_2X2) is None
    doc = json.loads(on["schedule_json"])
    assert doc["schema"] == 1
    assert len(doc["instructions"]) == len(on["instructions"])


def test_compile_is_deterministic():
    circuit = athena.generate("qft-like", 12)
    a = athena.compile(circuit, ARCH_2X2, scheduler="blockgreedy")
    b = athena.compile(circuit, ARCH_2X2, scheduler="blockgreedy")
    assert a["schedule_json"] == b["schedule_json"]
    assert a["stats_json"] == b["stats_json"]


def test_validator_reports_negatives():
    circuit = fixture("line3_circuit.json")
    arch = fixture("line3_arch.toml")
    kinds = {
        name: athena.validate(fixture(name + ".json"), circuit, arch)["kind"]
        for name in ("bad_capacity", "bad_dependency", "bad_nonlocal")
    }
    assert kinds == {
        "bad_capacity": "capacity",
        "bad_dependency": "dependency",
        "bad_nonlocal": "nonlocal_cnot",
    }


def test_oracle_bounds_schedulers():
    circuit = fixture("line3_circuit.json")
    arch = fixture("line3_arch.toml")
    best = athena.oracle(circuit, arch, mapper="trivial")["t_eff"]
    for scheduler in ("ums", "blockgreedy", "pergate"):
        got = athena.compile(circuit, arch, scheduler=scheduler, mapper="trivial")
        assert best <= got["metrics"]["t_eff"] + 1e-9


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        athena.compile("OPENQASM 2.0;\nqreg q[2];\ncx q[0], q[7];\n", ARCH_2X2, format="qasm")
    with pytest.raises(ValueError):
        athena.generate("ghz", 8)
