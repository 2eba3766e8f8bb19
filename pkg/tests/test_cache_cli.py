"""Automorphism cache round trips and the command line front end."""

from __future__ import annotations

import json

import numpy as np
import pytest

from holo.automorphisms import automorphism_group
from holo.cache import (
    CACHE_ENV_VAR,
    cache_path,
    get_auts,
    load_aut,
    store_aut,
    verify_aut_rows,
)
from holo.cli import main
from holo.errors import CacheCorrupt
from holo.presentations import preset
from holo.repro import ReproCheck


def _rewrite(path, perms, meta):
    np.savez_compressed(path, perms=perms.astype(np.int32),
                        meta=np.array(meta))


def _read(path):
    with np.load(path, allow_pickle=False) as data:
        return np.asarray(data["perms"], dtype=np.int64), str(data["meta"])


# -- cache ------------------------------------------------------------------


def test_cache_round_trip(tmp_path, hp3):
    G, auts = hp3["G"], hp3["auts"]
    path = store_aut(G, auts, tmp_path)
    assert path == cache_path(tmp_path, G) and path.exists()
    loaded = load_aut(G, tmp_path)
    assert loaded.size == auts.size
    assert {tuple(map(int, p)) for p in loaded.perms} == {
        tuple(map(int, p)) for p in auts.perms}


def test_cache_miss_is_none(tmp_path, hp3):
    assert load_aut(hp3["G"], tmp_path) is None


def test_cache_keys_are_per_group(tmp_path, hp3):
    A = preset("abelian", factors=[9])
    assert cache_path(tmp_path, hp3["G"]) != cache_path(tmp_path, A)
    store_aut(hp3["G"], hp3["auts"], tmp_path)
    store_aut(A, automorphism_group(A), tmp_path)
    assert load_aut(A, tmp_path).size == 6
    assert load_aut(hp3["G"], tmp_path).size == hp3["auts"].size


def test_cache_rejects_garbage_bytes(tmp_path, hp3):
    G = hp3["G"]
    path = cache_path(tmp_path, G)
    path.write_bytes(b"not an archive")
    with pytest.raises(CacheCorrupt):
        load_aut(G, tmp_path)
    with pytest.warns(UserWarning, match="corrupt"):
        auts = get_auts(G, tmp_path)
    assert auts.size == hp3["auts"].size
    # the bad entry was replaced by the recomputation
    assert load_aut(G, tmp_path).size == auts.size


def test_cache_rejects_tampered_rows(tmp_path, hp3):
    G, auts = hp3["G"], hp3["auts"]
    path = store_aut(G, auts, tmp_path)
    perms, meta = _read(path)

    k = next(i for i in range(len(perms))
             if not np.array_equal(perms[i], np.arange(G.n)))
    broken = perms.copy()
    broken[k, [1, 2]] = broken[k, [2, 1]]  # bijective but not multiplicative
    _rewrite(path, broken, meta)
    with pytest.raises(CacheCorrupt):
        load_aut(G, tmp_path)

    dup = perms.copy()
    dup[1] = dup[2]
    _rewrite(path, dup, meta)
    with pytest.raises(CacheCorrupt, match="duplicate"):
        load_aut(G, tmp_path)

    wrong = json.loads(meta)
    wrong["hash"] = "0" * len(wrong["hash"])
    _rewrite(path, perms, json.dumps(wrong, sort_keys=True))
    with pytest.raises(CacheCorrupt, match="match"):
        load_aut(G, tmp_path)


def test_cache_trusts_completeness_to_the_hash(tmp_path, hp3):
    # a forged entry listing only a subgroup passes every local check;
    # completeness is vouched for by the table hash alone, so the cache
    # returns it. Deleting the entry restores the honest computation.
    G = hp3["G"]
    path = store_aut(G, hp3["auts"], tmp_path)
    _, meta = _read(path)
    small = json.loads(meta)
    small["size"] = 1
    _rewrite(path, np.arange(G.n)[None, :], json.dumps(small, sort_keys=True))
    assert get_auts(G, tmp_path).size == 1
    path.unlink()
    assert get_auts(G, tmp_path).size == hp3["auts"].size


def test_cache_env_var_default(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path))
    A = preset("abelian", factors=[9])
    auts = get_auts(A)
    assert auts.size == 6
    assert cache_path(tmp_path, A).exists()


def test_verify_aut_rows_direct(hp3):
    G, auts = hp3["G"], hp3["auts"]
    verify_aut_rows(G, auts.perms)
    bad = auts.perms.copy()
    bad[0] = np.roll(np.arange(G.n), 1)
    with pytest.raises(CacheCorrupt, match="identity"):
        verify_aut_rows(G, bad)
    with pytest.raises(CacheCorrupt, match="shape"):
        verify_aut_rows(G, auts.perms[:, :5])


# -- command line -----------------------------------------------------------


def _run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_cli_build(capsys):
    code, payload = _run_json(capsys, ["build", "--preset", "hp", "-p", "3"])
    assert code == 0
    g = payload["group"]
    assert g["order"] == 27 and g["center_order"] == 3
    assert g["class_le_two"] and not g["abelian"]
    assert len(g["generators"]) == 2


def test_cli_hc_abelian(capsys):
    code, payload = _run_json(
        capsys, ["hc", "--preset", "abelian", "--factors", "9"])
    assert code == 0
    assert payload["jc_count"] == 1 and payload["count"] == 1
    assert payload["members"][0]["trivial"]


def test_cli_tgroup_gp3(capsys, tmp_path):
    code, payload = _run_json(
        capsys, ["tgroup", "--preset", "gp", "-p", "3",
                 "--cache", str(tmp_path)])
    assert code == 0
    assert payload["jc_count"] == 9 and payload["hc_count"] == 6
    assert payload["t"]["order"] == 6 and payload["t"]["agl1p"] is True
    assert cache_path(tmp_path, preset("gp", p=3)).exists()


def test_cli_jc_both_strategies(capsys):
    code, payload = _run_json(
        capsys, ["jc", "--preset", "hp", "-p", "3", "--strategy", "both"])
    assert code == 0
    assert payload["count"] == 3 and payload["agreement"] is True
    assert payload["generic_count"] == 3
    for m in payload["members"]:
        assert "delta_values" in m and "gamma_aut_indices" in m
    assert sum(m["trivial"] for m in payload["members"]) == 1


def test_cli_jc_free_delta_strategy(capsys):
    code, payload = _run_json(
        capsys, ["jc", "--preset", "free", "-p", "3", "-n", "2",
                 "--strategy", "delta"])
    assert code == 0
    assert payload["count"] == 3
    # no automorphism listing on this path, so no index encoding
    assert all("gamma_aut_indices" not in m for m in payload["members"])
    assert all("delta_values" in m for m in payload["members"])


def test_cli_output_is_byte_identical(tmp_path, capsys):
    argv = ["jc", "--preset", "hp", "-p", "3"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b), "--json"]) == 0
    capsys.readouterr()
    assert json.loads(a.read_text()) == json.loads(b.read_text())
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_repro_abelian_suite(capsys):
    code, payload = _run_json(capsys, ["repro", "abelian"])
    assert code == 0
    assert payload["all_match"] is True
    assert payload["version"] == "1"
    assert {row["suite"] for row in payload["checks"]} == {"abelian"}
    assert all(row["match"] for row in payload["checks"])
    assert all("seconds" not in row for row in payload["checks"])


def test_cli_repro_timings_flag(capsys):
    code, payload = _run_json(
        capsys, ["repro", "big-delta-dim", "--timings"])
    assert code == 0
    assert all("seconds" in row for row in payload["checks"])


def test_cli_repro_mismatch_exit(capsys, monkeypatch):
    import holo.repro as repro

    monkeypatch.setitem(
        repro._SUITE_FNS, "abelian",
        lambda runs, include_p7: [
            ReproCheck("abelian", "forced", "forced failure", 1, 2)])
    code = main(["repro", "abelian"])
    captured = capsys.readouterr()
    assert code == 23
    assert json.loads(captured.out)["all_match"] is False
    assert "mismatch" in captured.err


@pytest.mark.parametrize("argv,code", [
    (["build", "--preset", "gp", "-p", "2"], 11),
    (["build", "--preset", "gp", "-p", "7", "--cap", "100"], 12),
    (["build", "--preset", "nosuch"], 13),
    (["build"], 10),
    (["repro", "nosuch"], 23),
])
def test_cli_exit_codes(capsys, argv, code):
    assert main(argv) == code
    assert "error:" in capsys.readouterr().err
