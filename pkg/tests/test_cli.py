import subprocess
import sys

import pytest

SEED_A = "00" * 40
SEED_B = "01" * 40


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "hqc128.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


@pytest.fixture()
def keypair(tmp_path):
    pk = tmp_path / "pk.bin"
    sk = tmp_path / "sk.bin"
    res = run_cli("keygen", "--seed", SEED_A, "--out-pk", str(pk), "--out-sk", str(sk))
    assert res.returncode == 0, res.stderr
    return pk, sk


def test_keygen_writes_sized_files(keypair):
    pk, sk = keypair
    assert pk.stat().st_size == 2249
    assert sk.stat().st_size == 2289


def test_keygen_deterministic_files(tmp_path, keypair):
    pk1, sk1 = keypair
    pk2 = tmp_path / "pk2.bin"
    sk2 = tmp_path / "sk2.bin"
    res = run_cli("keygen", "--seed", SEED_A, "--out-pk", str(pk2), "--out-sk", str(sk2))
    assert res.returncode == 0
    assert pk1.read_bytes() == pk2.read_bytes()
    assert sk1.read_bytes() == sk2.read_bytes()


def test_keygen_reports_sizes(tmp_path):
    res = run_cli(
        "keygen", "--seed", SEED_A,
        "--out-pk", str(tmp_path / "p"), "--out-sk", str(tmp_path / "s"),
    )
    assert "2249" in res.stdout and "2289" in res.stdout


def test_keygen_usage_errors(tmp_path):
    res = run_cli("keygen", "--out-sk", str(tmp_path / "s"))  # missing --out-pk
    assert res.returncode == 2
    res = run_cli(
        "keygen", "--seed", "abcd",
        "--out-pk", str(tmp_path / "p"), "--out-sk", str(tmp_path / "s"),
    )
    assert res.returncode == 2


def test_encaps_decaps_roundtrip(tmp_path, keypair):
    pk, sk = keypair
    ct = tmp_path / "ct.bin"
    ss1 = tmp_path / "ss1.bin"
    ss2 = tmp_path / "ss2.bin"
    res = run_cli("encaps", "--pk", str(pk), "--coins", SEED_B,
                  "--out-ct", str(ct), "--out-ss", str(ss1))
    assert res.returncode == 0, res.stderr
    assert ct.stat().st_size == 4482
    assert ss1.stat().st_size == 64
    res = run_cli("decaps", "--sk", str(sk), "--ct", str(ct), "--out-ss", str(ss2))
    assert res.returncode == 0, res.stderr
    assert ss1.read_bytes() == ss2.read_bytes()


def test_decaps_rejects_corrupt_ciphertext(tmp_path, keypair):
    pk, sk = keypair
    ct = tmp_path / "ct.bin"
    ss = tmp_path / "ss.bin"
    run_cli("encaps", "--pk", str(pk), "--coins", SEED_B,
            "--out-ct", str(ct), "--out-ss", str(ss))
    blob = bytearray(ct.read_bytes())
    blob[10] ^= 0x40
    ct.write_bytes(bytes(blob))
    res = run_cli("decaps", "--sk", str(sk), "--ct", str(ct),
                  "--out-ss", str(tmp_path / "ss3.bin"))
    assert res.returncode == 4


def test_malformed_pk_length_exits_2(tmp_path):
    short = tmp_path / "pk.bin"
    short.write_bytes(b"\x00" * 2248)
    res = run_cli("encaps", "--pk", str(short), "--coins", SEED_B,
                  "--out-ct", str(tmp_path / "ct"), "--out-ss", str(tmp_path / "ss"))
    assert res.returncode == 2


def test_missing_input_file_exits_3(tmp_path):
    res = run_cli("encaps", "--pk", str(tmp_path / "absent.bin"), "--coins", SEED_B,
                  "--out-ct", str(tmp_path / "ct"), "--out-ss", str(tmp_path / "ss"))
    assert res.returncode == 3


def test_hex_mode_roundtrip(tmp_path):
    pk = tmp_path / "pk.hex"
    sk = tmp_path / "sk.hex"
    ct = tmp_path / "ct.hex"
    ss1 = tmp_path / "ss1.hex"
    ss2 = tmp_path / "ss2.hex"
    assert run_cli("keygen", "--seed", SEED_A, "--out-pk", str(pk),
                   "--out-sk", str(sk), "--hex").returncode == 0
    text = pk.read_text().strip()
    assert len(text) == 2 * 2249
    assert text == text.lower()
    assert run_cli("encaps", "--pk", str(pk), "--coins", SEED_B, "--out-ct", str(ct),
                   "--out-ss", str(ss1), "--hex").returncode == 0
    assert run_cli("decaps", "--sk", str(sk), "--ct", str(ct),
                   "--out-ss", str(ss2), "--hex").returncode == 0
    assert ss1.read_text() == ss2.read_text()


def test_kat_generate_and_verify(tmp_path):
    kat = tmp_path / "kat.txt"
    res = run_cli("kat", "--count", "5", "--seed", SEED_A, "--out", str(kat))
    assert res.returncode == 0
    content = kat.read_text()
    assert content.count("count = ") == 5
    assert content.count("ss = ") == 5
    res = run_cli("kat-verify", "--in", str(kat))
    assert res.returncode == 0
    assert res.stdout.count("PASS") == 5


def test_kat_hundred_records(tmp_path):
    kat = tmp_path / "kat100.txt"
    res = run_cli("kat", "--count", "100", "--seed", SEED_B, "--out", str(kat))
    assert res.returncode == 0
    records = [b for b in kat.read_text().split("\n\n") if b.startswith("count")]
    assert len(records) == 100
    for i, block in enumerate(records):
        lines = block.splitlines()
        assert lines[0] == f"count = {i}"
        names = [line.split(" = ")[0] for line in lines]
        assert names == ["count", "seed", "pk", "sk", "ct", "ss"]
        values = dict(line.split(" = ") for line in lines[1:])
        assert len(values["seed"]) == 2 * 40
        assert len(values["pk"]) == 2 * 2249
        assert len(values["sk"]) == 2 * 2289
        assert len(values["ct"]) == 2 * 4482
        assert len(values["ss"]) == 2 * 64


def test_kat_verify_flags_tampered_record(tmp_path):
    kat = tmp_path / "kat.txt"
    run_cli("kat", "--count", "3", "--seed", SEED_A, "--out", str(kat))
    lines = kat.read_text().splitlines()
    for i, line in enumerate(lines):
        if line.startswith("ss = "):
            digit = line[5]
            replacement = "0" if digit != "0" else "1"
            lines[i] = "ss = " + replacement + line[6:]
            break
    kat.write_text("\n".join(lines) + "\n")
    res = run_cli("kat-verify", "--in", str(kat))
    assert res.returncode == 1
    assert "FAIL" in res.stdout
    assert res.stdout.count("PASS") == 2


def test_kat_count_must_be_positive(tmp_path):
    res = run_cli("kat", "--count", "0", "--seed", SEED_A,
                  "--out", str(tmp_path / "k.txt"))
    assert res.returncode == 2


def test_bench_runs_and_rejects_zero_iters(tmp_path):
    res = run_cli("bench", "--iters", "2")
    assert res.returncode == 0
    for phase in ("keygen", "encaps", "decaps"):
        assert f"{phase}.mean_ms=" in res.stdout
        assert f"{phase}.median_ms=" in res.stdout
    assert run_cli("bench", "--iters", "0").returncode == 2


def test_profile_command(tmp_path):
    res = run_cli("profile", "--phase", "decaps")
    assert res.returncode == 0
    assert "rm_blocks_decoded" in res.stdout
    assert "decaps.rs_rm=" in res.stdout


def test_costmodel_no_flags_prints_baselines():
    res = run_cli("costmodel")
    assert res.returncode == 0
    assert "keygen.total=5609000" in res.stdout
    assert "encaps.total=13850000" in res.stdout
    assert "decaps.total=19903000" in res.stdout


def test_costmodel_all_prints_improvements():
    res = run_cli("costmodel", "--all")
    assert res.returncode == 0
    assert "formula sheet" in res.stdout
    assert "dma_factor" in res.stdout
    for phase in ("keygen", "encaps", "decaps"):
        assert f"{phase}.total=" in res.stdout
