import subprocess

import pytest

SPECTRA = "0,2,4;0,1,6,9"


def run_generator(args):
    proc = subprocess.run(["meesgen", *args], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def cli_outputs(tmp_path_factory):
    """Real generator CLI outputs rendered against in the tests."""
    out = tmp_path_factory.mktemp("cli")
    run_generator(
        [
            "montecarlo", "--spectra", SPECTRA, "--approach", "simple",
            "--seed", "0", "--count", "20000", "--bins", "24", "--out-dir", str(out),
        ]
    )
    run_generator(
        ["scan", "--spectra", SPECTRA, "--points", "30", "--out-dir", str(out)]
    )
    return out


@pytest.fixture(scope="session")
def mismatched_histogram(tmp_path_factory):
    """Same approach, different bin count: geometry-mismatch material."""
    out = tmp_path_factory.mktemp("cli_other")
    run_generator(
        [
            "montecarlo", "--spectra", SPECTRA, "--approach", "simple",
            "--seed", "0", "--count", "5000", "--bins", "16", "--out-dir", str(out),
        ]
    )
    return out / "scatter_simple_eexp.csv"
