from relclass import suites
from relclass.cli import main


def test_sigma_ranges_small():
    reps = suites.sigma_ranges(29, 120, cutoff=10**5)
    assert reps and all(r.passed for r in reps)
    assert {r.claim for r in reps} == {"sigma1_range", "sigma2_range", "sigma3_range", "sigma1_min_n"}


def test_fh_bounds_small_cutoff():
    reps = suites.fH_bounds(29, 60, cutoff=10**5)
    assert reps and all(r.passed for r in reps)


def test_every_suite_is_reachable_from_cli(capsys):
    small = {
        "n-parity": ["--pmax", "200"],
        "d1": ["--pmax", "200"],
        "d3": ["--pmax", "200"],
        "mean-square": ["--pmax", "60"],
        "bound-chain": ["--pmax", "40"],
        "fh-bounds": ["--pmin", "29", "--pmax", "40", "--cutoff", "100000"],
        "sigma-ranges": ["--pmin", "29", "--pmax", "40", "--cutoff", "100000"],
        "mv": ["--pmax", "20"],
    }
    for name in suites.SUITES:
        if name in ("asymptotics-d1", "prop1", "boundsc"):
            continue
        code = main(["verify", name, *small.get(name, [])])
        out = capsys.readouterr().out
        assert code == 0, (name, out)
        assert out.startswith(f"{name}:")
