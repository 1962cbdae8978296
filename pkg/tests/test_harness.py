import itertools
import json
import math
from fractions import Fraction

import pytest

from modlat.errors import ValidationError
from modlat.harness import build_config, read_config_file, run
from modlat.harness.cli import main
from modlat.numberfield import field_new
from modlat.residue import split_prime
from modlat.rogers import count_fixed_rank, gamma_radius
from modlat.zlattice import Scale


def cfg(kind, **kw):
    return build_config(kind, kw)


def exact_mean_rho(p, V):
    """E[rho] over all lines of k_P^2, K = Q(i): (A + q B) / (q + 1)."""
    K = field_new(4)
    P = split_prime(K, p)[0]
    r = P.zeta_image()[0]
    sigma = float(Scale.module(K.abs_disc, K.d, p, 1, 2).to_mpf(80))
    # Q(x) = 2 * |x|^2 on Z[i]^2; ball of volume V in R^4 has r^4 = 2V / pi^2
    bound = math.sqrt(2 * float(V)) / math.pi / sigma
    R = math.isqrt(int(bound / 2)) + 1
    A = B = 0
    for v in itertools.product(range(-R, R + 1), repeat=4):
        q = 2 * sum(x * x for x in v)
        if 0 < q <= bound:
            A += 1
            B += (v[0] + v[1] * r) % p == 0 and (v[2] + v[3] * r) % p == 0
    return Fraction(A + p * B, p + 1)


@pytest.mark.parametrize("p", [13, 101])
def test_first_moment_matches_exact_average(p):
    rep = run(cfg("first-moment", k=4, t=2, s=1, primes=str(p), V=40))
    (row,) = rep.summary
    assert row["mode"] == "exhaustive" and row["samples"] == p + 1
    assert row["mean_rho"] == pytest.approx(float(exact_mean_rho(p, 40)), rel=1e-12)
    assert row["divisible_fraction"] == 1.0


def test_first_moment_examples():
    single = run(cfg("first-moment", k=4, t=2, s=2, primes="13", V=10))
    assert len(single.records) == 1
    q = run(cfg("first-moment", k=1, t=2, s=1, primes="101", V=20))
    assert q.summary[0]["rel_error_mean"] < 0.15


def test_second_moment_small_volume():
    rep = run(cfg("moments", k=4, t=2, s=1, primes="13", V="1/1000"))
    assert rep.summary[0]["empirical_moment"] == 0


def test_svp_sanity_and_wiring():
    rep = run(cfg("svp", k=4, t=1, s=1, primes="13", samples=3, volumes="1,4"))
    for r in rep.records:
        assert 0 < r["ratio"] < math.inf
        sigma = float(Scale.module(4, 2, r["normQ"], 1, 1).to_mpf(80))
        assert r["lambda1"] == pytest.approx(math.sqrt(sigma * r["Qmin"]))
        assert r["ratio"] == pytest.approx(r["lambda1"] / (gamma_radius(2) * 4 ** 0.5))
    assert any("t=1" in f for f in rep.flags)


def test_rank_count_passthrough():
    rep = run(cfg("rank-count", k=1, t=3, n=2, m=1, T="2"))
    assert rep.records[0]["count"] == count_fixed_rank(field_new(1), 3, 2, 1, 2).count == 600


def test_norm_target_resolution():
    rep = run(cfg("construct", k=8, t=2, s=1, norm_target=100))
    assert rep.records[0]["p"] == 113  # first prime >= 100 congruent to 1 mod 8


@pytest.mark.parametrize(
    "kind,kw",
    [
        ("first-moment", dict(k=4, t=2, s=3, primes="13")),
        ("first-moment", dict(k=4, t=2, s=1)),
        ("moments", dict(k=5, t=2, s=1, primes="11")),
        ("rank-count", dict(k=1, t=2, n=2, m=1, T="3")),
        ("first-moment", dict(k=4, t=2, s=1, primes="15")),
        ("first-moment", dict(k=4, t=2, s=1, primes="13", bogus=1)),
        ("svp", dict(k=8, t=11, s=1, primes="17")),
    ],
)
def test_validation(kind, kw):
    with pytest.raises(ValidationError):
        cfg(kind, **kw)


def test_exhaustive_over_cap_is_rejected():
    with pytest.raises(ValidationError):
        run(cfg("first-moment", k=4, t=2, s=1, primes="997", mode="exhaustive", enum_cap=100))


def test_config_file_and_cli(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# a comment\nk = 4\nt: 2\ns = 1\np = 13\nV = 40\n")
    assert read_config_file(conf)["primes"] == "13"
    out = tmp_path / "r.json"
    assert main(["moments", "--config", str(conf), "--V", "20", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == "mll-report-v1"
    assert doc["config"]["V"] == "20" and "wall_clock" in doc
    assert all(r["rho"] % 4 == 0 for r in doc["records"])


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["split-prime", "--k", "4", "--p", "2"]) == 2
    assert main(["count-rank", "--k", "1", "--t", "3", "--n", "2", "--m", "1", "--T", "50", "--method", "brute"]) == 3
    assert main(["split-prime", "--k", "12", "--p", "13"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("# schema=mll-report-v1")
    header = [line for line in text.splitlines() if not line.startswith("#")][0]
    assert header.split(",") == ["k", "p", "index", "f", "normQ", "g", "count"]


def test_csv_has_no_execution_state(tmp_path):
    body1 = run(cfg("svp", k=4, t=2, s=1, primes="13,17", samples=6, jobs=1)).to_csv()
    assert "jobs" not in body1 and "wall_clock" not in body1


@pytest.mark.parametrize("kind,kw", [
    ("svp", dict(k=4, t=2, s=1, primes="13,17,29", samples=8)),
    ("first-moment", dict(k=4, t=2, s=1, primes="13", V=30)),
    ("first-moment", dict(k=8, t=2, s=1, primes="17", V=8, mode="sample", samples=10)),
])
def test_determinism_across_workers(kind, kw):
    bodies = {run(cfg(kind, jobs=j, **kw)).to_csv() for j in (1, 4, 8)}
    assert len(bodies) == 1


def test_seed_changes_samples():
    a = run(cfg("svp", k=4, t=2, s=1, primes="101", samples=5, seed=1)).to_csv()
    b = run(cfg("svp", k=4, t=2, s=1, primes="101", samples=5, seed=2)).to_csv()
    assert a != b
