import json

import pytest


@pytest.fixture(autouse=True)
def no_logging_setup(mocker):
    return mocker.patch("rankorder.log.LogConfig.setup")


@pytest.fixture
def physics_csv(write_csv):
    from rankorder import disciplines, generate

    params = disciplines.get("physics").params(200)
    series = generate.generate_synthetic(params, generate.NoiseSpec(sigma=0.01, seed=1))
    return write_csv("".join(f"{value!r}\n" for value in series.values))


def test_fit_beta_like(physics_csv, capsys):
    from rankorder import cli

    assert cli.main(["fit", physics_csv, "--model", "beta-like"]) == 0
    captured = capsys.readouterr()
    document = json.loads(captured.out)
    assert document["fit"]["model"] == "beta-like"
    assert document["fit"]["params"]["model"] == "beta-like"
    assert document["fit"]["r_squared"] >= 0.999
    assert document["series"]["n"] == 200
    assert captured.err.startswith("beta-like  K=0.02")
    assert "R²=" in captured.err


def test_fit_zipf_constant(write_csv, capsys):
    from rankorder import cli

    path = write_csv("5\n5\n5\n5\n5\n")
    assert cli.main(["fit", path, "--model", "zipf"]) == 0
    err = capsys.readouterr().err
    assert "alpha=0.0000" in err
    assert "R²=1.0000" in err


def test_fit_output_file(physics_csv, tmp_path, capsys):
    from rankorder import cli

    output = tmp_path / "report.json"
    assert cli.main(["fit", physics_csv, "-o", str(output)]) == 0
    captured = capsys.readouterr()
    assert captured.err == ""
    assert captured.out.startswith("beta-like")
    assert json.loads(output.read_text())["fit"]["n"] == 200
    assert output.read_bytes().endswith(b"}\n")


def test_missing_file(tmp_path, capsys):
    from rankorder import cli

    assert cli.main(["fit", str(tmp_path / "absent.csv")]) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "absent.csv" in captured.err


def test_empty_file(write_csv, capsys):
    from rankorder import cli

    assert cli.main(["compare", write_csv("")]) == 1
    assert capsys.readouterr().out == ""


def test_quiet_error(write_csv, capsys):
    from rankorder import cli

    assert cli.main(["compare", write_csv(""), "-q"]) == 1
    assert capsys.readouterr().err == ""


def test_compare(physics_csv, capsys):
    from rankorder import cli

    assert cli.main(["compare", physics_csv]) == 0
    captured = capsys.readouterr()
    document = json.loads(captured.out)
    comparison = document["comparison"]
    assert comparison["best_by_r2"] == "beta-like"
    assert comparison["nesting_ok"] is True
    assert [report["model"] for report in comparison["reports"]] == [
        "zipf",
        "mandelbrot",
        "lavalette",
        "beta-like",
    ]
    assert "beta-like *" in captured.err
    assert "nesting ok: yes" in captured.err


def test_compare_zipf_data(write_csv, capsys):
    from rankorder import cli, models

    series = models.curve(models.ZipfParams(k=10, alpha=0.8), n=30)
    path = write_csv("".join(f"{value!r}\n" for value in series.values))
    assert cli.main(["compare", path]) == 0
    comparison = json.loads(capsys.readouterr().out)["comparison"]
    assert comparison["best_by_r2"] == "zipf"
    assert comparison["nesting_ok"] is True


def test_generate_matches_curve(tmp_path, capsys):
    from rankorder import cli, models

    output = tmp_path / "physics.csv"
    argv = [
        "generate",
        "--model",
        "beta-like",
        "--k",
        "0.0273",
        "--a",
        "0.4058",
        "--b",
        "0.991",
        "--n",
        "100",
        "--sigma",
        "0",
        "--seed",
        "1",
        "-o",
        str(output),
    ]
    assert cli.main(argv) == 0
    lines = output.read_text().splitlines()
    assert len(lines) == 100
    expected = models.curve(models.BetaLikeParams(k=0.0273, a=0.4058, b=0.991, n=100))
    assert [float(line) for line in lines] == list(expected.values)


def test_generate_discipline(capsys):
    from rankorder import cli, disciplines, models

    assert cli.main(["generate", "--discipline", "Physics", "--n", "20"]) == 0
    values = [float(line) for line in capsys.readouterr().out.splitlines()]
    assert values == list(models.curve(disciplines.get("physics").params(20)).values)


def test_generate_zipf(capsys):
    from rankorder import cli

    argv = ["generate", "--model", "zipf", "--k", "6", "--alpha", "1", "--n", "3"]
    assert cli.main(argv) == 0
    assert capsys.readouterr().out == "6.0\n3.0\n2.0\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--k", "1", "--a", "1", "--b", "1", "--n", "0"],
        ["generate", "--k", "0", "--a", "1", "--b", "1", "--n", "10"],
        ["generate", "--k", "1", "--a", "1", "--n", "10"],
        ["generate", "--k", "1", "--a", "1", "--b", "1"],
        ["generate", "--discipline", "astrology", "--n", "10"],
        ["generate", "--model", "zipf", "--k", "1", "--alpha", "400", "--n", "10"],
        ["simulate", "--p-new", "1.5", "--steps", "10"],
        ["simulate", "--p-new", "0.5", "--steps", "0"],
        ["fit", "--model", "pareto", "x.csv"],
        ["fit", "x.csv", "--bogus"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    from rankorder import cli

    assert cli.main(argv) == 64
    assert capsys.readouterr().out == ""


def test_simulate_single_step(capsys):
    from rankorder import cli

    assert cli.main(["simulate", "--p-new", "0.3", "--steps", "1"]) == 0
    assert capsys.readouterr().out == "1\n"


def test_simulate_deterministic(tmp_path):
    from rankorder import cli

    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    for output in (first, second):
        argv = ["simulate", "--p-new", "0.2", "--steps", "2000", "--seed", "5"]
        assert cli.main([*argv, "-o", str(output)]) == 0
    assert first.read_bytes() == second.read_bytes()
    counts = [int(line) for line in first.read_text().splitlines()]
    assert sum(counts) == 2000


def test_plotdata_noiseless(write_csv, capsys):
    from rankorder import cli, disciplines, models

    series = models.curve(disciplines.get("chemistry").params(40))
    path = write_csv("".join(f"{value!r}\n" for value in series.values))
    assert cli.main(["plotdata", path]) == 0
    header, *rows = capsys.readouterr().out.splitlines()
    assert header.split("\t") == ["rank", "observed", "fitted", "log_residual"]
    assert len(rows) == 40
    for row in rows:
        _, observed, fitted, _ = row.split("\t")
        assert float(fitted) == pytest.approx(float(observed), rel=1e-8)


def test_plotdata_constant_log(write_csv, capsys):
    from rankorder import cli

    path = write_csv("2\n2\n2\n2\n2\n")
    assert cli.main(["plotdata", path, "--model", "zipf", "--log"]) == 0
    header, *rows = capsys.readouterr().out.splitlines()
    assert header.split("\t")[-3:] == ["log_rank", "log_observed", "log_fitted"]
    for row in rows:
        assert float(row.split("\t")[3]) == pytest.approx(0.0, abs=1e-12)


def test_compare_is_reproducible(tmp_path):
    from rankorder import cli

    fixture = tmp_path / "fixture.csv"
    argv = ["generate", "--discipline", "geosciences", "--n", "150"]
    assert cli.main([*argv, "--sigma", "0.1", "--seed", "42", "-o", str(fixture)]) == 0

    reports = []
    for name in ("first.json", "second.json"):
        output = tmp_path / name
        assert cli.main(["compare", str(fixture), "-o", str(output), "-q"]) == 0
        reports.append(output.read_bytes())
    assert reports[0] == reports[1]
    assert b"\r" not in reports[0]
    assert json.loads(reports[0])["input_digest"]


def _random_generate_args(rng):
    model = rng.choice(["zipf", "mandelbrot", "lavalette", "beta-like"])
    if model == "mandelbrot":
        params = {"rho": rng.uniform(-0.9, 5), "epsilon": rng.uniform(-0.5, 1)}
    else:
        params = {"k": rng.uniform(0.01, 100)}
        names = {"zipf": ["alpha"], "lavalette": ["b"], "beta-like": ["a", "b"]}
        params.update((name, rng.uniform(0, 2)) for name in names[model])
    argv = ["generate", "--model", str(model), "--n", str(int(rng.integers(4, 201)))]
    for name, value in params.items():
        argv += [f"--{name}", repr(float(value))]
    argv += ["--sigma", repr(float(rng.uniform(0, 0.5)))]
    argv += ["--seed", str(int(rng.integers(0, 2**32)))]
    return argv


def test_generated_series_are_compare_input(tmp_path, rng):
    from rankorder import cli

    data, output = tmp_path / "generated.csv", tmp_path / "comparison.json"
    for _ in range(25):
        argv = _random_generate_args(rng)
        assert cli.main([*argv, "-o", str(data)]) == 0
        assert cli.main(["compare", str(data), "-q", "-o", str(output)]) == 0, argv
        document = json.loads(output.read_text())
        assert document["series"]["n"] == int(argv[argv.index("--n") + 1])
        assert len(document["comparison"]["reports"]) == 4


def test_byte_order_mark(tmp_path, capsys):
    from rankorder import cli

    path = tmp_path / "exported.csv"
    path.write_bytes("\ufeff9.0\n5.0\n3.0\n2.0\n1.0\n".encode("utf-8"))
    assert cli.main(["fit", str(path), "--model", "zipf"]) == 0
    series = json.loads(capsys.readouterr().out)["series"]
    assert series["n"] == 5
    assert series["max"] == 9.0


@pytest.mark.parametrize(
    "text, argv, exit_code",
    [
        ("4\n0\n2\n", ["fit", "--zero-policy", "reject"], 1),
        ("1,4\n1,3\n3,2\n", ["fit", "--pre-ranked"], 1),
        ("4\n2\n1\n", ["fit", "--model", "beta-like"], 2),
        ("4\n2\n1\n", ["plotdata"], 2),
        ("4\nzero\n1\n", ["compare"], 1),
    ],
)
def test_error_exit_codes(text, argv, exit_code, write_csv, capsys):
    from rankorder import cli

    path = write_csv(text)
    assert cli.main([*argv, path]) == exit_code
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("rankorder: error:")


def test_drop_policy_warns(write_csv, capsys):
    from rankorder import cli

    path = write_csv("4\n0\n2\n1\n3\n")
    assert cli.main(["fit", path, "--model", "zipf"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["series"]["n"] == 4
    assert document["warnings"] == ["line 2: dropped non-positive value 0.0"]


def test_config_file(write_csv, tmp_path, capsys):
    from rankorder import cli

    config = tmp_path / "rankorder.toml"
    config.write_text('[ingest]\ndelimiter = ";"\n\n[log]\nquiet = true\n')
    path = write_csv("a;4\nb;2\nc;1\nd;0.5\n")
    assert cli.main(["fit", path, "--model", "zipf", "--config", str(config)]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["series"]["n"] == 4
    assert captured.err == ""


def test_flags_override_config_file(write_csv, tmp_path, capsys):
    from rankorder import cli

    config = tmp_path / "rankorder.toml"
    config.write_text('[ingest]\ndelimiter = ";"\n')
    path = write_csv("a\t4\nb\t2\nc\t1\n")
    argv = ["fit", path, "--model", "zipf", "--config", str(config)]
    assert cli.main([*argv, "--delimiter", "tab"]) == 0
    assert json.loads(capsys.readouterr().out)["series"]["n"] == 3


def test_bad_config_file(write_csv, tmp_path):
    from rankorder import cli

    config = tmp_path / "broken.toml"
    config.write_text("[ingest\n")
    assert cli.main(["fit", write_csv("2\n1\n1\n"), "--config", str(config)]) == 64


def test_disciplines(capsys):
    from rankorder import cli

    assert cli.main(["disciplines"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split("\t")[0] == "field"
    assert len(lines) == 12
    assert lines[1].startswith("physics\t0.0273\t0.9910\t0.4058")
    assert any(line.startswith("medicine/education\t") for line in lines)


def test_logging_level(write_csv, mocker):
    from rankorder import cli

    setup_logging = mocker.patch("rankorder.log.setup_logging")
    argv = ["fit", write_csv("3\n2\n1\n"), "--model", "zipf"]
    assert cli.main([*argv, "--log-level", "debug"]) == 0
    assert setup_logging.call_args_list == [
        mocker.call(level="WARNING"),
        mocker.call(level="DEBUG"),
    ]

    setup_logging.reset_mock()
    assert cli.main([*argv, "-q"]) == 0
    assert setup_logging.call_args_list[-1] == mocker.call(level="ERROR")


def test_version(capsys):
    from rankorder import __version__, cli

    with pytest.raises(SystemExit) as exc_info:
        cli.main(["--version"])
    assert exc_info.value.code == 0
    assert capsys.readouterr().out.strip() == __version__
