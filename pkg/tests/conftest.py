import pytest


@pytest.fixture
def log_output():
    from structlog import testing

    return testing.LogCapture()


@pytest.fixture(autouse=True)
def configure_structlog(log_output):
    import structlog

    structlog.configure(processors=[log_output])
    yield
    structlog.reset_defaults()


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20070101)


@pytest.fixture(params=["physics", "mathematics"])
def table_row(request):
    from rankorder import disciplines

    return disciplines.get(request.param)


@pytest.fixture
def write_csv(tmp_path):
    def write(text, name="series.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
