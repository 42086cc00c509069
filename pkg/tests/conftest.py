import pytest

from p5tensor import compute_record, validate


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False,
        help="run the slow full-enumeration sweeps",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def records():
    """Validated invariant records, computed once per (family, prime).

    Several test modules walk the same rows; building a group and taking
    its census is the expensive part, so share the results session-wide.
    """
    cache = {}

    def get(family, p, **params):
        key = (str(family), p, tuple(sorted(params.items())))
        if key not in cache:
            rec = compute_record(str(family), p, dict(params) or None)
            validate(rec)
            cache[key] = rec
        return cache[key]

    return get
