import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]
if str(ROOT / "src") not in sys.path:
    sys.path.insert(0, str(ROOT / "src"))

from fmbasis import corpus as corpus_mod  # noqa: E402


@pytest.fixture(scope="session")
def root():
    return ROOT


@pytest.fixture(scope="session")
def corpus():
    return corpus_mod.corpus()


@pytest.fixture(scope="session")
def heis2():
    return corpus_mod.heisenberg(2)


@pytest.fixture(scope="session")
def paper_basis(heis2):
    A = heis2.envelope
    return [
        A.parse_element(s)
        for s in ["1", "a", "b", "a*b", "a*b + c", "a*c", "b*c", "a*b*c"]
    ]
