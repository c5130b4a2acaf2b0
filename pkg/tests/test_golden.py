import pytest

from drinfeld.cli import dump
from drinfeld.suites import run_suite

from regen_fixtures import GOLDEN, path_for


@pytest.mark.parametrize("suite,q,N", GOLDEN, ids=[f"{s}-q{q}-N{n}" for s, q, n in GOLDEN])
def test_report_matches_golden(suite, q, N):
    assert dump(run_suite(suite, q, N)) == path_for(suite, q, N).read_text()
