"""Regenerate the golden reports under tests/fixtures (run by hand after a reviewed change)."""
from pathlib import Path

from drinfeld.cli import dump
from drinfeld.suites import run_suite

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = [
    ("aexp-vs-product", 2, 16), ("aexp-vs-product", 3, 27),
    ("serre", 2, 16), ("serre", 3, 18),
    ("jtilde-series", 3, 18), ("jtilde-series", 4, 16),
    ("delta-root", 2, 16), ("delta-root", 3, 24),
    ("theorem1", 2, 16), ("theorem1", 3, 24),
    ("dprod", 2, 16), ("dprod", 3, 24),
    ("alternating", 2, 16), ("alternating", 3, 24),
    ("weil-series", 2, 16), ("weil-series", 3, 24),
    ("det-torsion", 2, 16), ("det-torsion", 3, 24),
]


def path_for(suite, q, N):
    return FIXTURES / f"{suite}_q{q}_N{N}.json"


def main():
    FIXTURES.mkdir(exist_ok=True)
    for suite, q, N in GOLDEN:
        path_for(suite, q, N).write_text(dump(run_suite(suite, q, N)))


if __name__ == "__main__":
    main()
