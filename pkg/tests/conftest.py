import pytest

from wnc.construct import build_text
from wnc.theorems import build_corpus, default_corpus, run_suite


@pytest.fixture(scope="session")
def rings():
    """Shared rings, built once; tables are immutable so sharing is safe."""
    labels = [
        "Z(2)", "Z(3)", "Z(4)", "Z(5)", "Z(6)", "Z(8)", "Z(9)", "Z(12)",
        "M2(Z(2))", "M2(Z(3))", "T2(Z(2))", "T2(Z(3))",
        "eqdiag2(Z(2))", "eqdiag2(Z(6))", "skew(Z(6),id,2)",
    ]
    return {label: build_text(label) for label in labels}


@pytest.fixture(scope="session")
def corpus_entries():
    return build_corpus(default_corpus())


@pytest.fixture(scope="session")
def suite_cells(corpus_entries):
    return run_suite(corpus_entries)
