import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def line45():
    from synchro import catalog

    return catalog.tutte_coxeter_line_graph()


@pytest.fixture(scope="session")
def group45():
    from synchro import catalog

    return catalog.pgammal_2_9_on_line_graph()
