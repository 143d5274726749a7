import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kgtext import build_graph

FIGURE1_TRIPLES = [
    ("Asser Levy Public Baths", "location", "New York City"),
    ("New York City", "country", "United States"),
    ("New York City", "is Part Of", "Manhattan"),
    ("Manhattan", "leader Name", "Cyrus Vance Jr."),
    ("Manhattan", "is Part Of", "New York"),
]

FIGURE1_LINEARIZED = (
    "[S | Asser Levy Public Baths, P | location, O | New York City, 1], "
    "[S | New York City, P | country, O | United States, 2], "
    "[S | New York City, P | is Part Of, O | Manhattan, 2], "
    "[S | Manhattan, P | leader Name, O | Cyrus Vance Jr., 3], "
    "[S | Manhattan, P | is Part Of, O | New York, 3]"
)


@pytest.fixture
def figure1_graph():
    return build_graph(FIGURE1_TRIPLES)
