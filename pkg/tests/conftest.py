import pytest

from ringlab.rings import realize
from ringlab.specs import parse_ring_spec

_CACHE: dict[str, object] = {}


@pytest.fixture
def ring():
    """Realize-and-cache helper: ring("Z/4") -> FiniteRing."""
    def _get(spec: str, max_order: int = 65536):
        key = f"{spec}|{max_order}"
        if key not in _CACHE:
            _CACHE[key] = realize(parse_ring_spec(spec), max_order)
        return _CACHE[key]
    return _get
