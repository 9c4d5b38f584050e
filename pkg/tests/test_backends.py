import random

import pytest

from ted import distance, gen_balanced, gen_comb, gen_comb_mirror, gen_random, gen_zigzag
from ted.backend import compiled_available, default_backend, get_backend

pytestmark = pytest.mark.skipif(not compiled_available(), reason="compiled kernel not built")


def pairs():
    rng = random.Random(21)
    for i in range(150):
        f = gen_random(rng.randint(0, 35), i, rng.randint(1, 5), ("a", "b"))
        g = gen_random(rng.randint(0, 35), i + 1000, rng.randint(1, 5), ("a", "b", "c"))
        yield f, g
    yield gen_comb(32), gen_comb_mirror(32)
    yield gen_balanced(4), gen_balanced(3)
    yield gen_zigzag(16), gen_comb(14)


@pytest.mark.parametrize("algorithm", ["sz", "klein", "dmrw"])
def test_identical_memo_tables(algorithm):
    for f, g in pairs():
        py = distance(f, g, None, algorithm, backend="python")
        cc = distance(f, g, None, algorithm, backend="compiled")
        assert py.cost == cc.cost
        assert py.stats == cc.stats
        keys = py.memo_keys()
        assert keys == cc.memo_keys()
        for k in list(keys)[:200]:
            assert py._memo.lookup(*k) == cc._memo.lookup(*k)


def test_missing_keys():
    f, g = gen_comb(8), gen_comb_mirror(8)
    memo = distance(f, g, backend="compiled")._memo
    assert (0, 0, 0, 0) in memo and (8, 0, 8, 0) in memo
    assert (8, 3, 0, 0) not in memo
    assert memo.lookup(8, 3, 0, 0) is None


def test_backend_selection(monkeypatch):
    assert get_backend("python").name == "python"
    assert get_backend("compiled").name == "compiled"
    monkeypatch.delenv("TED_PURE_PYTHON", raising=False)
    assert default_backend().name == "compiled"
    monkeypatch.setenv("TED_PURE_PYTHON", "1")
    assert default_backend().name == "python"
    with pytest.raises(ValueError):
        get_backend("fortran")
