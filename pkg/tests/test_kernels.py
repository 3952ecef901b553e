import numpy as np
import pytest

from coxwalk import affine as af
from coxwalk._kernels import HAVE_NUMBA, VARIANTS, numba_enabled, run_walks
from coxwalk.roots import build_root_system
from coxwalk.walker import tables
from coxwalk.weyl import weyl_group

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("tag", ["A1", "A2", "B2", "G2", "A3", "C3"])
@pytest.mark.parametrize("variant", sorted(VARIANTS))
def test_numba_matches_numpy(tag, variant):
    t = tables(build_root_system(tag))
    U = np.random.Generator(np.random.PCG64(1)).random((64, 80))
    a = run_walks(t, VARIANTS[variant], U, record=True, backend="numpy")
    b = run_walks(t, VARIANTS[variant], U, record=True, backend="numba")
    for x, y in zip(a, b):
        assert np.array_equal(x, y)


@pytest.mark.parametrize("tag", ["A2", "B2", "A3"])
@pytest.mark.parametrize("variant", sorted(VARIANTS))
def test_replay_invariants(tag, variant):
    """Replaying the recorded generators through the scalar affine code
    reproduces the endpoint, and each step obeys the variant's rule."""
    rs = build_root_system(tag)
    t = tables(rs)
    G = weyl_group(rs)
    steps = 40
    U = np.random.Generator(np.random.PCG64(2)).random((8, steps))
    W, L, gens, types = run_walks(t, VARIANTS[variant], U, record=True,
                                  backend="numpy")
    delayed = "delayed" in variant
    grass = "grassmannian" in variant
    for r in range(len(U)):
        x = af.identity(rs)
        for k in range(steps):
            g = int(gens[r, k])
            if g < 0:
                assert delayed
            else:
                y, up = af.left_mul_gen(x, g)
                assert up
                if grass:
                    assert af.is_affine_grassmannian(y)
                x = y
            assert types[r, k + 1] == x.w.index
        assert G[W[r]] == x.w
        assert tuple(L[r]) == x.lam
        if not delayed:
            assert x.length() == steps


def test_env_flag(monkeypatch):
    monkeypatch.setenv("COXWALK_DISABLE_NUMBA", "1")
    assert not numba_enabled()
    monkeypatch.setenv("COXWALK_DISABLE_NUMBA", "0")
    assert numba_enabled() == HAVE_NUMBA
    monkeypatch.delenv("COXWALK_DISABLE_NUMBA")
    assert numba_enabled() == HAVE_NUMBA


def test_unknown_backend():
    t = tables(build_root_system("A2"))
    with pytest.raises(ValueError):
        run_walks(t, 0, np.zeros((1, 1)), backend="cuda")
