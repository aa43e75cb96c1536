import numpy as np
import pytest

from ptep.eplocus import (
    EXACT_CAP, decoupled_at, ep_cascade, ep_params, inner_block_is_ep, inner_block_z, lemma4_check,
    near_ep, verify_ep_identity,
)
from ptep.errors import ExactCapExceededError, InvalidDimensionError, NotEpTimeError, PTEPError
from ptep.jordan import jordan_chain_block
from ptep.model import ZParams, build_hamiltonian, extract_blocks, partition, z_of_t
from ptep.spectra import classify, eigenvalues


@pytest.mark.parametrize("n, z", [(8, (7, 12, 15, 16)), (4, (3, 4)), (2, (1,))])
def test_ep_params(n, z):
    assert ep_params(n).z == z


def test_ep_params_invalid():
    with pytest.raises(InvalidDimensionError):
        ep_params(5)


@pytest.mark.parametrize("n", range(2, 25, 2))
def test_ep_identity_holds_exactly(n):
    rep = verify_ep_identity(n)
    assert rep.holds
    assert rep.coeffs == (0,) * n + (1,)


def test_ep_identity_n64_within_cap():
    assert verify_ep_identity(64).holds


def test_ep_identity_cap():
    with pytest.raises(ExactCapExceededError):
        verify_ep_identity(66)
    assert verify_ep_identity(66, cap=66).holds


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_single_coupling_shift_breaks_identity(n):
    base = list(ep_params(n).z)
    for k in range(len(base)):
        for d in (-1, 1):
            z = base.copy()
            z[k] += d
            assert not verify_ep_identity(n, z=ZParams(n, tuple(z))).holds


@pytest.mark.parametrize("n, times, orders", [
    (8, (0, 7, 12, 15, 16), (8, 6, 4, 2, 0)),
    (4, (0, 3, 4), (4, 2, 0)),
    (2, (0, 1), (2, 0)),
])
def test_cascade(n, times, orders):
    c = ep_cascade(n)
    assert c.times == times and c.orders == orders


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12, 16])
def test_cascade_invariants(n):
    c = ep_cascade(n)
    assert all(a < b for a, b in zip(c.times, c.times[1:]))
    assert c.orders[0] == n and c.orders[-1] == 0 and c.times[-1] == (n // 2) ** 2
    for t in c.times[1:]:
        assert decoupled_at(n, t)


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_cascade_spectral_and_chain(n):
    c = ep_cascade(n)
    for t, order in zip(c.times, c.orders):
        if order == 0:
            continue
        s = classify(eigenvalues(build_hamiltonian(z_of_t(n, t))))
        assert any(cl.center == 0 and cl.multiplicity == order for cl in s.clusters)
        h = build_hamiltonian(z_of_t(n, t))
        p = partition(h.params)
        block = extract_blocks(h, p)[1] if not p.coupled else h.dense()
        jordan_chain_block(block, 0.0)


@pytest.mark.parametrize("j, n", [(2, 8), (4, 8), (2, 4)])
def test_lemma4_check_examples(j, n):
    assert lemma4_check(j, n)


def test_lemma4_check_all_up_to_64():
    assert all(lemma4_check(j, n) for n in range(4, 65, 2) for j in range(2, n // 2 + 1))


@pytest.mark.parametrize("j, n", [(1, 8), (5, 8), (2, 2)])
def test_lemma4_check_out_of_range(j, n):
    with pytest.raises(PTEPError):
        lemma4_check(j, n)


@pytest.mark.parametrize("t, inner", [(7, (5, 8, 9)), (12, (3, 4)), (15, (1,)), (0, (7, 12, 15, 16))])
def test_inner_block(t, inner):
    assert inner_block_z(8, t) == inner
    assert inner_block_is_ep(8, t)


def test_inner_block_requires_ep_time():
    with pytest.raises(NotEpTimeError):
        inner_block_is_ep(8, 5)
    with pytest.raises(NotEpTimeError):
        inner_block_is_ep(8, 16)


def test_near_ep_float_check():
    assert near_ep(build_hamiltonian(z_of_t(8, 0)), 8)
    assert near_ep(build_hamiltonian(z_of_t(8, 7)), 6)
    assert not near_ep(build_hamiltonian(z_of_t(8, 0.5)), 8)
    assert not near_ep(build_hamiltonian(z_of_t(8, 9.0)), 4)
