"""Compiled and numpy sweep kernels must make identical decisions."""

import numpy as np
import pytest

from rmfperc import available_backends, get_backend
from rmfperc._kernels import LATTICE_ALT, LATTICE_SQUARE, MODE_COUPLED, MODE_RMF

HAVE_CYTHON = "cython" in available_backends()
needs_ext = pytest.mark.skipif(not HAVE_CYTHON, reason="compiled extension not built")

SEEDS = np.arange(1, 301, dtype=np.uint64)


def test_backend_selection():
    assert get_backend("numpy").BACKEND_NAME == "numpy"
    assert get_backend(None).BACKEND_NAME in ("numpy", "cython")
    with pytest.raises(ValueError):
        get_backend("fortran")


@needs_ext
@pytest.mark.parametrize("kind", [LATTICE_SQUARE, LATTICE_ALT])
@pytest.mark.parametrize("dcode,p0,p1", [(0, 0.0, 1.0), (1, 1.3, 0.0)])
def test_lattice_sweep_backends_agree(kind, dcode, p0, p1):
    cy = get_backend("cython")
    np_ = get_backend("numpy")
    for drift in (0.2, 0.33, 0.6):
        a = cy.lattice_sweep(kind, SEEDS, 60, drift, MODE_RMF, 0.0, dcode, p0, p1, False)
        b = np_.lattice_sweep(kind, SEEDS, 60, drift, MODE_RMF, 0.0, dcode, p0, p1, False)
        assert np.array_equal(a, b)


@needs_ext
def test_lattice_sweep_backends_agree_coupled_and_boundary():
    cy = get_backend("cython")
    np_ = get_backend("numpy")
    a = cy.lattice_sweep(LATTICE_SQUARE, SEEDS, 40, 0.4, MODE_COUPLED, 0.3, 0, 0.0, 1.0, False)
    b = np_.lattice_sweep(LATTICE_SQUARE, SEEDS, 40, 0.4, MODE_COUPLED, 0.3, 0, 0.0, 1.0, False)
    assert np.array_equal(a, b)
    a = cy.lattice_sweep(LATTICE_ALT, SEEDS, 40, 0.25, MODE_RMF, 0.0, 0, 0.0, 1.0, True)
    b = np_.lattice_sweep(LATTICE_ALT, SEEDS, 40, 0.25, MODE_RMF, 0.0, 0, 0.0, 1.0, True)
    assert np.array_equal(a, b)


@needs_ext
@pytest.mark.parametrize("d", [2, 3])
def test_tree_sweep_backends_agree(d):
    cy = get_backend("cython")
    np_ = get_backend("numpy")
    for drift in (0.15, 0.22, 0.4):
        ra, ca = cy.tree_sweep(d, SEEDS[:100], 80, drift, MODE_RMF, 0.0, 0, 0.0, 1.0,
                               False, guard=5000)
        rb, cb = np_.tree_sweep(d, SEEDS[:100], 80, drift, MODE_RMF, 0.0, 0, 0.0, 1.0,
                                False, guard=5000)
        assert np.array_equal(ra, rb)
        assert np.array_equal(ca, cb)


@needs_ext
def test_tree_sweep_backends_agree_coupled():
    cy = get_backend("cython")
    np_ = get_backend("numpy")
    ra, ca = cy.tree_sweep(3, SEEDS[:100], 40, 0.5, MODE_COUPLED, 0.25, 0, 0.0, 1.0,
                           False, guard=5000)
    rb, cb = np_.tree_sweep(3, SEEDS[:100], 40, 0.5, MODE_COUPLED, 0.25, 0, 0.0, 1.0,
                            False, guard=5000)
    assert np.array_equal(ra, rb)
    assert np.array_equal(ca, cb)


@needs_ext
def test_compiled_kernel_rejects_generic_distribution():
    cy = get_backend("cython")
    with pytest.raises(ValueError):
        cy.lattice_sweep(LATTICE_SQUARE, SEEDS[:4], 10, 0.3, MODE_RMF, 0.0, -1, 0.0, 0.0, False)
