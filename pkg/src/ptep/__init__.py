"""Exceptional points of tridiagonal PT-symmetric matrix Hamiltonians."""
from .charpoly import Polynomial, char_poly, even_reduce, secular_coeffs_n8
from .eplocus import (EpCascade, ep_cascade, ep_params, inner_block_is_ep, lemma4_check,
                      near_ep, verify_ep_identity)
from .jordan import (JordanForm, assemble_Q, exact_chain, jordan_chain_block, jordan_residual,
                     single_block_form)
from .model import (Hamiltonian, Partition, Surd, ZParams, build_hamiltonian, extract_blocks,
                    partition, z_of_t)
from .perturb import (PerturbationData, UnfoldingPrediction, build_L, build_R, build_Z,
                      perturbation_matrix, predict_unfolding, resolvent_solve, secular_leading,
                      unfold_ring)
from .spectra import Spectrum, classify, cross_check, eigenvalues
from .sweep import SweepRecord, emit, sweep

__version__ = "0.1.0"
