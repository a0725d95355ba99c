"""Expansion, Kazhdan constants and bounded elementary generation for SL_n over finite rings."""

__version__ = "0.1.0"

from .bounds import headline_constants, m_constant, m_p, m_pq, md_constant, tau_bounds_universal  # noqa: E402
from .decompose import (  # noqa: E402
    commutator_search,
    full_gem_decompose,
    gauss_elementary_decompose,
    gem_identities,
    gem_reduce_3block,
    lift_commutators,
    steinberg_word,
)
from .graphs import cycle_graph, diameter, enumerate_cayley, schreier_graph, subset_expansion_check  # noqa: E402
from .groups import GeneratorSet, GroupElement, elementary_matrix, sigma_bad, sigma_good, sigma_standard  # noqa: E402
from .identities import audit_ring_identities  # noqa: E402
from .rings import CyclicGroupAlgebra, IntegersMod, Mat, MatrixRing, matrix_arith, scalar_arith, stable_range_witness  # noqa: E402
from .spectral import kazhdan_bounds, second_eigenvalue, tau_to_expansion, witness_upper_bound  # noqa: E402
from .words import ElementaryLetter, GemLetter, Word, gem_expand, word_eval  # noqa: E402
