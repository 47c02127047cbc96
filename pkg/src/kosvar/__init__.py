"""kosvar: exact support-variety computations over Koszul DG algebras.

Prime-field Groebner kernel, graded free complexes, Koszul DG modules, the
cohomology-operator resolution U_E(P), Ext_E^*(-,k) as a module over the
operator ring A = k[chi_1..chi_n], support varieties, a two-route complete
intersection detector, and constructive proxy-smallness witnesses.
"""

__version__ = "0.1.0"

from .polyring import DEFAULT_PRIME, GradedRing, Polynomial, PrimeField, make_graded_ring

__all__ = [
    "DEFAULT_PRIME",
    "GradedRing",
    "Polynomial",
    "PrimeField",
    "make_graded_ring",
    "__version__",
]
