"""heckeforge: exact verification of Iwahori-Hecke operator identities,
Gauss sums, critical-value combinatorics and p-adic distribution relations.
"""

__version__ = "0.1.0"
