"""
Exact computations with covering quantum groups and spin quiver Hecke algebras:
the covering form and its radical, the polynomial representation, nilHecke
idempotents and the categorification checks that tie the two together.
"""

__version__ = "1.0.0"
