"""
involute - executable checks for involutive categories, monads and star algebras.

Exact scalars, signed words, multisets, free modules with conjugation,
star algebras and the GNS correspondence, plus a law-checking harness that
runs the coherence conditions on finite instances.
"""

__version__ = "0.1.0"
