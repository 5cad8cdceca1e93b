"""Hypothesis strategies for exact scalars and small algebraic objects."""

from fractions import Fraction

from hypothesis import strategies as st

from logconn.algebra import GaussQ, Matrix2, Poly

nonzero_int = st.integers(-20, 20).filter(bool)
rationals = st.builds(Fraction, st.integers(-20, 20), nonzero_int)
gauss = st.builds(GaussQ, rationals, rationals)
real_gauss = st.builds(GaussQ, rationals)
matrices = st.builds(Matrix2, gauss, gauss, gauss, gauss)
polys = st.lists(gauss, max_size=6).map(Poly)
seeds = st.integers(0, 2**32 - 1)
