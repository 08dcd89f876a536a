"""Convolution tensors of elementary abelian groups, subspace hypergraphs and
the designs (difference sets, bent functions, spreads) that color them."""

__version__ = "0.1.0"
