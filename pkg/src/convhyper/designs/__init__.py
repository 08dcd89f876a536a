"""Design checkers and constructors built on the convolution and hypergraph layers."""
