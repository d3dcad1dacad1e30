"""Twin-width of dual graphs of cubical-honeycomb subdivisions.

Trigraphs and contraction sequences, cell complexes and barycentric
subdivisions, the two-epoch contraction of G_{d,n}, grid folding
strategies, an exact solver for small graphs, and the thickening
triangulations whose dual graphs are subdivided regular graphs.
"""

__version__ = "0.1.0"
