"""Prism manifolds realised by positive integer surgery on knots.

The package decides, for a prism manifold P(p, q) with q < 0, whether its
D-type lattice embeds as the orthogonal complement of a changemaker vector,
and compares the answer with closed-form parametric families.
"""

__version__ = "0.1.0"
