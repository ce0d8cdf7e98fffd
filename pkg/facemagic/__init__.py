"""
facemagic - C4-face-magic labelings of projective grid graphs

Construct, verify, transform, count and exhaustively enumerate labelings
of the m x n projective grid.
"""

__version__ = "0.1.0"
