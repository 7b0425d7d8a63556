"""
dwd - double wiring diagrams, their move graphs Φ_n, and positivity checks of minors
written as Laurent polynomials in chamber minors.
"""

__version__ = "1.0.0"
