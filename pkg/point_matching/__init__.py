"""
Polygon membrane eigenvalues by arbitrary-precision point matching.
"""
