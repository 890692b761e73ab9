"""
Induced matching reductions, exact solvers and verification campaigns
"""
__version__ = '0.1.0'
