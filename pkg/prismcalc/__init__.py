"""
prismcalc: exact computations around Nygaard-filtered prismatic cohomology.
"""

__version__ = "0.1.0"
