"""
Allow `python -m prismcalc`.
"""

from .main import main

main()
