"""
Command modules of the `prism` front end; each one registers its parser.
"""

from . import ainf, crys, decalage, drw, nygaard, tc, tr_table, witt

COMMANDS = (witt, ainf, nygaard, tr_table, tc, decalage, crys, drw)

__all__ = ["COMMANDS"]
