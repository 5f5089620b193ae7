"""unilcalc: exact arithmetic for the UNil groups of the infinite dihedral
group, the quadratic linking forms that present them, and the switch
involution swapping the two dihedral generators.
"""

__version__ = "0.1.0"
