"""ubcalc: an executable unit/bind calculus.

Reduction and convergence engines, intersection subtyping with a
derivation-search oracle, a type assignment system with checkable
derivations, finite-rank filter-domain semantics, and translations to
and from the let-based computational lambda-calculus.
"""
