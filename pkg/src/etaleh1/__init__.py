"""etaleh1: first etale cohomology of curves over finite fields, exactly.

Computes H^1 (and H^1 with proper support) of smooth connected curves over
F_q with finite locally constant abelian coefficient sheaves, as Galois
modules, by building and probing a classifying groupoid scheme.  Every stage
is exposed and independently testable; a Kummer-theory oracle validates end
results on small instances.
"""

__version__ = "0.1.0"
