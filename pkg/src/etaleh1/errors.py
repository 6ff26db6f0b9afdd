"""Exception types and resource budgets shared across the library.

Every long-running computation (Groebner bases, Noether normalisation,
point searches) accepts a :class:`Budgets` object and raises
:class:`BudgetExceeded` instead of silently truncating or hanging.
"""

from dataclasses import dataclass


class EtaleH1Error(Exception):
    """Base class for all library errors."""


class ZeroPolynomial(EtaleH1Error):
    """Factorisation of the zero polynomial was requested."""


class NotAField(EtaleH1Error):
    """An algebra expected to be a field is not one."""


class SubalgebraNotClosed(EtaleH1Error):
    """A claimed subalgebra basis is not closed under multiplication."""


class UnitIdeal(EtaleH1Error):
    """An ideal expected to be proper is the unit ideal."""


class ArityMismatch(EtaleH1Error):
    """A point or argument vector has the wrong length."""


class TypeMismatch(EtaleH1Error):
    """Module types of morphisms are not compatible."""


class RankMismatch(EtaleH1Error):
    """Ranks of finite locally free data do not match."""


class NotReduced(EtaleH1Error):
    """An algebra expected to be reduced has nilpotents."""


class NotSeparating(EtaleH1Error):
    """The chosen coordinate is not a separating element."""


class NotConnected(EtaleH1Error):
    """A curve expected to be connected is disconnected."""


class NotEtale(EtaleH1Error):
    """A morphism expected to be etale is ramified."""


class OrderNotInvertible(EtaleH1Error):
    """The coefficient group order is divisible by the characteristic."""


class NotATorsor(EtaleH1Error):
    """A cover with group action fails the torsor criteria."""


class NotAbelian(EtaleH1Error):
    """Class addition was requested for a nonabelian coefficient group."""


class NoFunctionFound(EtaleH1Error):
    """Internal assertion: the 0/1 search of the projection algorithm failed."""


class BadParams(EtaleH1Error):
    """Parameters outside the supported range."""


class TooLarge(EtaleH1Error):
    """Instance exceeds the oracle's explicit size guard."""


class BudgetExceeded(EtaleH1Error):
    """A configured resource budget was exhausted.

    Carries which budget tripped so callers can report it precisely.
    """

    def __init__(self, what, limit):
        super().__init__(f"budget exceeded: {what} (limit {limit})")
        self.what = what
        self.limit = limit


@dataclass(frozen=True)
class Budgets:
    """Hard caps for the polynomial-system kernels.

    Exceeding any cap raises :class:`BudgetExceeded`; computations never
    return truncated results.
    """

    max_degree: int = 64          # total degree of any intermediate polynomial
    max_basis: int = 4000         # elements kept in a Groebner basis
    max_pairs: int = 2_000_000    # S-pairs processed in one Buchberger run
    max_fiber_dim: int = 4096     # k-dimension of a fiber ring
    max_system_vars: int = 100_000

    def check_degree(self, d):
        if d > self.max_degree:
            raise BudgetExceeded("polynomial degree", self.max_degree)


DEFAULT_BUDGETS = Budgets()
