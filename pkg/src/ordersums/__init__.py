"""Exact element-order sums of finite abelian groups.

``m(G)`` is the sum of ``1/o(a)`` over the elements ``a`` of ``G``.  The
package computes it exactly, enumerates abelian groups of a given order and
checks a family of inequalities relating ``m(G)`` to ``m(Z_n)``.
"""

from .abelian import (
    TRIVIAL,
    AbelianGroup,
    cyclic_group,
    direct_product,
    enumerate_abelian_groups,
    from_cyclic_factors,
    group_order,
    invariant_factor_form,
    is_cyclic,
    parse_signature,
    signature,
)
from .bounds import (
    BoundReport,
    CheckId,
    Verdict,
    check_corollary,
    check_initial,
    check_main,
    check_odd_lower,
    check_phi_bounds,
    check_sharpness,
    check_sqrt,
    extremal,
    sweep,
)
from .errors import CapExceededError, DomainError, NoNonCyclicGroupError
from .numtheory import Factorization, TwoAdicSplit, euler_phi, factorize, partitions, two_adic_split
from .ordersum import OrderDistribution, m_bruteforce, m_cyclic, m_group, order_distribution, psi_group

__version__ = "0.1.0"
