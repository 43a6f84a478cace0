"""Supersingularity of curves with large abelian automorphism groups.

The criterion side (:mod:`weilss.characters`) asks whether every occurring
character has its inverse in its Frobenius orbit.  The geometry side counts
points (:mod:`weilss.zeta`), evaluates Gauss and Jacobi sums
(:mod:`weilss.exp_sums`) and tests the resulting L-polynomial exactly
(:mod:`weilss.weil`).  :mod:`weilss.families` ties the two together and
:mod:`weilss.harness` runs sweeps.
"""

from .characters import (
    CriterionReport,
    FrobeniusAction,
    GroupCharacter,
    GroupSpec,
    check_necessary,
    check_sufficient,
    frobenius_orbit,
    minus_one_power_condition,
)
from .cyclotomic import CyclotomicInt, cyclotomic_poly
from .exp_sums import AddChar, MultChar, gauss_sum, gauss_sum_lifted, jacobi_sum
from .families import character_data, eigenvalues_exact, l_polynomial_from_eigenvalues, predict
from .finite_field import ExtFieldElem, FieldCtx, make_field
from .harness import PointCountCache, SurveyRecord, survey
from .weil import Verdict, is_supersingular, newton_polygon, squared_scaled_charpoly
from .zeta import (
    ArtinSchreier,
    FermatCurve,
    LPolynomial,
    ThreePointCover,
    count_points,
    count_points_charsum,
    genus,
    l_polynomial,
)

__version__ = "0.1.0"
