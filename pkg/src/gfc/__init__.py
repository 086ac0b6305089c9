"""Grade-free products on the Grassmann Hopf algebra.

Exterior algebra with its split coproduct, Grassmann-Cayley meet/join and
their duals, contractions and cocontractions for arbitrary bilinear forms,
cliffordization, the Clifford coproduct and cochain deformations.
"""

from .blades import (AlgebraSignature, Multivector, Tensor, Tensor2, basis, grade_involution,
                     grade_project, graded_switch, wedge)
from .cayley import cojoin, comeet, join, meet
from .clifford import (chevalley_oracle, clifford_coproduct, clifford_product, left_cocontract,
                       left_contract, right_cocontract, right_contract)
from .cocycle import (Cochain, circle_product, coboundary, cochain_extend, convolution_inverse,
                      p_inverse_operator, p_operator)
from .forms import (BilinearForm, Coscalar, ExtendedForm, GeneralBF, eval_extended, extend_coscalar,
                    extend_form, general_bf)
from .hopf import antipode, bracket, coproduct, cointegral, counit, integral
from .render import render

__all__ = [
    "AlgebraSignature", "Multivector", "Tensor", "Tensor2", "basis", "grade_involution",
    "grade_project", "graded_switch", "wedge",
    "cojoin", "comeet", "join", "meet",
    "chevalley_oracle", "clifford_coproduct", "clifford_product", "left_cocontract",
    "left_contract", "right_cocontract", "right_contract",
    "Cochain", "circle_product", "coboundary", "cochain_extend", "convolution_inverse",
    "p_inverse_operator", "p_operator",
    "BilinearForm", "Coscalar", "ExtendedForm", "GeneralBF", "eval_extended", "extend_coscalar",
    "extend_form", "general_bf",
    "antipode", "bracket", "coproduct", "cointegral", "counit", "integral",
    "render",
]
