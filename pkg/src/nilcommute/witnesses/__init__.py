from .basic import (
    basili_pair,
    gerstenhaber_quadruple,
    prop1nonzero_base,
    prop1nonzero_inner,
    prop1nonzero_pair,
)
from .n2red import (
    N2redPoint,
    jacobian_rank,
    n2red_certificate,
    n2red_equations,
    n2red_membership,
    n2red_sample,
    properness_witness,
)
from .prop321 import (
    Prop321Solution,
    prop321_fiber_bruteforce,
    prop321_fixed_data,
    prop321_linear_solution_space,
    prop321_solution,
)
from .squarezero import squarezero_commutant, squarezero_commutant_m1, squarezero_pair
