"""Integer-valued polynomials over Z and its extension rings, computed exactly."""

from .exact import hnf, lattice_contains, lattice_equal
from .findiff import delta, delta_at
from .idealization import (FreeZn, IdealElem, IdealPoly, ModuleSpec, RationalsQ, ZmodM, ideal_eval,
                           ideal_horner, in_int_idealization, parse_ideal_poly)
from .lattices import IntLattice, basis_int_k, basis_int_mod, conjecture_check_mod4
from .membership import (MembershipVerdict, MultisetSpec, Witness, in_int, in_int_k,
                         in_int_mod, in_int_multiset)
from .parsing import format_binomial, format_poly, parse_poly, parse_ring_poly
from .poly import BinomPoly, MultiPoly, Poly, from_binomial, to_binomial
from .ringext import (GenDualElem, GenDualPoly, dense_set_oracle, eval_closed_dual, eval_closed_rho,
                      eval_direct, in_int_ext, pullback_iso)
from .torsion import (FiniteRingSpec, ProductOfZmod, ZmodN, int_equals_MX, is_principal_slicewise,
                      poly_function_count, vanishing_ideal)

__version__ = "0.1.0"
