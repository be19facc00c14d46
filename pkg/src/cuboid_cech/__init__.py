"""Cech cohomology over Z/2 of punctured products of one-point compactifications."""

from .cardinals import AssumptionSet, KappaTuple, card_leq, card_lt
from .cech import Cochain, coboundary, cochain, face_restrict, index_sets, is_cocycle
from .fnexpr import FnExpr, continuity_witness, equiv_decide, fn, naive_extend, parse_sexpr, to_sexpr
from .fubini import condition2_witness, condition3_count, embed, fubini_exists, modify, trivialize
from .oracle import FiniteModel, betti, fuzz_identities, top_quotient_dim
from .ordinals import INF, OMEGA, inj_e, inj_le, ordinal, ordinal_code
from .partitions import MinRule, VminRule
from .space import Neighborhood, point
from .status import status
from .witnesses import main1_cocycle, main3_phi, pj_decide, slice_distinct

__version__ = "0.1.0"
