#!/usr/bin/env python
from .error import InvsgError, InputError, AxiomError, PreconditionError, TheoryViolation, InvariantFailure, CapExceededError
from .pbij import PartialBijection, compose, invert, natural_leq
from .fis_core import FiniteSemigroup, FiniteInverseSemigroup, load_table, load_semigroup, generate_closure, wagner_preston
from .munn import Semilattice, load_semilattice, munn_semigroup, munn_representation
from .connectivity import find_short_bypass, find_tight_bypass, is_shortly_connected, is_tightly_connected
from .lattice import enumerate_subsemigroups, lattice_isomorphisms, verify_theorem_2_4
from .pa import build_pa, pa_isomorphisms, verify_theorem_3_2, verify_theorem_3_4, verify_result_3_1
from .catalog import Catalog, build_catalog
