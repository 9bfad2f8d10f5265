"""Subgroup lattices, Burnside rings and truncated equivariant tt-spectra of finite groups."""

from eqtt.groups import (EqttError, GroupError, NotASubgroupError, OrderCapExceeded, PermGroup,
                         Subgroup, SubgroupClass, UnknownClassError, all_subgroups, alternating,
                         conjugacy_classes, cyclic, dihedral, direct_product, is_subconjugate,
                         n_transporter_size, resolve_class, symmetric)
from eqtt.pstructure import (PrimeError, PSubnormalTower, is_p_perfect, is_p_subnormal, o_p_core,
                             p_subnormal_tower)
from eqtt.burnside import (BurnsideElement, BurnsidePrime, BurnsideSpectrum, MarksTable,
                           burnside_spectrum, from_marks, mark_hom, multiply, table_of_marks)
from eqtt.spectrum import (INF, Mode, SpectrumPoset, TTPrime, ThreeValued, TopologyUndetermined,
                           build_spectrum, closure, comparison_map, inclusion,
                           irreducible_components, make_prime, n_min_bounds, support_of_basis,
                           z_set, z_set_check)
from eqtt.ideals import (AdmissibleFunction, ThomasonSubset, enumerate_admissible, function_of,
                         ideal_membership, is_admissible, thomason_of)
from eqtt.specparse import GroupSpec, GroupSpecError, construct, parse_group_spec
from eqtt.export import poset_from_json, poset_to_dot, poset_to_json
from eqtt.kernels import BACKEND

__version__ = "0.1.0"
