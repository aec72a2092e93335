"""Exact finite-group bookkeeping for twisted fixed points, equivariant bundle
data, cyclotomic data tuples, symmetric powers and G-set splittings."""

__version__ = "0.1.0"

from .config import Caps, caps, using_caps
from .errors import CapExceeded, GeofixError, InternalError, ValidationError
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    conjugacy_classes_of_subgroups,
    cyclic,
    dihedral,
    enumerate_homs,
    enumerate_subgroups,
    named_group,
    symmetric,
    weyl_group,
    wreath,
)
from .gsets import BiSet, GSet, coset_gset, regular_gset, trivial_gset
from .twisted import WreathHom, brute_force_twisted_fixed, twisted_fixed, twisted_fixed_dim
from .bundles import BundleData, eta_lambda, ifcrit_check, is_q_faithful, iterphi_bundle_iso
from .acyc import AcycData, in_D_ACyc, in_D_ACyc_p, phi, smash, stretch, sym
from .geosym import centralizer, classify, hom_count_identity, irreducible_catalog
from .tomdieck import aut_gset, fixed_point_bookkeeping, gset_iso_classes, splitting_catalog

__all__ = [
    "AcycData", "BiSet", "BundleData", "CapExceeded", "Caps", "FinGroup", "GSet", "GeofixError",
    "GroupHom", "InternalError", "Subgroup", "ValidationError", "WreathHom", "aut_gset",
    "brute_force_twisted_fixed", "caps", "centralizer", "classify", "conjugacy_classes_of_subgroups",
    "coset_gset", "cyclic", "dihedral", "enumerate_homs", "enumerate_subgroups", "eta_lambda",
    "fixed_point_bookkeeping", "gset_iso_classes", "hom_count_identity", "ifcrit_check",
    "in_D_ACyc", "in_D_ACyc_p", "irreducible_catalog", "is_q_faithful", "iterphi_bundle_iso",
    "named_group", "phi", "regular_gset", "smash", "splitting_catalog", "stretch", "sym",
    "symmetric", "trivial_gset", "twisted_fixed", "twisted_fixed_dim", "using_caps", "weyl_group",
    "wreath",
]
