"""Smarandache isotopy of finite groupoids, quasigroups and loops."""

from .census import (
    CensusReport,
    canonical_form,
    enumerate_reduced_loops,
    isomorphy_classes,
    isotopy_classes,
    run_census,
    s_census,
)
from .isotopism_group import (
    enumerate_isot,
    isot_order,
    nsisot_count,
    pisot_check,
    sisot_restricted_count,
    sisot_stabilizer,
)
from .isotopy import (
    IsotopismTriple,
    SIsotopismWitness,
    apply_isotopism,
    audit_corollaries,
    decompose_to_principal,
    fg_principal_isotope,
    find_fg_decomposition,
    find_isomorphism,
    find_isotopism,
    gs_group_check,
    is_s_isotopism,
    principal_isotope,
)
from .magma import (
    AlgebraClass,
    MagmaTable,
    Permutation,
    classify,
    compose,
    inverse,
    left_translation,
    relabel,
    right_translation,
)
from .smarandache import SCertificate, find_s_structures, is_smarandache, verify_certificate

__version__ = "0.1.0"
