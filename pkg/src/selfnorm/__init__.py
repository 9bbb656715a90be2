"""Census of conjugacy classes of non-self-normalizing subgroups in finite permutation groups."""

from types import ModuleType as _ModuleType

from .catalog import Catalog, CatalogError, GroupSpec, builtin_catalog, format_catalog, parse_catalog
from .census import (
    CensusReport,
    ClassificationVerdict,
    FormulaError,
    census,
    classify_small,
    formula_frob1,
    formula_frob2,
    formula_frob3,
    nilpotent_bounds,
    pgroup_bounds,
    product_lower_bound,
    relative_census,
    solvable_dl_bound,
)
from .constructors import (
    ConstructionError,
    FrobeniusSpec,
    ModuleStructure,
    alt,
    central_extension_example,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    frobenius_elem_abelian,
    frobenius_from_spec,
    frobenius_metacyclic,
    preset,
    resolve_group,
    sym,
)
from .group import Group, GroupTooLarge, NotASubgroup, NotNormal, Subgroup, enumerate_group, quotient
from .lattice import (
    LatticeTooLarge,
    SubgroupClassRecord,
    all_subgroups,
    centralizer,
    conjugacy_classes_of_subgroups,
    cyclic_subgroups,
    is_self_normalizing,
    normalizer,
)
from .perm import Permutation, PermutationError, parse_permutation
from .structure import (
    center,
    composition_length,
    derived_length,
    derived_series,
    derived_subgroup,
    frobenius_decomposition,
    has_normal_p_complement,
    is_subnormal,
    is_z_group,
    lower_central_series,
    nilpotency_class,
    structure_report,
    sylow_subgroup,
)
from .verify import VerificationReport, frobenius_family, run_checks

__version__ = "0.1.0"

__all__ = sorted(
    name for name, value in dict(globals()).items() if not name.startswith("_") and not isinstance(value, _ModuleType)
)
