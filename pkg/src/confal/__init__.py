"""Exact symbolic toolkit for conformal superalgebras given by structure
polynomial tables: lambda-product evaluation, axiom and identity
verification, constructions, a built-in catalog, and a bounded exhaustive
classification search for compatible products on rank-(1+1) brackets.
"""

from .axioms import (Axiom, CheckReport, CompatReport, MissingTableError,
                     PreconditionError, Suite, Violation, check_axiom,
                     check_compat_equivalence, check_derived_identities,
                     check_suite, check_transposed_leibniz_nth)
from .catalog import CatalogError, catalog_build, catalog_list
from .classify import (SearchConfig, SearchResult, SearchSpaceError, Solution,
                       match_family, search_compatible, solution_algebra,
                       verify_sufficiency)
from .conformal import (AlgebraDef, ProductTable, SchemaError, lam_product,
                        load_algebra, nth_product, save_algebra,
                        validate_table)
from .constructions import (InternalInvariantError, commutator_bracket,
                            current_bracket, derivation_star, direct_sum,
                            h_modified_bracket, hom_map_from_element,
                            tensor_prelie_poisson, tensor_tpcsa)
from .gmodule import Element, GradedBasis, ModuleMap, combine
from .poly import (ModP, Poly, PolyParseError, parse_poly, poly_to_str,
                   to_prime_field)

__all__ = [
    "AlgebraDef", "Axiom", "CatalogError", "CheckReport", "CompatReport",
    "Element", "GradedBasis", "InternalInvariantError", "MissingTableError",
    "ModP", "ModuleMap", "Poly", "PolyParseError", "PreconditionError",
    "ProductTable", "SchemaError", "SearchConfig", "SearchResult",
    "SearchSpaceError", "Solution", "Suite", "Violation", "catalog_build",
    "catalog_list", "check_axiom", "check_compat_equivalence",
    "check_derived_identities", "check_suite",
    "check_transposed_leibniz_nth", "combine", "commutator_bracket",
    "current_bracket", "derivation_star", "direct_sum", "h_modified_bracket",
    "hom_map_from_element", "lam_product", "load_algebra", "match_family",
    "nth_product", "parse_poly", "poly_to_str", "save_algebra",
    "search_compatible", "solution_algebra", "tensor_prelie_poisson",
    "tensor_tpcsa", "to_prime_field", "validate_table", "verify_sufficiency",
]

__version__ = "0.1.0"
