"""fibcalc: a computer-algebra toolkit for fibered knots, fibered ribbon
disks, and fibered 2-knots, represented by monodromy data and probed through
computable invariants (Alexander polynomials, homology, finite-quotient
counts)."""

from .errors import (AbelianizationError, BudgetExceededError, CatalogError,
                     FibcalcError, InapplicableError, MalformedInputError,
                     MissingPayloadError, PreconditionError, RankMismatchError,
                     SchemaError, ScriptError, UnsupportedFiberError)
from .laurent import LaurentPoly, laurent_gcd, normalize_alexander
from .matrices import (IntMatrix, block_diag, char_poly, in_row_span, laurent_det,
                       smith_diagonal, smith_normal_form, solve_int)
from .words import (FreeGroupMap, FreeWord, abelianize, apply_map, compose,
                    handlebody_names, reduce, surface_names, word_from_text,
                    word_to_text)
from .mcg import (CompatibilityReport, CurveSpec, HandlebodyMonodromy,
                  SurfaceMonodromy, boundary_connected_sum, catalog_names,
                  cg_compatibility, compose_monodromy, curated_payload,
                  intersection, is_symplectic, mirror, standard_lagrangian,
                  symplectic_form, transvection, twist_monodromy)
from .presentation import GroupPresentation, hnn_presentation
from .invariants import (DEFAULT_HOM_BUDGET, FiniteGroupTable, GroupRingElement,
                         alexander_from_presentation, count_homs, finite_group,
                         fox_derivative, fox_matrix, group_catalog_names, h1,
                         infinite_cyclic_exponents, ring_to_laurent)
from .fibered import (Ambient, FiberedKnot, alexander_poly, catalog_knot,
                      connected_sum, distinctness_bound,
                      dual_knot_surgery_descriptor, knot_group, mirror_knot,
                      stallings_twist, trefoil_two_bridge_presentation)
from .ribbon_disk import (FiberType, FiberedDisk, boundary_knot,
                          boundary_surjectivity_check, disk_twist, doubled_boundary,
                          exterior_presentation, half_spin, is_homotopy_ribbon)
from .two_knot import (ContractibilityReport, FiberedTwoKnot, FillingDescriptor,
                       HalvingFamilyEntry, PlanEntry, SurgeryPlan, double_disk,
                       execute_plan, gluck, halving_family,
                       seifert_filling_multiplicity, spin, torus_surgery_plan,
                       torus_twist, two_knot_group)
from .script import (InvariantReport, Statement, SurgeryScript, build_report,
                     execute, parse_script, print_script)

__version__ = "0.1.0"
