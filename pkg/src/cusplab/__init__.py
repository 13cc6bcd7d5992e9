"""Exact cusp invariants of Hilbert modular surfaces and Sol torus bundles."""

__version__ = "0.1.0"

from .cuspinv import (CuspDatum, DeltaResult, bounding_obstruction, cusp_datum, delta,
                      dual_module, l_series_partial, l_value_at_1, minus_cf_cycle,
                      standard_cusp, volume)
from .dedekind import Monodromy, dedekind_sum, rademacher_phi, rademacher_psi
from .exactnum import QuadIrr, SurdValue, parse_quadirr
from .quadfield import FieldData, class_number, field_data, squarefree_part, tp_unit_generator
from .solbundle import (GeometryClass, LatticeModule, arithmeticity_report,
                        build_representation, classify_geometry, eigen_data,
                        parse_presentation, stabilizer_unit)
