"""Mordell-Weil lattice layer: fibers, contributions, heights, catalog."""

from .catalog import CatalogError, LatticeCatalogRow, lattice_lookup, load_catalog
from .fibers import (FiberError, FiberRecord, IncidenceError, SectionIncidence,
                     UnsupportedFiberError, contribution, contribution_closed_form,
                     fibers_from_singularities, i0_star_record, i_n_record, incidence,
                     section_dot_zero)
from .heights import (CHI, HeightClass, HeightError, SurfaceModel, classify_section_by_height,
                      gram_matrix, height_pairing, incidence_of_line_section, line_self_height,
                      local_drop, theta_parity)

__all__ = [
    "CHI", "CatalogError", "FiberError", "FiberRecord", "HeightClass", "HeightError",
    "IncidenceError", "LatticeCatalogRow", "SectionIncidence", "SurfaceModel",
    "UnsupportedFiberError", "classify_section_by_height", "contribution",
    "contribution_closed_form", "fibers_from_singularities", "gram_matrix", "height_pairing",
    "i0_star_record", "i_n_record", "incidence", "incidence_of_line_section",
    "lattice_lookup", "line_self_height", "load_catalog", "local_drop", "section_dot_zero",
    "theta_parity",
]
