"""Tricomplex Mandelbrot toolkit.

Arithmetic over the eight-dimensional tricomplex algebra, escape-time
membership tests, the named 3D slices with their closed-form polyhedral
predicates, halfspace-system verification, and raster/voxel renderers.
"""

from .algebra import (
    Bicomplex,
    Idem4,
    NonInvertibleError,
    SignedUnit,
    Tricomplex,
    UNIT_TAGS,
    gamma,
    gamma_bar,
    gamma2_decompose,
    gamma3_decompose,
    idem4_compose,
    idem4_decompose,
    idempotent_elements,
    unit_mul,
)
from .dynamics import (
    DEFAULT_CONFIG,
    EscapeResult,
    IterationConfig,
    complex_escape,
    direct_orbit,
    m_sup_estimate,
    real_escape,
    tc_escape,
)
from .parsing import ParseError, format_tc, parse_tc
from .polytopes import (
    Halfspace,
    HalfspaceSystem,
    PolytopeReport,
    UnboundedSystemError,
    builtin_system,
    edge_graph,
    enumerate_vertices,
    fm_eliminate,
    is_redundant,
)
from .render import (
    Box3,
    Grid2D,
    Mesh,
    VoxelGrid,
    Window2,
    extract_surface,
    raster2d,
    voxelize,
    write_obj,
    write_pgm,
    write_tbvx,
)
from .slices import (
    EARTHBROT,
    IDEMPOTENT_UNITS,
    PRINCIPAL_SLICES,
    SliceSpec,
    airbrot_closed,
    char_membership,
    earthbrot_closed,
    embed,
    firebrot_closed,
    hyperbrot_closed,
    hyperbrot_iter,
    idem_slice_membership,
    setA_membership,
    slice_membership,
    star_dual,
    starbrot_membership,
)

__version__ = "0.1.0"
