"""Line partitions of the internal points of a conic in PG(2, q), q odd.

Construction, exhaustive search and classification up to projectivities.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .gf import (  # noqa: F401
    FieldElement,
    FieldSpec,
    element_arithmetic,
    enumerate_elements,
    field_of_order,
    make_field,
    quadratic_character,
)
from .plane import (  # noqa: F401
    Collineation,
    ProjLine,
    ProjPoint,
    all_lines,
    all_points,
    apply,
    apply_dual,
    incident,
    join,
    meet,
    plane_of,
)
from .conic import (  # noqa: F401
    Conic,
    LineClass,
    PointClass,
    Relation,
    character_matrix,
    classify_line,
    classify_point,
    internal_subfamily,
    pencil_conic,
    pencil_family,
    pencil_relation,
    polar_line,
    standard_conic,
    tangent_pencil_index,
)
from .families import (  # noqa: F401
    LineSet,
    PartitionReport,
    Provenance,
    baer_subplane_partition,
    conic_point_pencil_partition,
    external_pencil_partition,
    tangency_profile,
    verify_partition,
)
from .search import Mode, brute_force_solve, build_instance, solve_all  # noqa: F401
from .classify import (  # noqa: F401
    FamilyLabel,
    OrbitReport,
    canonical_partition,
    classify_solutions,
    conic_stabilizer,
)
