"""Triangle constructions and orthogonality in normed planes.

C-orthocenters, antitriangles, Euler and Poncelet points and the Feuerbach
circle for Euclidean, L_p and polygonal norms, plus a randomized harness that
checks the theorems about them.
"""

from .affine import (
    Line,
    Point2,
    Segment,
    Triangle,
    collinear,
    harmonic_conjugates_check,
    homothety,
    midpoint,
    point_symmetry,
)
from .construct import (
    ConstructionBundle,
    OrthoSystem,
    antitriangle,
    build_system,
    c_orthocenter,
    circumcenters,
    circumcircle_antipode,
    construction_bundle,
    is_c_orthocentric,
    poncelet_point,
    symmetry_point_q,
)
from .errors import (
    DegenerateTriangleError,
    GenerationFailedError,
    GeometryError,
    InvalidInputError,
    NoWitnessError,
    NotACircumcenterError,
    NotOnCircumcircleError,
    SearchExhaustedError,
    UnknownTheoremError,
)
from .harness import (
    THEOREM_IDS,
    Scene,
    VerificationReport,
    builtin_norm_pool,
    mutation_self_test,
    random_scene,
    run_suite,
    verify_theorem,
)
from .norms import (
    Chord,
    MinkCircle,
    NormSpec,
    circle_contains,
    norm_eval,
    on_unit_circle,
    support_line_exists,
    unit_circle_line_intersections,
)
from .orthogonality import (
    birkhoff_orthogonal,
    chordal_orthogonal,
    chordal_partner,
    isosceles_orthogonal,
)

__version__ = "0.1.0"
