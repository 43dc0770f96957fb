"""earforge: compensate anisotropy earing in deep drawing by blank-contour
optimization.

The pipeline: describe blank contours through cosine-lobe coefficients,
run a central composite design of blanks against a process plant (analytic
surrogate or ingested external data), decompose each rim defect into modal
coordinates, fit quadratic response surfaces, and minimize the summed squared
modal coordinates to find the blank that draws a defect-free cup.
"""

from .doe import (DesignMatrix, Factor, FactorSpace, ccd_design,
                  default_factor_space, to_normalized, to_physical)
from .errors import (EarforgeError, InvalidBlankError, NumericError,
                     SingularDesignError, ValidationError)
from .geometry import (BlankSpec, ClosedContour, ContourProfile, CupSpec,
                       blank_contour, deviation_vector, ear_amplitude,
                       initial_blank_diameter)
from .modal import (ModalBasis, ModalCoordinates, analytic_mode,
                    build_modal_basis, project, reconstruct)
from .optimizer import (ObjectiveSpec, Optimum, grid_oracle, minimize,
                        objective_f, objective_gradient)
from .plant import (DC05, MaterialAnisotropy, SurrogateParams, ingest_profile,
                    run_design, simulate)
from .rsm import (QuadraticModel, ResponseTable, fit_quadratic, predict,
                  rank_influence)

__version__ = "0.1.0"

__all__ = [
    "BlankSpec", "ClosedContour", "ContourProfile", "CupSpec",
    "blank_contour", "initial_blank_diameter", "ear_amplitude",
    "deviation_vector",
    "ModalBasis", "ModalCoordinates", "build_modal_basis", "analytic_mode",
    "project", "reconstruct",
    "Factor", "FactorSpace", "DesignMatrix", "ccd_design",
    "default_factor_space", "to_physical", "to_normalized",
    "QuadraticModel", "ResponseTable", "fit_quadratic", "predict",
    "rank_influence",
    "ObjectiveSpec", "Optimum", "objective_f", "objective_gradient",
    "minimize", "grid_oracle",
    "MaterialAnisotropy", "SurrogateParams", "DC05", "simulate",
    "ingest_profile", "run_design",
    "EarforgeError", "ValidationError", "NumericError", "InvalidBlankError",
    "SingularDesignError",
    "__version__",
]
