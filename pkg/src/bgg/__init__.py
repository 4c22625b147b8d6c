"""Exact-arithmetic Tate resolutions of coherent sheaves on projective space
over the exterior algebra, and the sheaf invariants they carry: cohomology
tables, regularity, Hilbert polynomials, graded Betti numbers, Beilinson and
Walter term shapes, fiber ranks and local projective dimensions, and
projections."""

from .complexes import (EComplex, ExtMatrix, FiniteEModule, FreeEModule,
                        kernel_module, min_cofree_resolution,
                        min_free_resolution)
from .errors import (BggError, InputError, MathPreconditionError,
                     StartTooSmallError, SupportMeetsCenterError,
                     WindowInsufficientError)
from .exterior import ExtElement, OmegaElement
from .fields import PrimeField, RationalField, default_field, field_from_json
from .geometry import (SubspaceSpec, certify_sheaf, fiber_rank,
                       hom_annihilator, local_pd, probe_degeneracy, project)
from .symmetric import GradedModule, SPolynomial, SPresentation
from .tate import (CohomologyTable, TateWindow, cohomology_table, dual_tate,
                   regularity, tate_from_differential, tate_from_presentation)
from .transforms import (HilbertPolynomial, RigidComplex, SComplexShape,
                         beilinson_shape, betti_numbers, hilbert_from_coranks,
                         hilbert_from_kernel, rigid_complex, walter_shape)
from . import zoo

__version__ = "0.1.0"
