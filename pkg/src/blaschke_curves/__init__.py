"""Interior and exterior curves of finite Blaschke products."""

from .core import (BlaschkeProduct, PreimageFan, canonicalize, derivative,
                   evaluate, make_canonical, preimage_fans, preimages,
                   random_product)
from .duality import converse_check, dual_check, pole_to_polar, polar_to_pole
from .errors import (BlaschkeError, BranchTrackingError, ConsistencyError,
                     ConvergenceError, DegreeError, DomainError,
                     HermitianError, PoleError)
from .exterior import exterior_equation, exterior_samples
from .interior import envelope_samples, siebeck_foci
from .samples import CurveSamples, SampleRecord
from .sympoly import BivarPoly, RealPoly2, conic_classify, to_real_form

__version__ = '0.1.0'
