from .measures import (Atoms, LevyMeasure, PolarComponent, PolarProduct, RadialDecomposition, ScalarDensity,
                       SphericalDecomposition, Stable, nu_allclose, symmetric_density1d, zero_measure)
from .radial import (INF, AtomSeries, CustomDensity, PowerExp, RadialAtoms, RadialMeasure, RadialMixture,
                     gamma_radial, stable_radial, stable_radial_exponent, tempered_radial)
from .specfile import dump_triplet, load_triplet, triplet_from_dict, triplet_to_dict
from .spherical import SphereAtoms, SphereDensity, SphereMixture, SphereUniform, point_mass, symmetric_pair
from .triplet import (DerivedLocation, LevyTriplet, char_exponent, convolution_power, dilate, drift_of, mean_of,
                      sharp_location, spherical_decomposition, triplet, triplet_allclose)
