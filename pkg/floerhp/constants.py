# Exit codes of the command-line front end
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PRECONDITION = 2
EXIT_KNOT_DATA = 3
EXIT_INCONSISTENCY = 4
EXIT_USAGE = 64

# Exponent k in the trefoil longitude rule L = -M^k (right-handed: -6, left-handed: +6)
TREFOIL_LONGITUDE_EXPONENT = 6

# Multiplicative order of the meridional eigenvalues of non-abelian reducible characters
# of the trefoil (trace ±√3, roots of the sixth cyclotomic polynomial at μ²)
NAR_ORDER = 12

# Slopes at which the two-dimensional cubic-surface stratum survives
GRANNY_SURFACE_SLOPE = (12, 1)
SQUARE_SURFACE_SLOPE = (0, 1)

# Degrees ignored by the surgery-triangle rank comparison
DEFAULT_PROTECTED_WINDOW = (-1, 0, 1)

BUILTIN_KNOT_NAMES = ("trefoil-r", "trefoil-l")
