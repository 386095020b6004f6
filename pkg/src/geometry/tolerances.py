# Every numerical threshold used by the library lives here.

GEOM_TOL = 1e-9          # predicates: tangency, ties, non-overlap, transversality
OPT_TOL = 1e-10          # bisection width and optimizer convergence
RANK_TOL = 1e-8          # singular value ratio for rank decisions
DENOM_GUARD = 1e-9       # |1 - t^2| and |1 + t^2| lower bound for hyperboloidal charts

# pinning scan: shells at scan_radius * PIN_SHELLS, PIN_SAMPLES perturbations each
PIN_SHELLS = (1.0, 1e-1, 1e-2)
PIN_SAMPLES = 10_000
PIN_SLACK_REL = 1e-3     # a perturbation of size rho survives if slack >= -PIN_SLACK_REL * rho^2
DEFAULT_SCAN_RADIUS = 1e-2

# G'' finite differences
FD_STEP = 1e-4
FD_EDGE = 1e-3

MIN_RESOLUTION = 10_000
