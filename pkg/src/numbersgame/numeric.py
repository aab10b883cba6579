"""Numeric policy: tolerances, zero snapping, and key quantization.

All arithmetic is double precision.  Every comparison in the package
routes through the constants below so the CLI can report them.
"""

import math

# amplitude-product label inference: scan k = 3..LABEL_SCAN_MAX
LABEL_SCAN_MAX = 360
LABEL_TOL = 1e-9
# explicit per-edge labels are checked against the product at this tolerance
EXPLICIT_LABEL_TOL = 1e-6

# zero snapping: |value| <= SNAP_REL * (1 + max|initial|) becomes 0
SNAP_REL = 1e-9

# spanning-tree potential check for ON-cycle products
UNITAL_TOL = 1e-9

# quantization grid for element keys, root deduplication, position memos
KEY_GRID = 1e-6

# sign classification of root coordinates
SIGN_TOL = 1e-9

ROOT_CAP = 10_000
TITS_BUDGET = 1_000_000
DEFAULT_STEP_CAP = 1000
DEFAULT_MAX_ELEMENTS = 200_000
DEFAULT_MAX_LENGTH = 1000

TOLERANCES = {
    "label_scan_max": LABEL_SCAN_MAX,
    "label_tol": LABEL_TOL,
    "explicit_label_tol": EXPLICIT_LABEL_TOL,
    "snap_rel": SNAP_REL,
    "unital_tol": UNITAL_TOL,
    "key_grid": KEY_GRID,
    "sign_tol": SIGN_TOL,
}


def snap_scale(values) -> float:
    """Snapping threshold for positions derived from an initial assignment."""
    peak = max((abs(v) for v in values), default=0.0)
    return SNAP_REL * (1.0 + peak)


def snap(values, eps: float) -> tuple:
    return tuple(0.0 if abs(v) <= eps else float(v) for v in values)


def quantize(values, grid: float = KEY_GRID) -> tuple:
    """Integer grid key; collapses values closer than the grid spacing."""
    return tuple(int(round(v / grid)) for v in values)


def label_product(m) -> float:
    """The amplitude product 4cos^2(pi/m) carried by an edge of label m."""
    if m == math.inf:
        return 4.0
    return 4.0 * math.cos(math.pi / m) ** 2


def infer_label(product: float, tol: float = LABEL_TOL, k_max: int = LABEL_SCAN_MAX):
    """Decode an edge label from the amplitude product.

    Returns an integer k >= 3 when the product matches 4cos^2(pi/k),
    math.inf when the product is >= 4, and None when the product lies
    in (0, 4) but matches no k within the scan cap.
    """
    if product >= 4.0 - tol:
        return math.inf
    for k in range(3, k_max + 1):
        if abs(product - label_product(k)) <= tol:
            return k
    return None
