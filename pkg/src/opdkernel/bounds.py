"""Size bounds of the kernel as functions of the approximation factor c."""

# a biconnected protrusion block with more vertices always has a reducible structure
BLOCK_THRESHOLD = 6288
# blocks left in a protrusion once the block-cut tree has been shrunk
MAX_BLOCKS = 25
PROTRUSION_THRESHOLD = MAX_BLOCKS * BLOCK_THRESHOLD
# neighbors a modulator vertex keeps in one component after the irrelevant-edge rule
NEIGHBOR_LIMIT = 20


def f1(c: int) -> int:
    """Component graph size after degree reduction, per (k+3)^3."""
    return 14 * c * c + 60 * c


def f2(c: int) -> int:
    """Size of the separator set Z, per (k+3)^3."""
    return 4 * c * c + 15 * c


def f3(c: int) -> int:
    return 3 * f1(c) + 24 * f2(c)


def f4(c: int, d: int) -> int:
    """Edges between modulator and components, per (k+3)^4."""
    return c * d + 6 * c + 4 * d


def f5(c: int, d: int) -> int:
    """Size of the final set L and its component count, per (k+3)^4."""
    return 24 * (20 * f4(c, d) + d + c + c * c)


def kernel_bound(c: int, k: int) -> int:
    """Bound on both vertices and edges of the output instance."""
    return 2 * (PROTRUSION_THRESHOLD + 5) * f5(c, f3(c)) * (k + 3) ** 4
