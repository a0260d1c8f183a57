import numpy as np
import pytest

from anyonbounds.grid import DensityGrid


def block_density(n: int, blocks: dict[tuple[int, ...], float]) -> DensityGrid:
    """Unit-square grid with uniform mass on dyadic blocks addressed by a
    quadrant path (0 = lower-left, 1 = lower-right, 2 = upper-left, 3 = upper-right)."""
    values = np.zeros((n, n))
    for path, mass in blocks.items():
        i = j = 0
        size = n
        for q in path:
            size //= 2
            a, b = divmod(q, 2)
            i, j = i + a * size, j + b * size
        values[i:i + size, j:j + size] += mass / (size * size) * n * n
    return DensityGrid(0.0, 0.0, 1.0, values)


@pytest.fixture
def figure_replica() -> DensityGrid:
    """Tree with one B square at level 3 and two at level 2.

    Root: children 0, 1 split further, 2 and 3 are A (mass 1).
    Child 0: two level-2 B squares (mass 4) and two A squares.
    Child 1: grandchild (1, 0) splits into a level-3 B plus three A squares;
    its three siblings are A.
    """
    blocks = {(2,): 1.0, (3,): 1.0,
              (0, 0): 4.0, (0, 1): 4.0, (0, 2): 1.0, (0, 3): 1.0,
              (1, 1): 1.0, (1, 2): 1.0, (1, 3): 1.0,
              (1, 0, 0): 4.0, (1, 0, 1): 1.0, (1, 0, 2): 1.0, (1, 0, 3): 1.0}
    return block_density(16, blocks)
