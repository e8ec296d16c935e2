"""Deterministic seed derivation.

Every randomized stage of a run owns a private ``random.Random`` seeded
through :func:`child_seed`, so the consumption order of one stage can
never perturb another.  Replica ``j`` of a batch uses
``child_seed(master, j)``; within a run, stages get
``child_seed(run_seed, STAGE_TAG, level)``.

The mixer is the splitmix64 finalizer, applied to a running state that
absorbs one index per step.  It is published here as the contract for
reproducing replica seeds outside this package:

    state <- seed
    for each index i:  state <- splitmix64(state * 0x9E3779B97F4A7C15 + i + 1)
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One application of the splitmix64 output function."""
    x = (x + _GOLDEN) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def child_seed(seed: int, *indices: int) -> int:
    """Derive a 64-bit child seed from a master seed and index path."""
    state = seed & _MASK
    for i in indices:
        state = splitmix64((state * _GOLDEN + i + 1) & _MASK)
    return state


# Stage tags: fixed first index of the path passed to child_seed inside a
# run, so streams for different purposes never collide.
STAGE_COARSEN = 0
STAGE_PROFILE = 1
STAGE_EDIT = 2
STAGE_RESCALE = 3
STAGE_INTERPOLATE = 4
STAGE_METRICS = 5
