from .generators import (
    LabeledCloud, noisy_circle, four_circles, flower, multi_loops, mug, solid_torus,
    loop_chain, trefoil_sequence, generate, GENERATORS, SEQUENCES, DEFAULT_NOISE,
)

__all__ = [
    'LabeledCloud',
    'noisy_circle',
    'four_circles',
    'flower',
    'multi_loops',
    'mug',
    'solid_torus',
    'loop_chain',
    'trefoil_sequence',
    'generate',
    'GENERATORS',
    'SEQUENCES',
    'DEFAULT_NOISE',
]
