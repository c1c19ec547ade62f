"""Fusion rings of level-k affine sl2, the parafermion algebra K(sl2,k) and their Z2-orbifolds.

Quick start::

    >>> from fusionlab import parse_label, fuse
    >>> a = parse_label('para-orb', 4, 'PI:2,1:+')
    >>> str(fuse('para-orb', 4, a, a))
    'PI:2,1:- PI:4,0:+ PI:4,2:+'
"""

__version__ = '0.1.0'

from .errors import *  # noqa: F401,F403
from .labels import (AffineLabel, AlgebraKind, FusionOutcome, K0Label, OrbAffineLabel, Sign,
                     Twisted, TwistedTilde, TypeI, TypeII, PLUS, MINUS)
from .catalog import (FoldConvention, RawTwisted, RawUntwisted, canonicalize_k0,
                      canonicalize_orb_para, contragredient, enumerate_labels, format_label,
                      label_count, lowest_weight, parse_label, sigma_stable)
from .affine_rings import fuse_affine, fuse_orb_affine, sign_of
from .para_rings import fuse_k0, fuse_orb_para
from .fusion import fuse
from .qdim import QDim, qdim_mul, qdim_numeric, qdim_of, qint, qint_reduce
from .verify import Report, build_table, mutate_and_detect, verify_ring
