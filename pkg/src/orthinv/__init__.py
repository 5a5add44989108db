"""Exact invariants of orthogonal involutions attached to tame p-adic towers."""

from .errors import *  # noqa: F401,F403
from .field import Ram, TowerSpec, Unram, build_field, y_invariant
from .forms import SymMatrix, form_invariants, hilbert_symbol, similarity_class_census
from .embeddings import integral_jsym_embedding
from .involutions import GOrbitLabel, g_orbit_label, split_t_orbit_census
from .multiplicity import (CharacterFlag, analyze, dim_hom, distinguished, g_orbit_inventory,
                           pure_inner_sum, special_orthogonal_sum)

__version__ = "0.1.0"
