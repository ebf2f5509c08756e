"""3D index of ideal triangulations."""

from ._tdindex import (
    FORMAT_VERSIONS,
    Divergent,
    InputError,
    Series,
    basis,
    degree,
    efficiency,
    gluing_data,
    index,
    isomorphic,
    move,
    sublattice_index,
    tet_index,
    tet_index_J,
    verify_identities,
)

__all__ = [
    "FORMAT_VERSIONS",
    "Divergent",
    "InputError",
    "Series",
    "basis",
    "degree",
    "efficiency",
    "gluing_data",
    "index",
    "isomorphic",
    "move",
    "sublattice_index",
    "tet_index",
    "tet_index_J",
    "verify_identities",
]
