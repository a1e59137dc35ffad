"""Input validation helpers shared by the functional core and the estimators."""

import numpy as np


class LatticeMismatchError(ValueError):
    """Two objects live on different lattices, or an array has the wrong length."""


class RegionError(ValueError):
    """A region is empty, full, or otherwise unusable for the requested operation."""


def check_length(values, n_sites, name="vector"):
    if values.ndim != 1 or values.shape[0] != n_sites:
        raise LatticeMismatchError(
            f"{name} has shape {values.shape}, expected ({n_sites},)")
    return values


def as_real_vector(values, n_sites, name="vector"):
    arr = np.asarray(values)
    if np.iscomplexobj(arr):
        if np.any(arr.imag != 0):
            raise ValueError(f"{name} must be real-valued")
        arr = arr.real
    arr = np.array(arr, dtype=float)
    check_length(arr, n_sites, name)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def as_complex_vector(values, n_sites, name="vector"):
    arr = np.array(values, dtype=complex)
    check_length(arr, n_sites, name)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def check_same_lattice(*objs):
    """Raise unless every object carries the same ``lattice``."""
    first = objs[0].lattice
    for obj in objs[1:]:
        if obj.lattice != first:
            raise LatticeMismatchError(
                f"lattice mismatch: {first} vs {obj.lattice}")
    return first


def check_nonempty(items, name="list"):
    items = list(items)
    if not items:
        raise ValueError(f"{name} must be nonempty")
    return items
