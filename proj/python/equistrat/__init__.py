"""Python access to the equistrat core.

Every function accepts either spec text or a path to a spec file.
"""

import json
import os

from . import _core
from ._core import EquistratError

__all__ = [
    "EquistratError",
    "normalize_spec",
    "lattice",
    "lattice_dot",
    "equivariant_dimension",
    "generator_count",
    "basis_dump",
    "analyze",
    "probe",
]


def _text(spec):
    if "\n" not in spec and "=" not in spec and os.path.exists(spec):
        with open(spec, encoding="utf-8") as f:
            return f.read()
    return spec


def normalize_spec(spec):
    return _core.normalize_spec(_text(spec))


def lattice(spec):
    return json.loads(_core.lattice_json(_text(spec)))


def lattice_dot(spec):
    return _core.lattice_dot(_text(spec))


def equivariant_dimension(spec, degree):
    return _core.equivariant_dimension(_text(spec), degree)


def generator_count(spec, degree):
    return _core.generator_count(_text(spec), degree)


def basis_dump(spec, degree):
    return _core.basis_dump(_text(spec), degree)


def analyze(spec, seed=None, samples=None):
    return json.loads(_core.analyze_json(_text(spec), seed, samples))


def probe(spec, seed=None, draws=None):
    return json.loads(_core.probe_json(_text(spec), seed, draws))
