"""Magneto-optical Stern-Gerlach splitting of polarized light in a tripod EIT medium."""
from ._kernels import BACKEND
from .model import DerivedParams, Mode, Scenario, derive, load_scenario, serialize_scenario

__all__ = ["BACKEND", "DerivedParams", "Mode", "Scenario", "derive", "load_scenario", "serialize_scenario"]
__version__ = "0.1.0"
