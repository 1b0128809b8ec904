"""Certificates for the ruled surfaces, the disk F and their incidence with isometric spheres."""
from .lemmas import run_lemma4
from .system import run_prop4

__all__ = ["run_lemma4", "run_prop4"]
