"""Cohomology of Fuchsian groups relative to augmentation-ideal filtrations."""

__version__ = "0.1.0"
