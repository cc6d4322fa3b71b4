"""Colourings of right-angled 3-polytopes, rational homology spheres and their symmetries."""

__version__ = "0.1.0"
