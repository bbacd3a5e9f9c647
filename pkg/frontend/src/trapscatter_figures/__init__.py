"""Figure rendering for trapscatter CSV datasets (no physics recomputed)."""

__version__ = "0.1.0"

from .csvdata import Dataset, DatasetError, load_dataset
from .render import RECIPES, FigureRecipe, render

__all__ = ["Dataset", "DatasetError", "FigureRecipe", "RECIPES", "load_dataset",
           "render"]
