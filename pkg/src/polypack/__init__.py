"""Weighted polygon packing in a balanced circular container by simulated annealing."""

from .annealer import (
    AnnealConfig,
    CampaignStats,
    SolveReport,
    accept,
    anneal,
    neighborhood_scale,
    perturb,
    random_initial_layout,
    run_campaign,
    temperature,
)
from .geometry import (
    PolarVertex,
    Point,
    PolygonState,
    PolygonStructure,
    ValidationError,
    center_distance,
    interiors_overlap,
    overlap_measure,
    point_in_polygon,
    polygon_radius,
    polygons_overlap,
    segments_intersect,
    world_vertices,
)
from .instances import builtin, load, random_rectangles, rectangle_structure, save
from .model import (
    EnergyWeights,
    Instance,
    Layout,
    center_of_mass,
    energy,
    layout_overlap,
    layout_radius,
    validate_solution,
)
from .render import render_svg

__version__ = "0.1.0"
