"""Location-based PacMan-style chase game engine over OpenStreetMap road networks."""

__version__ = "0.1.0"
