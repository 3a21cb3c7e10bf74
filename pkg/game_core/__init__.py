"""
Game core

Parsing, serialization, validation and generation of perfect-information
game trees. Import the submodules directly; ``models.game`` depends on
``game_core.errors`` so this package keeps its top level import-free.
"""

__version__ = "1.0.0"
