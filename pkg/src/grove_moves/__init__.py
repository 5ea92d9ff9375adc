"""
grove-moves - simplified groves, alternating sign triangles and spin moves
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("grove-moves")
except PackageNotFoundError:  # running from a source checkout
    __version__ = "0.0.0"
