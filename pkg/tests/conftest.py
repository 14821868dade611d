import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lsekit import RectShape, SceneSpec, SeedSpec, render_scene


def square_polygon(x0, y0, x1, y1):
    """Axis-aligned rectangle polygon covering pixel centers in [x0,x1)x[y0,y1)."""
    return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float)


def square_seed(x0, y0, x1, y1, inside_sign=-1):
    return SeedSpec(polygons=(square_polygon(x0, y0, x1, y1),),
                    inside_sign=inside_sign)


def two_region_scene(size=128, obj0=40, obj1=88, io=0.2, ib=0.8):
    """Homogeneous dark square on a brighter background, with exact truth."""
    spec = SceneSpec(width=size, height=size, background=ib,
                     shapes=(RectShape(x=obj0, y=obj0, w=obj1 - obj0,
                                       h=obj1 - obj0, intensity=io),))
    return render_scene(spec)


@pytest.fixture
def a1_scene():
    """128x128, 48x48 square at 0.2 on 0.8."""
    return two_region_scene()


@pytest.fixture
def a1_seed():
    """Seed polygon crossing the object boundary."""
    return square_seed(14, 14, 76, 76)


@pytest.fixture
def outside_seed():
    """Seed polygon strictly surrounding the 48x48 object."""
    return square_seed(28, 28, 100, 100)
