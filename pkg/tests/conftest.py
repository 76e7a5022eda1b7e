import pytest

from intprob import Frame, IntervalSystem, MassFunction


@pytest.fixture
def frame_xyz() -> Frame:
    return Frame(("x", "y", "z"))


@pytest.fixture
def ternary_mass(frame_xyz) -> MassFunction:
    """General ternary mass with incomparable focal pairs."""
    f = frame_xyz
    return MassFunction(
        f,
        {
            f.subset(["x"]): 0.2,
            f.subset(["y"]): 0.1,
            f.subset(["z"]): 0.3,
            f.subset(["x", "y"]): 0.1,
            f.subset(["y", "z"]): 0.2,
            f.full: 0.1,
        },
    )


@pytest.fixture
def contour_mass(frame_xyz) -> MassFunction:
    """Ternary mass whose Moebius-inverse table is known by hand."""
    f = frame_xyz
    return MassFunction(
        f,
        {
            f.subset(["x"]): 0.1,
            f.subset(["z"]): 0.2,
            f.subset(["x", "y"]): 0.3,
            f.subset(["x", "z"]): 0.1,
            f.full: 0.3,
        },
    )


@pytest.fixture
def interval_example(frame_xyz) -> IntervalSystem:
    """Ternary interval system with one zero-width interval."""
    return IntervalSystem(
        frame_xyz,
        lower={"x": 0.2, "y": 0.4, "z": 0.3},
        upper={"x": 0.8, "y": 1.0, "z": 0.3},
    )
