"""The four reference setups used throughout the tests."""
from descheck.grading import EquivariantSetup
from descheck.polyring import parse_poly

W1 = EquivariantSetup.build(1, (), ("x", "y"), [1, -1])
W2 = EquivariantSetup.build(1, (), ("z",), [1])
W3 = EquivariantSetup.build(0, (2,), ("x1", "x2"), [1, 1])
_N4 = ("x1", "x2", "y1", "y2")
W4_FREE = EquivariantSetup.build(1, (), _N4, [1, 1, -1, -1])
W4 = EquivariantSetup.build(1, (), _N4, [1, 1, -1, -1], [parse_poly("x1*y1 + x2*y2", _N4)])


def P(text, setup):
    return parse_poly(text, setup.names)
