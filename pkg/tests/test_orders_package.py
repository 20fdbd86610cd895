import pytest

import indalg.orders as od
from indalg.orders import MixedBackends, act_endo
from indalg.orders.linalg import mat_q


def test_greens_leq_dispatch():
    a = mat_q([[1, 0], [0, 0]])
    b = mat_q([[1, 0], [0, 1]])
    assert od.greens_leq("matrix", "R", a, b)
    u = act_endo("B", (0, 0), (1, 1))
    v = act_endo("B", (0, 1), (1, 2))
    assert od.greens_leq("act", "L", u, v)


def test_mixed_backends_rejected():
    m = mat_q([[1]])
    theta = act_endo("B", (0,), (1,))
    with pytest.raises(MixedBackends):
        od.greens_leq("matrix", "R", theta, theta)
    with pytest.raises(MixedBackends):
        od.greens_leq("act", "R", m, m)
    with pytest.raises(ValueError):
        od.greens_leq("nope", "R", m, m)
    with pytest.raises(ValueError):
        od.greens_leq("matrix", "Q", m, m)


def test_pc_closure_dispatch():
    assert od.pc_closure("matrix", [(2, 0), (0, 2)]) == ((1, 0), (0, 1))
    assert od.pc_closure("matrix", []) == ()
    assert od.pc_closure("act", [(5, 2), (0, 0)]) == (0, 2)
    with pytest.raises(ValueError):
        od.pc_closure("nope", [])
