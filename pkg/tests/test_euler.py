import pytest

from gcdim.errors import GcdimError, NegativeConnectedDim, WindowTooSmall
from gcdim.euler import (
    DimTable,
    EulerTable,
    binomial_generalized,
    connected_dims,
    connected_euler,
    euler_from_dims,
    recompose_dims,
    recompose_euler,
)
from gcdim.flavors import EVEN, ODD, STANDARD_FLAVORS
from gcdim.tables import euler_column_name, reference_euler


def test_binomial_generalized():
    assert binomial_generalized(-1, 2) == 1
    assert binomial_generalized(-3, 2) == 6
    assert binomial_generalized(5, 0) == 1
    assert binomial_generalized(4, 2) == 6
    assert binomial_generalized(-2, 3) == -4


def test_euler_from_dims_reference_rows(euler_b10):
    ref = reference_euler()
    assert euler_b10["odd"].chi[2] == 2
    assert euler_b10["even"].chi[5] == -1
    for name, chi in euler_b10.items():
        col = ref[euler_column_name(STANDARD_FLAVORS[name], False)]
        for b in range(1, 11):
            assert chi.chi[b] == col[b], (name, b)


def test_zero_table():
    table = DimTable(ODD, connected=False, dims=[[1] + [0] * 6] + [[0] * 7 for _ in range(4)])
    chi = euler_from_dims(table, b_max=2)
    assert chi.chi == {1: 0, 2: 0}


def test_window_too_small():
    table = DimTable(ODD, connected=False, dims=[[1, 0, 0], [0, 0, 0]])
    with pytest.raises(WindowTooSmall):
        euler_from_dims(table, b_max=2)


def test_connected_euler_examples():
    chi = EulerTable(ODD, False, {1: 1, 2: 2})
    conn = connected_euler(chi)
    assert conn.chi == {1: 1, 2: 1}
    zero = EulerTable(EVEN, False, {b: 0 for b in range(1, 6)})
    assert connected_euler(zero).chi == {b: 0 for b in range(1, 6)}


def test_connected_euler_reference(euler_b10):
    ref = reference_euler()
    for name, chi in euler_b10.items():
        conn = connected_euler(chi)
        col = ref[euler_column_name(STANDARD_FLAVORS[name], True)]
        for b in range(1, 11):
            assert conn.chi[b] == col[b], (name, b)
        assert conn.chi[10] == col[10]
        assert recompose_euler(conn).chi == chi.chi


def test_connected_dims_round_trip(tables_b10):
    for name, table in tables_b10.items():
        conn = connected_dims(table)
        assert conn.connected and conn.dims[0][0] == 0
        assert all(d >= 0 for row in conn.dims for d in row)
        back = recompose_dims(conn)
        assert back.dims == table.dims, name


def test_two_chi_paths_commute(tables_b10, euler_b10):
    for name, table in tables_b10.items():
        via_dims = euler_from_dims(connected_dims(table), b_max=10)
        via_chi = connected_euler(euler_b10[name])
        assert via_dims.chi == via_chi.chi, name


def test_theta_forces_two_theta_contribution(tables_b10):
    table = tables_b10["odd"]
    conn = connected_dims(table)
    assert conn.dims[2][3] == 1  # the triple edge
    # two copies of it account for exactly one class at (4, 6)
    assert table.dims[4][6] - conn.dims[4][6] == 1


def test_negative_connected_dim_aborts():
    dims = [[0] * 8 for _ in range(5)]
    dims[0][0] = 1
    dims[2][3] = 1  # one connected candidate at b=1
    dims[4][6] = 0  # too small: two-copies term forces a negative value
    table = DimTable(ODD, connected=False, dims=dims)
    with pytest.raises(NegativeConnectedDim):
        connected_dims(table)


def test_type_guards():
    table = DimTable(ODD, connected=False, dims=[[1, 0], [0, 0]])
    conn = DimTable(ODD, connected=True, dims=[[0, 0], [0, 0]])
    with pytest.raises(GcdimError):
        connected_dims(conn)
    with pytest.raises(GcdimError):
        recompose_dims(table)
    chi = EulerTable(ODD, True, {1: 1})
    with pytest.raises(GcdimError):
        connected_euler(chi)


def test_serialisation():
    table = DimTable(ODD, connected=False, dims=[[1, 0, 0], [0, 0, 0]])
    csv_text = table.to_csv()
    assert csv_text.splitlines()[0] == "flavor,connected,v,e,dim"
    assert "odd,False,0,0,1" in csv_text
    chi = EulerTable(ODD, False, {1: 1, 2: 2})
    assert chi.to_csv().splitlines()[1] == "odd,1,1"
    assert '"chi": 2' in chi.to_json().replace("\n", " ")
