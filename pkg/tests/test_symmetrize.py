import numpy as np
import pytest

from avncheck.hilbert import all_permutations, build_operator, parse_label, permutation_operator
from avncheck.linalg import commutator, distance, is_eigenvector
from avncheck.scenarios import rectangle_commutator_coefficient
from avncheck.states import ghz_spin, psi_prime, psi_tilde
from avncheck.symmetrize import orbit_size, sym, symmetrize
from oracles import pauli_string

POSITIONAL = ["X_h Y_t Y_y", "Y_h X_t Y_y", "Y_h Y_t X_y", "X_h X_t X_y"]
THREE_PARTICLE = ["XXX", "XYY", "IXX", "X_h Y_h Y_h", "I_h I_t I_y"] + POSITIONAL


def test_xxx_is_its_own_orbit():
    s = symmetrize("XXX")
    assert [str(t) for t in s.terms] == ["XXX"]


def test_xyy_orbit():
    s = symmetrize("XYY")
    assert sorted(str(t) for t in s.terms) == ["XYY", "YXY", "YYX"]
    oracle = pauli_string("XYY") + pauli_string("YXY") + pauli_string("YYX")
    assert np.array_equal(s.matrix.matrix, oracle)


def test_positional_orbit_has_six_terms():
    assert len(symmetrize("X_h Y_t Y_y").terms) == 6


@pytest.mark.parametrize("text,size", [("XXX", 1), ("IXX", 3), ("X_h Y_t Y_y", 6), ("IX", 2), ("XX", 1)])
def test_orbit_size(text, size):
    assert orbit_size(parse_label(text)) == size


@pytest.mark.parametrize("text", THREE_PARTICLE)
def test_orbit_stabilizer(text):
    label = parse_label(text)
    stab = sum(1 for p in all_permutations() if label.permuted(p) == label)
    assert orbit_size(label) * stab == 6


@pytest.mark.parametrize("text", THREE_PARTICLE)
def test_symmetrized_commutes_with_exchange(text):
    label = parse_label(text)
    m = sym(label)
    for p in all_permutations():
        P = permutation_operator(p, spin_only=label.spin_only)
        assert distance(P @ m @ P.adjoint(), m) < 1e-12


@pytest.mark.parametrize("text", THREE_PARTICLE)
def test_symmetrization_idempotent_on_orbit(text):
    label = parse_label(text)
    m = sym(label)
    for t in symmetrize(label).terms:
        assert np.array_equal(sym(t).matrix, m.matrix)
    assert m.is_hermitian()


def test_averaged_accessor():
    s = symmetrize("XYY")
    assert distance(s.averaged * 3, s.matrix) < 1e-15


def test_symmetrized_ghz_eigenvalue_three():
    assert is_eigenvector(sym("XYY"), ghz_spin(), 3, 1e-10)
    assert is_eigenvector(sym("X_h Y_h Y_h"), psi_prime(), 3, 1e-10)


@pytest.mark.parametrize("text,value", list(zip(POSITIONAL, (1, 1, 1, -1))))
def test_positional_eigenvalues(text, value):
    assert is_eigenvector(sym(text), psi_tilde(), value, 1e-10)


@pytest.mark.parametrize("s,p", [("IX", "XX"), ("IZ", "ZZ"), ("XZ", "YY")])
def test_rectangle_row_identities(s, p):
    assert distance(sym(s) @ build_operator(parse_label(p)), sym(s)) < 1e-12


def test_rectangle_first_commutator_as_claimed():
    assert distance(commutator(sym("IX"), sym("IZ")), sym("IY") * -2j) < 1e-12


@pytest.mark.parametrize("a,b,c,coeff", [("IX", "XZ", "XY", -2j), ("IZ", "XZ", "YZ", 2j)])
def test_rectangle_commutators_carry_factor_i(a, b, c, coeff):
    # the claimed coefficients (-2 and +2) lack the factor i; see the
    # acceptance module for the literal claims
    assert distance(commutator(sym(a), sym(b)), sym(c) * coeff) < 1e-12
    assert rectangle_commutator_coefficient(a, b, c) == pytest.approx(coeff)
    lhs = commutator(sym(a), sym(b))
    assert distance(lhs.adjoint(), -lhs) < 1e-12  # anti-Hermitian, unlike any real multiple of sym(c)


@pytest.mark.parametrize("a,b", [("IX", "IZ"), ("IX", "XZ"), ("IZ", "XZ")])
def test_rectangle_first_column_does_not_commute(a, b):
    assert commutator(sym(a), sym(b)).norm() > 0.5
