import pytest

from hocohom import dims as D
from hocohom.errors import InputError
from hocohom.fuchsian import FuchsianSignature, build_jq, h1_dim_n0, h1_par_dim_n0, parabolic_class_rank
from hocohom.linalg import quotient_dim
from hocohom.magnus import expand_word

SIGS = [(1, 1), (1, 2), (2, 1), (0, 3)]


def test_signature_validation():
    assert FuchsianSignature(1, 1).r == 2
    with pytest.raises(InputError):
        FuchsianSignature(1, 0)
    with pytest.raises(InputError):
        FuchsianSignature(0, 2)


def test_relator_reduces():
    for g, s in SIGS:
        assert not FuchsianSignature(g, s).relator().letters


def test_g1s1_q1():
    m = build_jq(FuchsianSignature(1, 1), 1)
    assert quotient_dim(m.jq_image, m.jq_next_image) == 2
    # the dependent parabolic is an inverse commutator: valuation two
    p = FuchsianSignature(1, 1).parabolic_words()[0]
    assert (expand_word(p, 3, 2) - 1).valuation() == 2


def test_g0s3_parabolics_fill_degree_one():
    m = build_jq(FuchsianSignature(0, 3), 1)
    assert m.parabolic_image.issubspace(m.jq_image)
    assert quotient_dim(m.jq_image, m.jq_next_image) == 0


def test_containments():
    m = build_jq(FuchsianSignature(1, 2), 2)
    assert m.i_jq_image.issubspace(m.jq_image)
    assert m.jq_next_image.issubspace(m.jq_image)


@pytest.mark.parametrize("g,s", SIGS)
@pytest.mark.parametrize("q", [1, 2, 3])
def test_graded_quotient(g, s, q):
    assert h1_par_dim_n0(FuchsianSignature(g, s), q) == D.n_g(g, q)


@pytest.mark.parametrize("g,s", SIGS)
@pytest.mark.parametrize("q", [1, 2, 3])
def test_h1_dimension(g, s, q):
    assert h1_dim_n0(FuchsianSignature(g, s), q) == D.dim_h1(g, s, 0, q)


@pytest.mark.parametrize("g,s", SIGS)
@pytest.mark.parametrize("q", [1, 2])
def test_h1_steps(g, s, q):
    sig = FuchsianSignature(g, s)
    N = D.n_g(g, q)
    assert h1_dim_n0(sig, q + 1) - h1_dim_n0(sig, q) == N * (2 * g + s - 1) - N


@pytest.mark.parametrize(
    "g,s,q,expected",
    [
        (1, 1, 2, 1),
        # rank is capped by dim J_q/IJ_q (2 and 3 here) and by s
        (0, 3, 2, 2),
        (1, 2, 1, 1),
        (1, 1, 1, 0),
    ],
)
def test_parabolic_class_rank(g, s, q, expected):
    sig = FuchsianSignature(g, s)
    rank = parabolic_class_rank(sig, q)
    assert rank == expected
    assert rank <= min(s, h1_dim_n0(sig, q))
