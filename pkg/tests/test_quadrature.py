import mpmath
from mpmath import mp, mpf

from mopz.quadrature import exp_exp, tanh_sinh


def test_beta_integral_with_singular_endpoint():
    # int_0^1 x^g (1-x)^b dx with g = -0.9 is B(g+1, b+1)
    g, b = mpf("-0.9"), mpf("1.5")
    res = tanh_sinh(lambda x, dl, dh: [dl**g * dh**b], 0, 1, mpf(2) ** -170, 1)
    ref = mpmath.beta(g + 1, b + 1)
    assert abs(res.values[0] - ref) < mpf(2) ** -160 * ref


def test_componentwise_vector_integrand():
    res = tanh_sinh(lambda x, dl, dh: [mpf(1), x, x * x], -1, 2, mpf(2) ** -170, 3)
    assert [mpmath.nstr(v, 30) for v in res.values] == ["3.0", "1.5", "3.0"]


def test_exp_exp_factorial_moments():
    res = exp_exp(lambda x: [x**k * mpmath.exp(-x) for k in range(6)], mpf(2) ** -170, 6)
    for k, v in enumerate(res.values):
        assert abs(v - mpmath.factorial(k)) < mpf(2) ** -160 * mpmath.factorial(k)
    assert mp.prec == 192
