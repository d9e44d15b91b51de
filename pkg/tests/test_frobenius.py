from vknot.frobenius import BASIS, ONE, X, delta, m, tau


def tensor_tau(d):
    out = {}
    for (i, j), v in d.items():
        out[(i, j)] = v * (-1) ** (i + j)
    return out


def test_products():
    assert m(X, X) == m(X, X).scale(0)
    assert m(ONE, X) == X and m(ONE, ONE) == ONE
    assert delta(X) == {(1, 1): 1}
    assert delta(ONE) == {(0, 1): 1, (1, 0): 1}


def test_tau_conjugates_m():
    for u in BASIS:
        for v in BASIS:
            assert tau(m(tau(u), tau(v))) == m(u, v)


def test_tau_anticonjugates_delta():
    for u in BASIS:
        lhs = tensor_tau(delta(tau(u)))
        assert lhs == {k: -v for k, v in delta(u).items()}
