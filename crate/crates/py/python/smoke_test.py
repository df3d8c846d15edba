"""Smoke test for the goldbirk extension; run after `maturin develop`."""
import json

import goldbirk


def main():
    assert goldbirk.fibonacci(24) == 46368
    assert goldbirk.zeckendorf(23866) == [22, 19, 17, 14]
    assert goldbirk.beta_expand(23866 / 46368, 10, nearest=True) == [2, 5, 7, 10]

    direct = goldbirk.birkhoff_sum(23865) / 23866
    assert abs(direct + 0.187542) < 5e-4, direct

    xs, values = goldbirk.birkhoff_graph(10, 1)
    assert xs == [0.0, 1.0] and values[0] == 0.0

    table = goldbirk.SigmaTable(4, [20, 22, 24, 26])
    assert abs(table.coefficients[0] - 0.258) < 2e-3
    est = goldbirk.estimate(23866, table)
    assert abs(est.estimate - est.oracle) < 1e-3
    assert est.exponents == [2, 5, 7, 10]

    huge = goldbirk.estimate(10**100, table)
    assert huge.oracle is None
    assert json.loads(huge.to_json())["n"] == str(10**100)

    try:
        goldbirk.tau_rational(3, 6, 0.2)
    except ValueError:
        pass
    else:
        raise AssertionError("expected a gcd error")
    print("ok")


if __name__ == "__main__":
    main()
