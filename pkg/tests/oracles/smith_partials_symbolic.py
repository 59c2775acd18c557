"""Symbolic check of the closed-form pair-exponent partial derivatives.

The package implements V1 = dV/dy1, V2 = dV/dy2 and the mixed partial V12 for the
Gaussian-profile (Smith) pair exponent

    V(y1, y2; a) = Phi(w)/y1 + Phi(v)/y2,
    w = a/2 + log(y2/y1)/a,   v = a/2 + log(y1/y2)/a,

as hand-derived expressions. This script differentiates V symbolically with sympy,
simplifies the difference against those hand forms to zero, and prints probe values.
"""

import sympy as sp


def main():
    y1, y2, a = sp.symbols("y1 y2 a", positive=True)
    w = a / 2 + sp.log(y2 / y1) / a
    v = a / 2 + sp.log(y1 / y2) / a
    Phi = lambda t: (1 + sp.erf(t / sp.sqrt(2))) / 2
    phi = lambda t: sp.exp(-t * t / 2) / sp.sqrt(2 * sp.pi)

    V = Phi(w) / y1 + Phi(v) / y2

    # hand-derived closed forms under test
    V1_hand = -Phi(w) / y1**2 - phi(w) / (a * y1**2) + phi(v) / (a * y1 * y2)
    V2_hand = -Phi(v) / y2**2 - phi(v) / (a * y2**2) + phi(w) / (a * y1 * y2)
    V12_hand = -(v * phi(w) / (a**2 * y1**2 * y2) + w * phi(v) / (a**2 * y1 * y2**2))

    V1_sym = sp.diff(V, y1)
    V2_sym = sp.diff(V, y2)
    V12_sym = sp.diff(V1_sym, y2)

    for name, expr in [
        ("V1", sp.simplify(V1_sym - V1_hand)),
        ("V2", sp.simplify(V2_sym - V2_hand)),
        ("V12", sp.simplify(V12_sym - V12_hand)),
    ]:
        print(f"simplify(d{name}_sympy - {name}_hand) = {expr}")

    probe = {y1: sp.Rational(13, 10), y2: sp.Rational(7, 10), a: sp.Rational(11, 10)}
    for name, expr in [("V", V), ("V1", V1_sym), ("V2", V2_sym), ("V12", V12_sym)]:
        print(f"{name}(1.3, 0.7, a=1.1) = {sp.N(expr.subs(probe), 17)}")


if __name__ == "__main__":
    main()
