"""Tour of the arbitrary-precision elliptic kernel.

Run:  python demos/01_elliptic_kernel.py
"""

from fractions import Fraction

from piforge import (BigReal, agm, dk_dk, ell_e, ell_k, eta_f, nome,
                     singular_modulus, theta2, theta3, theta4)

PREC = 256
show = 50  # digits to display


def line(label, value):
    print(f"{label:<28} {value.to_decimal(show)}")


print("== AGM and the complete elliptic integrals ==")
one = BigReal.of(1, PREC)
inv_sqrt2 = 1 / BigReal.of(2, PREC).sqrt()
line("agm(1, 1/sqrt(2))", agm(one, inv_sqrt2, PREC))
line("K(1/sqrt(2))", ell_k(inv_sqrt2, PREC))
line("E(1/sqrt(2))", ell_e(inv_sqrt2, PREC))

# Legendre's relation ties K and E together; the residual is pure rounding.
k = BigReal.of(Fraction(3, 10), PREC)
kp = (1 - k * k).sqrt()
legendre = (ell_e(k, PREC) * ell_k(kp, PREC) + ell_e(kp, PREC) * ell_k(k, PREC)
            - ell_k(k, PREC) * ell_k(kp, PREC) - BigReal.pi(PREC) / 2)
print(f"\nLegendre relation residual at k=0.3: {legendre.to_decimal(8)}")

print("\n== Theta constants and singular moduli ==")
# The singular modulus k_r solves K(k')/K(k) = sqrt(r); it comes out of the
# theta quotient at the nome q = exp(-pi sqrt(r)).
for r in (1, 2, 7):
    ctx = singular_modulus(r, PREC)
    print(f"\nr = {r}")
    line("  q", ctx.q)
    line("  k_r", ctx.k)
    line("  K[r]", ctx.big_k)
    print(f"  defining residual          {ctx.defining_residual().to_decimal(8)}")

# k_2 has the published closed form sqrt(2) - 1:
ctx2 = singular_modulus(2, PREC)
diff = ctx2.k - (BigReal.of(2, PREC).sqrt() - 1)
print(f"\nk_2 - (sqrt(2)-1) = {diff.to_decimal(8)}")

print("\n== Jacobi identity as a self-check ==")
q = nome(2, PREC)
jac = theta3(q, PREC) ** 4 - theta2(q, PREC) ** 4 - theta4(q, PREC) ** 4
print(f"theta3^4 - theta2^4 - theta4^4 at q = nome(2): {jac.to_decimal(8)}")

print("\n== dK/dk and the Euler product ==")
line("dK/dk at r=2", dk_dk(ctx2))
line("f(-q) at q=nome(2)", eta_f(q, PREC))
