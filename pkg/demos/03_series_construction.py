"""Constructing 1/pi^(2nu) series from scratch and verifying them digit-wise.

The solver differentiates K-powers exactly, substitutes the alpha relation,
and determines the bracket polynomial; the resulting series is then summed
and compared against g/pi^(2nu).

Run:  python demos/03_series_construction.py
"""

from piforge import build_series, replay_published, to_json, verify

PREC = 512

print("== build a fresh 1/pi^6 series at r = 7 ==")
spec = build_series(3, 7, PREC)
print(f"argument x          = {spec.x.to_decimal(20)}   (exactly 1/64)")
print(f"digits per term     = {spec.dpt():.6f}")
print(f"g                   = {spec.g.to_decimal(40)}")
print("bracket B(n) coefficients (n^0 .. n^6):")
for j, b in enumerate(spec.bracket):
    print(f"  B{j} = {b.to_decimal(40)}")

report = verify(spec, 60, PREC)
print(f"\n60 terms match g/pi^6 to {report.matched_digits:.1f} digits "
      f"(predicted {report.predicted_digits:.1f})")

print("\n== a slowly converging cousin: nu = 2 at r = 2 ==")
spec2 = build_series(2, 2, PREC)
print(f"argument x          = {spec2.x.to_decimal(20)}   (= 40 sqrt(2) - 56)")
print(f"digits per term     = {spec2.dpt():.6f}")
r2 = verify(spec2, 140, PREC)
print(f"140 terms match to {r2.matched_digits:.1f} digits")

print("\n== replay of the published series battery ==")
for rep in replay_published(PREC):
    flag = "ok " if rep.passed else "FAIL"
    print(f"[{flag}] {rep.label:<8} {rep.terms:>3} terms -> "
          f"{rep.matched_digits:7.2f} digits (threshold {rep.threshold_digits:.2f})")

print("\n== serialized spec (schema piforge/1), truncated ==")
print(to_json(build_series(1, 2, 128))[:200] + "...")
