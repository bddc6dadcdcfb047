"""Acceptance criteria, one check per criterion, at the stated tolerances.

Run under pytest for pass/fail (the summary lines are printed at the end of
the session by conftest.py), or directly as a script:

    python tests/test_acceptance.py
"""

import csv
import io
import json
import math
import subprocess
import sys
import time

import pytest

from ellclausen import (
    Family,
    Modulus,
    boundary_constant,
    circular_cl,
    circular_limit_constant,
    degeneration_report,
    elliptic_cl,
    hyperbolic_cl,
    hyperbolic_limit_constant,
    kernel_coeffs_lambert,
    kernel_coeffs_taylor,
    s_transform_residual,
    theta1,
    theta1_normalized,
    theta1_product,
    verify_recursion,
    zeta_int,
)

RESULTS = {}

X_GRID = [0.5, 1.0, math.pi, 5.0]
V_GRID = [0.1 * i for i in range(1, 10)]
T_GRID = [0.5, 1.0, 2.0, 5.0]


def record(number, ok, detail):
    RESULTS[number] = (bool(ok), detail)
    return ok


def criterion_1():
    worst = 0.0
    for n in (2, 3, 4):
        for x in X_GRID:
            worst = max(worst, abs(elliptic_cl(n, x, 5.0).value - circular_cl(n, x).value))
    return record(1, worst <= 1e-10, f"max |ECl_n(x; 5i) - Cl_n(x)| = {worst:.3e} (bound 1e-10)")


def criterion_2():
    r3 = max(abs(boundary_constant(m, 3.0).value - zeta_int(2 * m + 1).value) for m in range(1, 5))
    r5 = max(abs(boundary_constant(m, 5.0).value - zeta_int(2 * m + 1).value) for m in range(1, 5))
    ok = r3 <= 5e-8 and r5 <= 1e-12
    return record(2, ok, f"max residual t=3: {r3:.3e} (bound 5e-8); t=5: {r5:.3e} (bound 1e-12)")


def criterion_3():
    worst = 0.0
    for m in range(1, 5):
        ratio = hyperbolic_limit_constant(m) / circular_limit_constant(m)
        worst = max(worst, abs(ratio / 2.0 ** (1 - 2 * m) - 1))
    note = degeneration_report(4, [2.0, 3.0, 5.0]).note
    ok = worst <= 1e-15 and "2^(1-2m)" in note
    return record(3, ok, f"max relative ratio error {worst:.1e} (bound 1e-15); note: {note}")


def criterion_4():
    parts = []
    ok = True
    for fam in (Family.circular(), Family.elliptic(1.0), Family.hyperbolic()):
        rep = verify_recursion(fam, 4, [0.5, 1.0, 2.0])
        good = rep.max_fd() <= 1e-6 and rep.max_quad() <= 1e-8
        ok = ok and good
        parts.append(f"{fam}: fd {rep.max_fd():.1e}, quad {rep.max_quad():.1e}")
    # one verify_recursion call per family: the lifts are the same functions
    return record(4, ok, "; ".join(parts) + " (bounds 1e-6, 1e-8)")


def criterion_5():
    worst = 0.0
    for t in (0.75, 1.0, 2.0, 5.0):
        a = kernel_coeffs_taylor(t, 4)
        b = kernel_coeffs_lambert(t, 4)
        worst = max(worst, max(abs(a[m] - b[m]) for m in range(1, 5)))
    c2_i = kernel_coeffs_lambert(1.0, 1)[1]
    c2_50 = kernel_coeffs_lambert(50.0, 1)[1]
    # 3.2898681 is 2 zeta(2) = pi^2/3 truncated to 8 digits; the 1e-9 tolerance
    # is applied to the constant it abbreviates
    ok = worst <= 1e-7 and abs(c2_i - 3.1415927) <= 1e-6 and abs(c2_50 - math.pi ** 2 / 3) <= 1e-9
    return record(5, ok, (
        f"max |taylor - lambert| = {worst:.2e} (bound 1e-7); c2(i) = {c2_i:.10f}; "
        f"|c2(50i) - pi^2/3| = {abs(c2_50 - math.pi ** 2 / 3):.1e} (bound 1e-9)"
    ))


def _theta_identities():
    odd = per = sp = st = 0.0
    for t in T_GRID:
        mod = Modulus(t)
        for v in V_GRID:
            a = theta1(v, mod).value
            odd = max(odd, abs(theta1(-v, mod).value + a))
            per = max(per, abs(theta1(v + 1, mod).value + a))
            sp = max(sp, abs(a - theta1_product(v, mod)))
            st = max(st, s_transform_residual(v, mod))
    ok = sp <= 1e-12 and odd <= 1e-13 and per <= 1e-13 and st <= 1e-11
    return ok, f"series/product {sp:.1e}, oddness {odd:.1e}, periodicity {per:.1e}, S-transform {st:.1e}"


def _theta_sup_norm(ts=(2.0, 3.0, 5.0)):
    out = []
    for t in ts:
        mod = Modulus(t)
        sup = max(abs(theta1_normalized(i / 1000, mod).value - 2 * math.sin(math.pi * i / 1000))
                  for i in range(1001))
        bound = 5 * mod.q ** 2 + 1e-13
        out.append((t, sup, bound, sup <= bound))
    return out


def criterion_6():
    ok_id, detail = _theta_identities()
    sup = _theta_sup_norm()
    ok_sup = all(row[3] for row in sup)
    sup_txt = ", ".join(f"t={t:g}: {s:.3e} vs {b:.3e}" for t, s, b, _ in sup)
    return record(6, ok_id and ok_sup, f"{detail}; sup |thetahat - 2 sin| vs 5q^2+1e-13: {sup_txt}")


def criterion_7():
    cons = 0.0
    for t in (0.75, 1.0, 2.0):
        for m in (1, 2, 3):
            cons = max(cons, abs(boundary_constant(m, t).value - elliptic_cl(2 * m + 1, 0.0, t).value))
    dual = 0.0
    for t in (0.75, 1.0, 2.0):
        for x in X_GRID:
            dual = max(dual, abs(elliptic_cl(1, x, t, route="theta").value
                                 - elliptic_cl(1, x, t, route="fourier").value))
    ok = cons <= 1e-12 and dual <= 1e-9
    return record(7, ok, f"B vs ECl(0): {cons:.1e} (bound 1e-12); ECl_1 routes: {dual:.1e} (bound 1e-9)")


def criterion_8():
    checks = [
        ("Cl2(pi/2)", abs(circular_cl(2, math.pi / 2).value - 0.9159655942), 1e-9),
        ("Cl1(pi/3)", abs(circular_cl(1, math.pi / 3).value), 1e-14),
        ("B3(i)", abs(boundary_constant(1, 1.0).value - 1.2057997), 1e-6),
        ("HCl2(0)", abs(hyperbolic_cl(2, 0.0).value - zeta_int(2).value), 1e-12),
    ]
    ok = all(err <= tol for _, err, tol in checks)
    return record(8, ok, ", ".join(f"{name} err {err:.1e} (tol {tol:g})" for name, err, tol in checks))


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "ellclausen", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout


def criterion_9():
    notes = []
    code, out = _cli("verify", "all", "--tau-im", "1")
    ok = code == 0
    notes.append(f"verify all exit {code}")
    malformed = [
        ("table", "--family", "circular", "--order", "2", "--x-min", "0", "--x-max", "1", "--steps", "1"),
        ("kernel", "--coeffs", "9"),
        ("eval", "--family", "elliptic", "--order", "1", "--x", "1"),
        ("eval", "--family", "circular", "--order", "1", "--x", "1", "--tau", "1j"),
        ("bogus",),
    ]
    codes = [_cli(*a)[0] for a in malformed]
    ok = ok and all(c == 2 for c in codes)
    notes.append(f"malformed exits {codes}")
    code3, _ = _cli("eval", "--family", "circular", "--order", "1", "--x", "0")
    ok = ok and code3 == 3
    notes.append(f"Cl1(0) exit {code3}")
    stable = True
    for args, kind in [
        (("eval", "--family", "circular", "--order", "2", "--x", "1.5707963"), "json"),
        (("kernel", "--coeffs", "4", "--tau-im", "1"), "json"),
        (("verify", "all", "--tau-im", "1"), "json"),
        (("table", "--family", "circular", "--order", "1", "--x-min", "0", "--x-max", "6.2831853",
          "--steps", "9"), "csv"),
    ]:
        first, second = _cli(*args), _cli(*args)
        stable = stable and first == second
        if kind == "json":
            json.loads(first[1])
        else:
            widths = {len(row) for row in csv.reader(io.StringIO(first[1]))}
            stable = stable and widths == {4}
    ok = ok and stable
    notes.append("outputs parse and are byte-stable" if stable else "outputs NOT stable")
    return record(9, ok, "; ".join(notes))


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def summary_lines():
    lines = []
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        lines.append(f"CRITERION {number}: {'PASS' if ok else 'FAIL'} | {detail}")
    return lines


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    assert CRITERIA[number](), RESULTS[number][1]


def test_criterion_6_identities_alone():
    ok, detail = _theta_identities()
    assert ok, detail


@pytest.mark.parametrize("t", [2.0, 3.0, 5.0])
def test_criterion_6_sup_norm(t):
    (_, sup, bound, ok), = _theta_sup_norm((t,))
    assert ok, f"sup |thetahat_1 - 2 sin(pi v)| = {sup:.4e} > 5 q^2 + 1e-13 = {bound:.4e} at t = {t}"


if __name__ == "__main__":
    start = time.perf_counter()
    for fn in CRITERIA.values():
        fn()
    print("\n".join(summary_lines()))
    print(f"elapsed {time.perf_counter() - start:.1f} s")
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
