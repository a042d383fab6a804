#!/usr/bin/env python3
"""Generates frozen reference data for the LP solver tests.

Random bounded LPs are solved with scipy (HiGHS) and written as a C++
include file holding the instance data and the reference optimal values.
Run from the tests/ directory; the output is committed so the C++ tests
do not depend on Python.
"""
import numpy as np
from scipy.optimize import linprog

rng = np.random.default_rng(20240817)

cases = []
attempts = 0
while len(cases) < 40 and attempts < 500:
    attempts += 1
    n = rng.integers(2, 7)
    m = rng.integers(1, 6)
    c = rng.integers(-9, 10, size=n).astype(float)
    A = rng.integers(-4, 5, size=(m, n)).astype(float)
    senses = rng.choice(["L", "G", "E"], size=m, p=[0.5, 0.3, 0.2])
    # Build rhs from a random interior point so most cases are feasible.
    x0 = rng.uniform(0.0, 3.0, size=n)
    b = A @ x0
    b += np.where(senses == "L", rng.uniform(0.0, 2.0, size=m), 0.0)
    b -= np.where(senses == "G", rng.uniform(0.0, 2.0, size=m), 0.0)
    # Occasionally force infeasibility.
    force_infeasible = rng.random() < 0.15
    if force_infeasible and m >= 2:
        A[1] = A[0]
        senses[0], senses[1] = "G", "L"
        b[0] = b[1] + 5.0

    lb = np.zeros(n)
    ub = rng.uniform(2.0, 8.0, size=n)

    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for i in range(m):
        if senses[i] == "L":
            A_ub.append(A[i]); b_ub.append(b[i])
        elif senses[i] == "G":
            A_ub.append(-A[i]); b_ub.append(-b[i])
        else:
            A_eq.append(A[i]); b_eq.append(b[i])
    res = linprog(c,
                  A_ub=np.array(A_ub) if A_ub else None,
                  b_ub=np.array(b_ub) if b_ub else None,
                  A_eq=np.array(A_eq) if A_eq else None,
                  b_eq=np.array(b_eq) if b_eq else None,
                  bounds=list(zip(lb, ub)), method="highs")
    if res.status == 0:
        status, obj = "optimal", float(res.fun)
    elif res.status == 2:
        status, obj = "infeasible", 0.0
    else:
        continue
    cases.append((n, m, c, A, senses, b, ub, status, obj))

with open("lp_reference.inc", "w") as f:
    f.write("// Generated by gen_lp_reference.py (scipy HiGHS reference); do not edit.\n")
    f.write("struct LpRefCase {\n")
    f.write("    int n, m;\n")
    f.write("    std::vector<double> c, ub, b;\n")
    f.write("    std::vector<std::vector<double>> a;\n")
    f.write("    std::string senses;\n")
    f.write("    bool optimal;\n")
    f.write("    double objective;\n")
    f.write("};\n")
    f.write("inline std::vector<LpRefCase> lp_reference_cases() {\n")
    f.write("    return {\n")
    for (n, m, c, A, senses, b, ub, status, obj) in cases:
        row_list = ",".join(
            "{" + ",".join(repr(float(v)) for v in A[i]) + "}" for i in range(m))
        f.write("        {%d, %d, {%s}, {%s}, {%s}, {%s}, \"%s\", %s, %r},\n" % (
            n, m,
            ",".join(repr(float(v)) for v in c),
            ",".join(repr(float(v)) for v in ub),
            ",".join(repr(float(v)) for v in b),
            row_list,
            "".join(senses),
            "true" if status == "optimal" else "false",
            obj))
    f.write("    };\n}\n")
print(f"wrote {len(cases)} cases")
