#!/usr/bin/env python3
"""Generate reference_values.json from an independent solver stack.

Reads the bundled MATPOWER-format case files with its own tiny parser,
solves the AC power flow with a plain Newton-Raphson loop, and solves the
AC optimal power flow with scipy's trust-constr using finite-difference
derivatives. Nothing here shares code with the C++ library; the outputs
are frozen into reference_values.json which the test suites read.

Usage: python3 make_reference.py  (from this directory)
"""

import json
import re
import sys
import numpy as np
from scipy.optimize import minimize, NonlinearConstraint, LinearConstraint


def parse_case(path):
    text = open(path).read()
    case = {}
    m = re.search(r"mpc\.baseMVA\s*=\s*([0-9eE.+-]+)\s*;", text)
    case["baseMVA"] = float(m.group(1))
    for table in ("bus", "gen", "branch", "gencost"):
        m = re.search(r"mpc\.%s\s*=\s*\[(.*?)\];" % table, text, re.S)
        rows = []
        for line in m.group(1).splitlines():
            line = line.split("%")[0].strip().rstrip(";")
            if not line:
                continue
            rows.append([float(tok) for tok in line.split()])
        case[table] = np.array(rows)
    return case


def build_ybus(case):
    bus, branch = case["bus"], case["branch"]
    base = case["baseMVA"]
    nb = bus.shape[0]
    id2i = {int(b[0]): i for i, b in enumerate(bus)}
    Y = np.zeros((nb, nb), dtype=complex)
    for br in branch:
        if br.shape[0] > 10 and br[10] == 0:
            continue
        f, t = id2i[int(br[0])], id2i[int(br[1])]
        r, x, b = br[2], br[3], br[4]
        tap = br[8] if br[8] != 0 else 1.0
        shift = np.deg2rad(br[9])
        ys = 1.0 / complex(r, x)
        tc = tap * np.exp(1j * shift)
        Y[f, f] += (ys + 1j * b / 2) / (tap * tap)
        Y[t, t] += ys + 1j * b / 2
        Y[f, t] += -ys / np.conj(tc)
        Y[t, f] += -ys / tc
    for i, b in enumerate(bus):
        Y[i, i] += complex(b[4], b[5]) / base
    return Y, id2i


def injections(Y, vm, va):
    V = vm * np.exp(1j * va)
    return V * np.conj(Y @ V)


def newton_pf(case, tol=1e-10, maxit=30, flat=True):
    """Flat-start Newton-Raphson power flow; returns (vm, va, iters, resid)."""
    bus, gen = case["bus"], case["gen"]
    base = case["baseMVA"]
    Y, id2i = build_ybus(case)
    nb = bus.shape[0]
    btype = bus[:, 1].astype(int)
    slack = int(np.where(btype == 3)[0][0])
    pv = [i for i in range(nb) if btype[i] == 2]
    pq = [i for i in range(nb) if btype[i] == 1]

    pg = np.zeros(nb)
    qg = np.zeros(nb)
    vset = np.ones(nb)
    for g in gen:
        if g[7] == 0:
            continue
        i = id2i[int(g[0])]
        pg[i] += g[1]
        vset[i] = g[5]
    pspec = (pg - bus[:, 2]) / base
    qspec = (qg - bus[:, 3]) / base

    vm = np.ones(nb) if flat else bus[:, 7].copy()
    vm[slack] = vset[slack] if vset[slack] != 1.0 else bus[np.where(btype == 3)[0][0], 7]
    vm[slack] = vset[slack]
    for i in pv:
        vm[i] = vset[i]
    va = np.zeros(nb)
    va[slack] = np.deg2rad(bus[slack, 8])

    pvpq = pv + pq
    for it in range(1, maxit + 1):
        S = injections(Y, vm, va)
        dP = pspec[pvpq] - S.real[pvpq]
        dQ = qspec[pq] - S.imag[pq]
        mis = np.concatenate([dP, dQ])
        resid = np.max(np.abs(mis)) if mis.size else 0.0
        if resid < tol:
            return vm, va, it - 1, resid
        # numeric Jacobian (independent of any analytic formulas)
        n = len(pvpq) + len(pq)
        J = np.zeros((n, n))
        h = 1e-7
        xs = np.concatenate([va[pvpq], vm[pq]])

        def mismatch(x):
            va2 = va.copy()
            vm2 = vm.copy()
            va2[pvpq] = x[: len(pvpq)]
            vm2[pq] = x[len(pvpq):]
            S2 = injections(Y, vm2, va2)
            return np.concatenate([S2.real[pvpq] - pspec[pvpq], S2.imag[pq] - qspec[pq]])

        f0 = mismatch(xs)
        for k in range(n):
            xp = xs.copy()
            xp[k] += h
            J[:, k] = (mismatch(xp) - f0) / h
        dx = np.linalg.solve(J, -f0)
        va[pvpq] += dx[: len(pvpq)]
        vm[pq] += dx[len(pvpq):]
    return vm, va, maxit, resid


def solve_opf(case, verbose=False):
    """AC-OPF with scipy trust-constr, finite-difference derivatives."""
    bus, gen, branch, gencost = case["bus"], case["gen"], case["branch"], case["gencost"]
    base = case["baseMVA"]
    Y, id2i = build_ybus(case)
    nb, ng = bus.shape[0], gen.shape[0]
    slack = int(np.where(bus[:, 1] == 3)[0][0])

    Cg = np.zeros((nb, ng))
    for j, g in enumerate(gen):
        Cg[id2i[int(g[0])], j] = 1.0

    # x = [va, vm, pg, qg] in rad / pu
    def split(x):
        return x[:nb], x[nb:2 * nb], x[2 * nb:2 * nb + ng], x[2 * nb + ng:]

    def cost(x):
        _, _, pg, _ = split(x)
        p = pg * base
        return float(np.sum(gencost[:, 4] * p ** 2 + gencost[:, 5] * p + gencost[:, 6]))

    def balance(x):
        va, vm, pg, qg = split(x)
        S = injections(Y, vm, va)
        gP = S.real - (Cg @ pg) + bus[:, 2] / base
        gQ = S.imag - (Cg @ qg) + bus[:, 3] / base
        return np.concatenate([gP, gQ])

    lb = np.concatenate([
        np.full(nb, -np.pi), bus[:, 12], gen[:, 9] / base, gen[:, 4] / base])
    ub = np.concatenate([
        np.full(nb, np.pi), bus[:, 11], gen[:, 8] / base, gen[:, 3] / base])
    lb[slack] = ub[slack] = np.deg2rad(bus[slack, 8])

    cons = [NonlinearConstraint(balance, 0.0, 0.0, jac="3-point")]

    limited = [k for k in range(branch.shape[0]) if branch[k, 5] > 0]
    if limited:
        rows = []
        for k in limited:
            br = branch[k]
            f, t = id2i[int(br[0])], id2i[int(br[1])]
            r, x_, b = br[2], br[3], br[4]
            tap = br[8] if br[8] != 0 else 1.0
            shift = np.deg2rad(br[9])
            ys = 1.0 / complex(r, x_)
            tc = tap * np.exp(1j * shift)
            yff = (ys + 1j * b / 2) / (tap * tap)
            yft = -ys / np.conj(tc)
            ytf = -ys / tc
            ytt = ys + 1j * b / 2
            rows.append((f, t, yff, yft, ytf, ytt, (br[5] / base) ** 2))

        def flows(x):
            va, vm, pg, qg = split(x)
            V = vm * np.exp(1j * va)
            out = []
            for f, t, yff, yft, ytf, ytt, _ in rows:
                Sf = V[f] * np.conj(yff * V[f] + yft * V[t])
                St = V[t] * np.conj(ytf * V[f] + ytt * V[t])
                out += [abs(Sf) ** 2, abs(St) ** 2]
            return np.array(out)

        fmax = np.array([row[6] for row in rows for _ in (0, 1)])
        cons.append(NonlinearConstraint(flows, -np.inf, fmax, jac="3-point"))

    vm0, va0, _, _ = newton_pf(case)
    pg0 = np.clip(gen[:, 1] / base, gen[:, 9] / base, gen[:, 8] / base)
    qg0 = np.clip(gen[:, 2] / base, gen[:, 4] / base, gen[:, 3] / base)
    x0 = np.concatenate([va0, vm0, pg0, qg0])
    x0 = np.minimum(np.maximum(x0, lb + 1e-6), ub - 1e-6)
    x0[slack] = np.deg2rad(bus[slack, 8])

    res = minimize(cost, x0, method="trust-constr", constraints=cons,
                   bounds=list(zip(lb, ub)), jac="3-point",
                   options={"gtol": 1e-9, "xtol": 1e-12, "maxiter": 3000,
                            "verbose": 3 if verbose else 0})

    # polish with SLSQP; keep whichever feasible point is cheaper
    best_x, best_f = res.x, cost(res.x)
    slsqp_cons = [{"type": "eq", "fun": balance}]
    if limited:
        slsqp_cons.append({"type": "ineq", "fun": lambda x: fmax - flows(x)})
    def feasible(x, tol=1e-9):
        if np.max(np.abs(balance(x))) > tol:
            return False
        if limited and np.max(flows(x) - fmax) > tol:
            return False
        return bool(np.all(x > lb - tol) and np.all(x < ub + tol))

    for start in (res.x, x0):
        r2 = minimize(cost, start, method="SLSQP", bounds=list(zip(lb, ub)),
                      constraints=slsqp_cons,
                      options={"ftol": 1e-12, "maxiter": 800})
        if feasible(r2.x) and cost(r2.x) < best_f:
            best_x, best_f = r2.x, cost(r2.x)

    va, vm, pg, qg = split(best_x)
    bal = balance(best_x)
    return {
        "objective": best_f,
        "max_balance_residual": float(np.max(np.abs(bal))),
        "pg_mw": (pg * base).tolist(),
        "qg_mvar": (qg * base).tolist(),
        "vm": vm.tolist(),
        "va_rad": va.tolist(),
        "success": bool(np.max(np.abs(bal)) < 1e-8),
    }


def main():
    out = {"generator": "scipy trust-constr + finite differences",
           "cases": {}}
    for name in ("case14", "case30"):
        case = parse_case("../../data/%s.m" % name)
        vm, va, iters, resid = newton_pf(case)
        opf = solve_opf(case)
        print("%s: pf iters=%d resid=%.3e  opf obj=%.6f  balresid=%.2e success=%s"
              % (name, iters, resid, opf["objective"], opf["max_balance_residual"],
                 opf["success"]))
        out["cases"][name] = {
            "n_bus": int(case["bus"].shape[0]),
            "n_branch": int(case["branch"].shape[0]),
            "n_gen": int(case["gen"].shape[0]),
            "total_pd_mw": float(np.sum(case["bus"][:, 2])),
            "pf_flat_start_iterations": iters,
            "pf_residual": resid,
            "opf_objective": opf["objective"],
            "opf_pg_mw": opf["pg_mw"],
            "opf_vm": opf["vm"],
        }

    # uniform load increase: monotonicity reference for the 14-bus case
    case = parse_case("../../data/case14.m")
    case["bus"][:, 2] *= 1.1
    case["bus"][:, 3] *= 1.1
    opf = solve_opf(case)
    print("case14 x1.1 load: obj=%.6f success=%s" % (opf["objective"], opf["success"]))
    out["cases"]["case14_load_x1.1"] = {"opf_objective": opf["objective"]}

    with open("reference_values.json", "w") as f:
        json.dump(out, f, indent=1)
    print("wrote reference_values.json")


if __name__ == "__main__":
    sys.exit(main())
