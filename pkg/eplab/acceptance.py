# encoding: utf-8
u"""
 Checks run by `verify`. Each returns a JSON-ready dict with a `passed`
 flag; none raises on a failed check.

     exactness     roots ∪ decoupled poles against the direct spectrum
     sweep         the same over random instances, timed
     probabilities uniform and grouped α exact, Σα = 1
     born          born α against the cell masses of the intermediate density
     beat          3σ frequencies over many seeds, visited vs mixed density
     alignment     the coupling-made wells of the two-well instance
     hierarchy     level-2 roots against the level-1 truncated spectrum
"""
import time

import numpy as np

from .assembly import reconstruct_states
from .beat import MAX_SEED, simulate_beat, visited_within_bounds, within_bounds
from .effective import assemble_ep, ep_well_alignment, recurse_ep
from .model import Grid
from .oracle import (TWO_WELL_TAU, compare_spectra, direct_spectrum, random_problem,
                     state_residual, two_well_problem)
from .realizations import (BORN, GROUPED, UNIFORM, Realization, RealizationList,
                           RealizationSet, born_match, cell_masses, group_realizations,
                           mix_density, probabilities)
from .spectrum import count_accounting, find_roots, scan_roots
from .truncated import solve_truncated

RESIDUAL_LIMIT = 1e-6
EXACTNESS_TOL = 1e-7
SWEEP_BUDGET = 60.0  # seconds for the random sweep
PROBABILITY_TOL = 1e-12
BEAT_CYCLES = 100000
BEAT_SEEDS = 20
BEAT_MIN_PASSING = 19
BEAT_BUDGET = 5.0  # seconds per trajectory
HIERARCHY_SIZES = (2, 3, 4, 5, 6)


def check_instance(spec, v, run, tolerances, scan_samples=0):
    """Exactness, accounting and residual checks on one problem.

    The characteristic scan runs only when scan_samples is positive.
    """
    include_cross = run["cross_couplings"]
    method = run["eigensolver"]
    trunc = solve_truncated(spec, v, include_cross, method=method)
    ep = assemble_ep(trunc, v, spec, include_cross, **tolerances)
    sr = find_roots(ep, method=method)
    accounting = count_accounting(sr)
    direct = direct_spectrum(spec, v, include_cross, cap=run["oracle_cap"], method=method)
    exactness = compare_spectra(sr.all_energies, direct.energies, EXACTNESS_TOL)

    states = reconstruct_states(sr, trunc, v, spec.modes, spec.xi_grid)
    residuals = [state_residual(spec, v, s, include_cross) for s in states]
    max_residual = max(residuals) if residuals else 0.0

    # The scan is a harness: roots of even multiplicity have no sign change
    scan = None
    if scan_samples:
        scan = compare_spectra(scan_roots(ep, scan_samples), sr.roots, EXACTNESS_TOL).dict

    passed = (exactness.passed and accounting.verdicts["measured = rank accounting"] == "yes"
              and max_residual <= RESIDUAL_LIMIT)
    return {
        "exactness": exactness.dict,
        "counts": sr.counts,
        "max_state_residual": max_residual,
        "scan": scan,
        "passed": bool(passed),
    }


def sweep_shape(k):
    """(N_tot, N_g) of random instance k: N_tot cycles 2..5, N_g cycles 2..8."""
    return 2 + k % 4, 2 + k % 7


def check_sweep(instances, seed, run, tolerances):
    """check_instance over random instances, with the total wall time."""
    entries = []
    start = time.perf_counter()
    for k in range(instances):
        n_tot, n_g = sweep_shape(k)
        spec, v = random_problem(seed + k, n_tot, n_g)
        entry = check_instance(spec, v, run, tolerances)
        entry.update({"seed": seed + k, "N_tot": n_tot, "N_g": n_g})
        entries.append(entry)
    wall_time = time.perf_counter() - start
    return entries, {
        "instances": instances,
        "wall_time": wall_time,
        "budget": SWEEP_BUDGET,
        "within_budget": wall_time < SWEEP_BUDGET,
        "failed": [e["seed"] for e in entries if not e["passed"]],
        "passed": bool(wall_time < SWEEP_BUDGET and all(e["passed"] for e in entries)),
    }


def check_probabilities(rs):
    """Uniform α = 1/N and grouped α = N_j/ΣN_j exactly; every rule sums to 1."""
    n = rs.n_realizations
    counts = np.asarray(rs.group_counts, dtype=float)
    uniform = bool(np.all(np.asarray(rs.alpha[UNIFORM]) == 1.0 / n))
    grouped = bool(np.all(np.asarray(rs.alpha[GROUPED]) == counts / np.sum(counts)))
    sums = {mode: float(np.sum(alpha)) for mode, alpha in rs.alpha.items()}
    normalized = all(abs(s - 1.0) <= PROBABILITY_TOL for s in sums.values())
    return {
        "n_realizations": n,
        "uniform_exact": uniform,
        "grouped_exact": grouped,
        "sums": sums,
        "passed": uniform and grouped and normalized,
    }


def homogeneous_born(n_g=12, n_cells=4):
    """Born α of a homogeneous state over equal cells of a periodic grid."""
    grid = Grid.uniform(n_g, boundary="periodic")
    step = n_g // n_cells
    groups = RealizationList(Realization(j, j * step, grid.points[j * step], [j])
                             for j in range(n_cells))
    rs = RealizationSet(groups, (), grid, (), (), 1.0)
    density = np.ones(n_g)
    psi = np.ones(n_g) / np.sqrt(np.sum(grid.weights))
    return probabilities(rs, BORN, density), born_match(rs, psi).alpha


def check_born(rs, psi=None):
    """Born α against the cell masses of the intermediate density.

    psi, the normalized intermediate amplitude, adds the matching
    coefficients to the comparison. The homogeneous state must give
    the uniform rule.
    """
    alpha_density, alpha_match = homogeneous_born()
    uniform = np.full(alpha_density.size, 1.0 / alpha_density.size)
    homogeneous = bool(np.max(np.abs(alpha_density - uniform)) <= PROBABILITY_TOL
                       and np.max(np.abs(alpha_match - uniform)) <= PROBABILITY_TOL)
    report = {"homogeneous_uniform": homogeneous, "skipped": BORN not in rs.alpha}
    deviation = 0.0
    if BORN in rs.alpha:
        masses = cell_masses(rs.xi_grid, rs.centers, rs.intermediate_density())
        alpha = np.asarray(rs.alpha[BORN])
        deviation = float(np.max(np.abs(alpha - masses / np.sum(masses))))
        if psi is not None:
            deviation = max(deviation, float(np.max(np.abs(alpha - born_match(rs, psi).alpha))))
    report["max_deviation"] = deviation
    report["passed"] = homogeneous and deviation <= PROBABILITY_TOL
    return report


def check_beat(rs, states, mode, seed, cycles=BEAT_CYCLES, seeds=BEAT_SEEDS):
    """Frequencies within 3σ on most seeds; the first trajectory's visited
    density within the multinomial bounds of the mixed density.
    """
    mixed = mix_density(rs, states, mode)
    passing, slowest, density_ok = 0, 0.0, False
    for s in range(seeds):
        start = time.perf_counter()
        traj = simulate_beat(rs, cycles, (seed + s) % (MAX_SEED + 1), mode)
        slowest = max(slowest, time.perf_counter() - start)
        passing += within_bounds(traj)
        if s == 0:
            density_ok = visited_within_bounds(traj, rs, mixed.rho_ex)
    return {
        "mode": mode,
        "cycles": cycles,
        "seeds_within_bounds": int(passing),
        "seeds": seeds,
        "visited_matches_mixed": density_ok,
        "slowest_trajectory": slowest,
        "passed": bool(passing >= min(BEAT_MIN_PASSING, seeds) and density_ok
                       and slowest < BEAT_BUDGET),
    }


def check_alignment(run, tolerances):
    """Every localized root of the two-well instance that lies below the
    mode-1 band must sit in its own coupling-made well.

    Roots above the band sit on an EP barrier and are reported only.
    """
    spec, v = two_well_problem()
    method = run["eigensolver"]
    trunc = solve_truncated(spec, v, method=method)
    ep = assemble_ep(trunc, v, spec, **tolerances)
    sr = find_roots(ep, method=method)
    states = reconstruct_states(sr, trunc, v, spec.modes, spec.xi_grid)
    rs = group_realizations(states, spec.xi_grid, TWO_WELL_TAU)
    floor = float(np.min(ep.poles[ep.coupled]))
    roots, bound_aligned = [], True
    for group in rs.groups:
        for i in group.members:
            a = ep_well_alignment(ep, sr.roots[i], sr.vectors[i])
            bound = bool(a.root < floor)
            roots.append({"root": a.root, "center_index": group.center_index,
                          "well_index": a.well_index, "density_index": a.density_index,
                          "global_well_index": a.global_well_index,
                          "bound": bound, "aligned": a.aligned})
            if bound:
                bound_aligned = bound_aligned and a.aligned
    n_bound = sum(r["bound"] for r in roots)
    return {
        "n_groups": len(rs.groups),
        "centers": [int(c) for c in rs.centers],
        "roots": roots,
        "passed": bool(len(rs.groups) == 2 and n_bound == 2 and bound_aligned),
    }


def hierarchy_checks(levels, method="auto"):
    """Each deeper level's roots reproduce the poles of the level above."""
    checks = []
    for upper, lower in zip(levels[:-1], levels[1:]):
        sr = find_roots(lower.ep, method=method)
        report = compare_spectra(sr.all_energies - sr.eps0,
                                 upper.truncated.eigvals, EXACTNESS_TOL)
        checks.append({"depth": lower.depth, "comparison": report.dict,
                       "counts": sr.counts, "passed": report.passed})
    return checks


def check_hierarchy(seed, run, tolerances, sizes=HIERARCHY_SIZES):
    """Depth-2 recursion on random N_tot = 3 instances of each N_g."""
    entries = []
    for k, n_g in enumerate(sizes):
        spec, v = random_problem(seed + k, 3, n_g)
        levels = recurse_ep(spec, v, 2, run["cross_couplings"],
                            method=run["eigensolver"], **tolerances)
        checks = hierarchy_checks(levels, run["eigensolver"])
        entries.append({"seed": seed + k, "N_g": n_g,
                        "max_rel_dev": checks[0]["comparison"]["max_rel_dev"],
                        "passed": all(c["passed"] for c in checks)})
    return {"instances": entries, "passed": all(e["passed"] for e in entries)}
