# encoding: utf-8
""" The Experiment class runs the pipeline of one configuration,

    project -> truncate -> EP -> roots -> assemble -> group -> probabilities -> beat

    one stage at a time, caching every stage result.

    A number of hooks are available for callers that want to follow
    progress. These are called with the experiment as first argument:

    - init: after the configuration is validated
    - stage: after each stage, with the stage name and its result
"""
import numpy as np

from .BaseRecord import json_text
from .RecordList import csv_text
from .acceptance import (check_alignment, check_beat, check_born, check_hierarchy,
                         check_instance, check_probabilities, check_sweep, hierarchy_checks)
from .assembly import (complexity_entropy, complexity_measure, reconstruct_states,
                       schmidt_rank)
from .beat import simulate_beat
from .config import config_hash, default_config, validate_config
from .effective import assemble_ep, ep_well_alignment, recurse_ep
from .exceptions import DegenerateMatching
from .model import build_problem, project_coupling
from .realizations import (BORN, GROUPED, INTERMEDIATE, UNIFORM, born_match,
                           group_realizations, mix_density, probabilities)
from .spectrum import count_accounting, find_roots
from .truncated import solve_truncated


class Experiment(object):
    """One configuration, its cached stage results and verification checks."""

    # Hooks
    _hooks = {
        'init': [],  # Called when the configuration is validated
        'stage': [],  # Called after every completed stage
    }

    @classmethod
    def on(cls, hook):
        """Hook decorator."""
        def decorator(function_):
            cls._hooks[hook].append(function_)
            return function_
        return decorator

    def __repr__(self):
        return u'<Experiment: %s>' % self.hash

    def __init__(self, config):
        self.config = validate_config(config)
        self.run = self.config["run"]
        self.hash = config_hash(self.config)
        self._results = {}
        for f in self._hooks["init"]:
            f(self)

    def _stage(self, name, function_):
        """Run a stage once; failures are tagged with the stage name."""
        if name not in self._results:
            try:
                result = function_()
            except Exception as e:
                if getattr(e, "stage", None) is None:
                    e.stage = name
                raise
            self._results[name] = result
            for f in self._hooks["stage"]:
                f(self, name, result)
        return self._results[name]

    @property
    def tolerances(self):
        return {
            "merge_tol": self.run["pole_merge_tol"],
            "pole_guard": self.run["pole_guard"],
            "rank_tol": self.run["rank_tol"],
        }

    @property
    def problem(self):
        return self._stage("model", lambda: build_problem(self.config))

    @property
    def couplings(self):
        return self._stage("projection", lambda: project_coupling(
            self.problem.modes, self.problem.coupling, self.problem.xi_grid))

    @property
    def truncated(self):
        return self._stage("truncated", lambda: solve_truncated(
            self.problem, self.couplings, self.run["cross_couplings"],
            method=self.run["eigensolver"]))

    @property
    def ep(self):
        return self._stage("effective", lambda: assemble_ep(
            self.truncated, self.couplings, self.problem,
            self.run["cross_couplings"], **self.tolerances))

    @property
    def spectrum(self):
        return self._stage("spectrum", lambda: find_roots(
            self.ep, method=self.run["eigensolver"]))

    @property
    def accounting(self):
        return self._stage("accounting", lambda: count_accounting(self.spectrum))

    @property
    def states(self):
        spec = self.problem
        return self._stage("assembly", lambda: reconstruct_states(
            self.spectrum, self.truncated, self.couplings, spec.modes, spec.xi_grid))

    @property
    def realizations(self):
        return self._stage("realizations", self._group)

    def _group(self):
        rs = group_realizations(self.states, self.problem.xi_grid, self.run["pr_threshold"])
        rs = rs.with_alpha(UNIFORM, probabilities(rs, UNIFORM))
        rs = rs.with_alpha(GROUPED, probabilities(rs, GROUPED))
        intermediate = rs.intermediate_density()
        if intermediate is not None:
            try:
                rs = rs.with_alpha(BORN, probabilities(rs, BORN, intermediate))
            except DegenerateMatching:
                pass
        return rs

    def _intermediate_amplitude(self):
        """sqrt of the mean intermediate density, normalized; None without one."""
        intermediate = self.realizations.intermediate_density()
        if intermediate is None:
            return None
        psi = np.sqrt(intermediate)
        return psi / np.sqrt(np.sum(self.problem.xi_grid.weights * psi ** 2))

    def born(self):
        """Born matching of the intermediate state, or None without one."""
        psi = self._intermediate_amplitude()
        return None if psi is None else born_match(self.realizations, psi)

    def mixed(self, mode=None):
        mode = mode or self.run["prob_mode"]
        return self._stage("mixing:%s" % mode, lambda: mix_density(
            self.realizations, self.states, mode))

    def beat(self, cycles=None, seed=None, mode=None):
        cycles = self.run["cycles"] if cycles is None else cycles
        seed = self.run["seed"] if seed is None else seed
        mode = mode or self.run["prob_mode"]
        if mode not in self.realizations.alpha:
            raise DegenerateMatching("probabilities for %r are not available" % mode)
        return self._stage("beat:%s:%d:%d" % (mode, seed, cycles), lambda: simulate_beat(
            self.realizations, cycles, seed, mode))

    @property
    def complexity(self):
        rs = self.realizations
        return {
            "n_realizations": rs.n_realizations,
            "complexity": complexity_measure(rs.n_realizations),
            "entropy": {m: complexity_entropy(a) for m, a in rs.alpha.items()},
        }

    def alignments(self):
        """EP well alignment of every regular (localized) root."""
        out = []
        for r in self.realizations.groups:
            for i in r.members:
                out.append(ep_well_alignment(self.ep, self.spectrum.roots[i],
                                             self.spectrum.vectors[i]))
        return out

    def hierarchy(self, depth=None):
        depth = self.run["depth"] if depth is None else depth
        return self._stage("hierarchy:%d" % depth, lambda: recurse_ep(
            self.problem, self.couplings, depth, self.run["cross_couplings"],
            method=self.run["eigensolver"], **self.tolerances))

    def hierarchy_checks(self, levels):
        """Each deeper level's roots reproduce the poles of the level above."""
        return hierarchy_checks(levels, self.run["eigensolver"])

    def verify(self, instances=None):
        """Run all checks; returns a JSON-ready report with a `passed` flag."""
        instances = self.run["verify_instances"] if instances is None else int(instances)
        seed = self.run["seed"]
        report = {"config": check_instance(self.problem, self.couplings,
                                           self.run, self.tolerances,
                                           self.run["scan_samples"])}
        report["config"]["static_only"] = bool(not np.any(self.ep.ranks))
        report["accounting"] = self.accounting.dict
        self._stage("verify:config", lambda: report["config"])

        report["random"], report["sweep"] = check_sweep(instances, seed, self.run,
                                                        self.tolerances)
        if instances:
            self._stage("verify:random", lambda: len(report["random"]))

        rs = self.realizations
        mode = self.run["prob_mode"] if self.run["prob_mode"] in rs.alpha else UNIFORM
        report["probabilities"] = check_probabilities(rs)
        report["born"] = check_born(rs, self._intermediate_amplitude())
        report["beat"] = self._stage("verify:beat", lambda: check_beat(
            rs, self.states, mode, seed))
        report["zero_coupling"] = self._stage("verify:zero_coupling",
                                              lambda: check_zero_coupling(self.config))
        report["alignment"] = self._stage("verify:alignment", lambda: check_alignment(
            self.run, self.tolerances))
        report["hierarchy"] = self._stage("verify:hierarchy", lambda: check_hierarchy(
            seed, self.run, self.tolerances))
        report["determinism"] = self._stage("verify:determinism",
                                            lambda: check_determinism(self.config, mode))

        sections = ("config", "sweep", "probabilities", "born", "beat", "zero_coupling",
                    "alignment", "hierarchy", "determinism")
        report["failed"] = [name for name in sections if not report[name]["passed"]]
        report["passed"] = not report["failed"]
        return report


def check_zero_coupling(config, cycles=1000):
    """The default bump family at the configured sizes with g = 0: one
    intermediate realisation, C = 0, Schmidt rank 1, zero tails and a
    constant beat.
    """
    zero = default_config()
    for section, key in (("grid", "N_g"), ("grid", "boundary"), ("modes", "N_tot"),
                         ("modes", "N_q"), ("run", "seed"), ("run", "schmidt_tol")):
        zero[section][key] = config[section][key]
    zero["coupling"]["g"] = 0.0
    experiment = Experiment(zero)
    rs = experiment.realizations
    ranks = [schmidt_rank(s, zero["run"]["schmidt_tol"]) for s in experiment.states]
    max_tail = max(float(np.max(np.abs(s.tails))) for s in experiment.states)
    traj = experiment.beat(cycles=cycles, mode=UNIFORM)
    kinds = [r.kind for r in rs.realizations]
    constant = bool(np.all(traj.ids == traj.ids[0]))
    complexity = complexity_measure(rs.n_realizations)
    return {
        "kinds": kinds,
        "complexity": complexity,
        "schmidt_ranks": sorted(set(ranks)),
        "max_tail": max_tail,
        "constant_beat": constant,
        "passed": bool(kinds == [INTERMEDIATE] and complexity == 0.0 and set(ranks) == {1}
                       and max_tail == 0.0 and constant),
    }


def check_determinism(config, mode):
    """Two independent runs of one configuration give byte-identical
    spectrum.json and events.csv.
    """
    texts = []
    for _ in range(2):
        experiment = Experiment(config)
        traj = experiment.beat(mode=mode)
        texts.append((json_text(experiment.spectrum.summary), csv_text(traj.pandas)))
    (spectrum_a, events_a), (spectrum_b, events_b) = texts
    return {
        "spectrum_identical": spectrum_a == spectrum_b,
        "events_identical": events_a == events_b,
        "cycles": int(config["run"]["cycles"]),
        "passed": spectrum_a == spectrum_b and events_a == events_b,
    }
