# encoding: utf-8
""" Command line experiment runner.

    eplab solve|beat|verify|hierarchy|report [--config PATH] [--seed U64]
          [--cycles N] [--prob-mode MODE] [--depth D] [--out-dir PATH]
          [--instances N]

    Exit codes: 0 success, 2 configuration error, 3 numerical or I/O
    failure, 4 verification failure.
"""
import argparse
import io
import json
import os
import sys
from datetime import datetime

import numpy as np
import pandas as pd

from .BaseRecord import json_text
from .RecordList import csv_text
from .assembly import density_frame, entanglement_entropy, schmidt_rank
from .beat import chi_square, within_bounds
from .config import default_config, load_config, set_value
from .effective import scan_characteristic
from .exceptions import ConfigError, UnsupportedDepth, VerificationFailure
from .experiment import Experiment
from .realizations import PROB_MODES

OUT_DIR_ENV = "EPLAB_OUT_DIR"
DEFAULT_OUT_DIR = "out"
SUBCOMMANDS = ("solve", "beat", "verify", "hierarchy", "report")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_VERIFICATION = 4


def log(msg):
    print(msg, file=sys.stderr)
    sys.stderr.flush()


class RunExperiment(Experiment):
    """Experiment reporting its progress on stderr."""

    _hooks = {
        'init': [],
        'stage': [],
    }


@RunExperiment.on("init")
def _log_init(experiment):
    log("[eplab] config %s" % experiment.hash)


@RunExperiment.on("stage")
def _log_stage(experiment, name, result):
    log("[stage:%s] done" % name)


def write_json(path, data):
    with io.open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json_text(data))


def write_csv(path, frame):
    with io.open(path, "w", encoding="utf-8", newline="") as f:
        f.write(csv_text(frame))


def _density_frame(rho, spec):
    return density_frame(rho, spec.modes.q_grid.points, spec.xi_grid.points)


class Outputs(object):
    """Files written by one run, in order."""

    def __init__(self, out_dir):
        self.out_dir = out_dir
        self.files = []

    def path(self, name):
        self.files.append(name)
        return os.path.join(self.out_dir, name)

    def json(self, name, data):
        write_json(self.path(name), data)

    def csv(self, name, frame):
        write_csv(self.path(name), frame)


def emit_solution(experiment, outputs):
    """spectrum, EP, states, realisations and densities."""
    spec = experiment.problem
    ep = experiment.ep
    sr = experiment.spectrum
    rs = experiment.realizations

    outputs.json("spectrum.json", sr.summary)
    outputs.json("ep.json", {
        "poles": ep.poles, "multiplicities": ep.multiplicities, "ranks": ep.ranks,
        "h0_diagonal": np.diag(ep.h0), "span": ep.span,
        "pole_merge_tol": ep.pole_merge_tol, "pole_guard": ep.pole_guard,
        "n_e": ep.n_e, "static_only": bool(not np.any(ep.ranks)),
    })
    alignments = {a.root: a for a in experiment.alignments()}
    states = []
    for s in experiment.states:
        entry = {
            "root_index": s.root_index, "energy": s.energy,
            "participation_ratio": rs.participation[s.root_index],
            "schmidt_rank": schmidt_rank(s, experiment.run["schmidt_tol"]),
            "entanglement_entropy": entanglement_entropy(s),
            "tail_weight": s.tail_weight,
        }
        root = float(sr.roots[s.root_index])
        if root in alignments:
            entry["well"] = alignments[root].dict
        states.append(entry)
    outputs.json("states.json", {"states": states})

    born = experiment.born()
    outputs.json("realizations.json", {
        "groups": rs.groups.list_of_dicts,
        "realizations": rs.realizations.list_of_dicts,
        "intermediate": list(rs.intermediate),
        "pr_threshold": rs.pr_threshold,
        "alpha": rs.alpha,
        "born_match": None if born is None else born.dict,
        "cells": "nearest-centre partition of the xi grid",
        "complexity": experiment.complexity,
    })
    outputs.json("accounting.json", experiment.accounting.dict)

    eta, values, interval = scan_characteristic(ep, experiment.run["scan_samples"])
    outputs.csv("characteristic.csv", pd.DataFrame(
        {"eta": eta, "F": values, "interval": interval}, columns=["eta", "F", "interval"]))

    mode = experiment.run["prob_mode"]
    if mode in rs.alpha:
        outputs.csv("density_mixed.csv", _density_frame(experiment.mixed(mode).rho_ex, spec))
    intermediate = list(rs.intermediate)
    if intermediate:
        rho = np.mean([rs.densities[i].rho for i in intermediate], axis=0)
        outputs.csv("density_intermediate.csv", _density_frame(rho, spec))
    for j in range(len(rs.groups)):
        outputs.csv("density_group_%d.csv" % j, _density_frame(rs.realization_density(j), spec))


def emit_beat(experiment, outputs, flags):
    """events.csv and beat.json, or a "not run" flag."""
    mode = experiment.run["prob_mode"]
    if mode not in experiment.realizations.alpha:
        flags["beat"] = "not run"
        log("[stage:beat] skipped: no %s probabilities" % mode)
        return
    traj = experiment.beat()
    outputs.csv("events.csv", traj.pandas)
    statistic, quantile = chi_square(traj)
    outputs.json("beat.json", {
        "seed": traj.seed, "mode": traj.mode, "cycles": traj.cycles,
        "alpha": traj.alpha, "empirical": traj.empirical,
        "chi_square": statistic, "chi_square_quantile": quantile,
        "within_bounds": within_bounds(traj),
    })
    flags["beat"] = "run"


def emit_outputs(experiment, command, out_dir):
    """Run `command` and write its files; returns (files, flags)."""
    outputs = Outputs(out_dir)
    flags = {}
    if command in ("solve", "beat"):
        emit_solution(experiment, outputs)
    if command == "beat":
        emit_beat(experiment, outputs, flags)
    if command == "verify":
        report = experiment.verify()
        outputs.json("accounting.json", experiment.accounting.dict)
        outputs.json("verify.json", report)
        flags["verify"] = "pass" if report["passed"] else "fail"
    if command == "hierarchy":
        levels = experiment.hierarchy()
        checks = experiment.hierarchy_checks(levels)
        outputs.json("hierarchy.json", {
            "depth": len(levels),
            "levels": [{"depth": l.depth, "poles": l.ep.poles, "ranks": l.ep.ranks,
                        "n_channels": l.operator.n_channels} for l in levels],
            "checks": checks,
        })
        flags["hierarchy"] = "pass" if all(c["passed"] for c in checks) else "fail"
    if command == "report":
        outputs.json("report.json", build_report(experiment, out_dir))
    return outputs.files, flags


def build_report(experiment, out_dir):
    """Summary of this configuration plus any JSON summaries already in out_dir."""
    report = {
        "config_hash": experiment.hash,
        "counts": experiment.spectrum.counts,
        "accounting": experiment.accounting.dict,
        "complexity": experiment.complexity,
        "alpha": experiment.realizations.alpha,
    }
    for name in ("spectrum", "realizations", "beat", "verify", "hierarchy"):
        path = os.path.join(out_dir, name + ".json")
        if os.path.exists(path):
            with io.open(path, encoding="utf-8") as f:
                report[name] = json.load(f)
    return report


def parse_args(argv=None):
    parser = argparse.ArgumentParser(prog="eplab", description=__doc__.split("\n")[0])
    parser.add_argument("command", choices=SUBCOMMANDS)
    parser.add_argument("--config", default=None, help="JSON configuration file.")
    parser.add_argument("--seed", type=int, default=None, help="Beat seed (unsigned 64 bit).")
    parser.add_argument("--cycles", type=int, default=None, help="Number of beat cycles.")
    parser.add_argument("--prob-mode", choices=PROB_MODES, default=None,
                        help="Probability rule for the beat.")
    parser.add_argument("--depth", type=int, default=None, help="Hierarchy depth (1 or 2).")
    parser.add_argument("--out-dir", default=None,
                        help="Output directory (default $%s or ./%s)." % (OUT_DIR_ENV,
                                                                          DEFAULT_OUT_DIR))
    parser.add_argument("--instances", type=int, default=None,
                        help="Random oracle instances checked by verify.")
    return parser.parse_args(argv)


def build_config(args):
    """Configuration file plus command line overrides."""
    config = load_config(args.config) if args.config else default_config()
    overrides = [("run.seed", args.seed), ("run.cycles", args.cycles),
                 ("run.prob_mode", args.prob_mode), ("run.depth", args.depth),
                 ("run.verify_instances", args.instances)]
    if args.command == "hierarchy" and args.depth is None:
        overrides.append(("run.depth", 2))
    for path, value in overrides:
        if value is not None:
            config = set_value(config, path, value)
    return config


def run(argv=None):
    """Run one subcommand; returns the exit code."""
    args = parse_args(argv)
    stage = "config"
    try:
        config = build_config(args)
        experiment = RunExperiment(config)
        out_dir = args.out_dir or os.environ.get(OUT_DIR_ENV) or DEFAULT_OUT_DIR
        stage = "output"
        if not os.path.isdir(out_dir):
            os.makedirs(out_dir)
        stage = args.command
        files, flags = emit_outputs(experiment, args.command, out_dir)
        stage = "manifest"
        manifest = {
            "config_hash": experiment.hash,
            "seed": experiment.run["seed"],
            "subcommand": args.command,
            "files": files,
            "flags": flags,
            "finished": datetime.utcnow().isoformat() + "Z",
        }
        write_json(os.path.join(out_dir, "manifest.json"), manifest)
        failed = [k for k, v in flags.items() if v == "fail"]
        if failed:
            raise VerificationFailure("failed checks: %s" % ", ".join(sorted(failed)))
    except (ConfigError, UnsupportedDepth) as e:
        log("[stage:%s] %s" % (getattr(e, "stage", stage), e))
        return EXIT_CONFIG
    except VerificationFailure as e:
        log("[stage:%s] %s" % (getattr(e, "stage", stage), e))
        return EXIT_VERIFICATION
    except (ArithmeticError, ValueError, OSError) as e:
        log("[stage:%s] %s: %s" % (getattr(e, "stage", stage), type(e).__name__, e))
        return EXIT_NUMERICAL
    return EXIT_OK


def main():
    sys.exit(run())
