"""Command line interface.

Subcommands: simulate (epoch traces as CSV + JSON summary), analyze
(closed-form deviation report for one miner), optimize (idle-power tuning),
sweep (ROI heatmap CSV over power and cost shares), security (attack report,
optionally with an entrant effect).

Exit codes: 0 success, 2 configuration or usage error, 3 model error
(stalled epoch), 4 I/O error.  Config validation failures print a JSON list
of messages on stderr.  All outputs are byte-stable for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .analytic import (
    MODE_SMART,
    MODE_SMARTER_OPTIMAL,
    AggregateContext,
    dominance,
    epoch_table_smart,
    min_power_for_profit,
    roi,
    smart_utility,
    sweep,
)
from .engine import run
from .model import (
    CoinParams,
    ConfigurationError,
    MinerParams,
    StalledEpochError,
    StrategySchedule,
    calibrate_reward,
    total_power,
    validate_scenario,
)
from .optimizer import optimal_idle
from .security import entry_effect, security_report

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_MODEL = 3
EXIT_IO = 4


class _ConfigError(Exception):
    def __init__(self, errors):
        super().__init__("; ".join(errors))
        self.errors = list(errors)


def _load_scenario(path):
    """Parse and validate a scenario config; returns (coin, miners, schedules).

    Collects every problem it can find before failing so the error list is
    actionable in one pass.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _ConfigError([f"cannot read config: {exc}"])
    except json.JSONDecodeError as exc:
        raise _ConfigError([f"config is not valid JSON: {exc}"])
    if not isinstance(doc, dict):
        raise _ConfigError(["config root must be a JSON object"])

    errors = []
    miners = []
    for i, entry in enumerate(doc.get("miners", [])):
        try:
            miners.append(MinerParams(id=str(entry["id"]), m=float(entry["m"]),
                                      fc=float(entry["fc"]), vc=float(entry["vc"])))
        except KeyError as exc:
            errors.append(f"miners[{i}]: missing field {exc}")
        except (TypeError, ValueError) as exc:
            errors.append(f"miners[{i}]: {exc}")

    schedules = []
    for i, entry in enumerate(doc.get("schedules", [])):
        try:
            schedules.append(StrategySchedule(miner_id=str(entry["miner_id"]),
                                              powers=tuple(float(p) for p in entry["powers"]),
                                              offset=int(entry.get("offset", 0))))
        except KeyError as exc:
            errors.append(f"schedules[{i}]: missing field {exc}")
        except (TypeError, ValueError) as exc:
            errors.append(f"schedules[{i}]: {exc}")

    coin = None
    coin_doc = doc.get("coin")
    if not isinstance(coin_doc, dict):
        errors.append("missing 'coin' section")
    else:
        try:
            tau = float(coin_doc["tau"])
            epsilon = float(coin_doc.get("epsilon", 0.0))
            clamp = coin_doc.get("clamp")
            reward = doc.get("reward", "calibrated")
            if reward == "calibrated":
                w = calibrate_reward(miners, tau, epsilon) if miners else 0.0
            elif isinstance(reward, (int, float)) and not isinstance(reward, bool):
                w = float(reward)
            else:
                raise ValueError("'reward' must be \"calibrated\" or a number")
            coin = CoinParams(tau=tau, epsilon=epsilon, w=w,
                              clamp=float(clamp) if clamp is not None else None)
        except KeyError as exc:
            errors.append(f"coin: missing field {exc}")
        except (TypeError, ValueError) as exc:
            errors.append(f"coin: {exc}")

    errors.extend(validate_scenario(coin, miners, schedules))
    if errors:
        raise _ConfigError(errors)
    return coin, miners, schedules


def _find_miner(miners, miner_id):
    for p in miners:
        if p.id == miner_id:
            return p
    raise _ConfigError([f"unknown miner '{miner_id}'"])


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2))


def _write_text(path, text) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _write_trace_csv(path, trace, miners) -> None:
    cols = ["k", "H", "t", "rph"]
    for p in miners:
        cols += [f"{p.id}_mhat", f"{p.id}_R", f"{p.id}_C", f"{p.id}_P"]
    lines = [",".join(cols)]
    for rec in trace.records:
        cells = [str(rec.k), repr(rec.H), repr(rec.t), repr(rec.rph)]
        for s in rec.per_miner:
            cells += [repr(s.active_power), repr(s.revenue_rate), repr(s.cost_rate), repr(s.profit_rate)]
        lines.append(",".join(cells))
    _write_text(path, "\n".join(lines) + "\n")


def _cmd_simulate(args) -> int:
    if args.epochs < 1:
        raise _ConfigError(["--epochs must be >= 1"])
    coin, miners, schedules = _load_scenario(args.config)
    trace = run(coin, miners, schedules, args.epochs)
    os.makedirs(args.out, exist_ok=True)
    _write_trace_csv(os.path.join(args.out, "trace.csv"), trace, miners)
    summary = {
        "version": __version__,
        "epochs": args.epochs,
        "coin": {"tau": coin.tau, "epsilon": coin.epsilon, "w": coin.w, "clamp": coin.clamp},
        "miners": [{"id": p.id, "m": p.m, "fc": p.fc, "vc": p.vc} for p in miners],
        "schedules": [{"miner_id": s.miner_id, "powers": list(s.powers), "offset": s.offset}
                      for s in schedules],
        "utilities": {p.id: trace.utilities[p.id] for p in miners},
    }
    _write_text(os.path.join(args.out, "summary.json"), json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    coin, miners, _ = _load_scenario(args.config)
    miner = _find_miner(miners, args.miner)
    ctx = AggregateContext(M=total_power(miners), coin=coin)
    x = miner.m / ctx.M
    y = miner.fc / miner.cost_rate
    try:
        u = smart_utility(ctx, miner)
        table = epoch_table_smart(ctx, miner)
        dom = dominance(x, y)
    except ValueError as exc:
        raise _ConfigError([str(exc)])
    report = {
        "miner": miner.id,
        "x": x,
        "y": y,
        "dominance": dom,
        "smart_utility": u,
        "smart_roi": roi(u, miner),
        "epoch_table": table,
    }
    try:
        report["min_power_for_profit"] = min_power_for_profit(y)
    except ValueError:
        report["min_power_for_profit"] = None
        report["min_power_reason"] = "no power share suffices"
    _print_json(report)
    return EXIT_OK


def _cmd_optimize(args) -> int:
    coin, miners, _ = _load_scenario(args.config)
    miner = _find_miner(miners, args.miner)
    ctx = AggregateContext(M=total_power(miners), coin=coin)
    try:
        point = optimal_idle(ctx, miner)
    except ValueError as exc:
        raise _ConfigError([str(exc)])
    _print_json({
        "miner": miner.id,
        "delta": point.delta,
        "delta_fraction": point.delta / miner.m,
        "utility": point.utility,
        "roi": point.roi,
        "schedule": {"miner_id": miner.id, "powers": [miner.m - point.delta, miner.m], "offset": 0},
    })
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.nx < 2 or args.ny < 2:
        raise _ConfigError(["--nx and --ny must be >= 2"])
    mode = MODE_SMART if args.mode == "smart" else MODE_SMARTER_OPTIMAL
    # cell centers keep every grid point strictly inside (0, 1)
    xs = [(j + 0.5) / args.nx for j in range(args.nx)]
    ys = [(i + 0.5) / args.ny for i in range(args.ny)]
    matrix = sweep(xs, ys, mode)
    lines = ["x,y,roi"]
    for i, yv in enumerate(ys):
        for j, xv in enumerate(xs):
            lines.append(f"{xv:.17g},{yv:.17g},{matrix[i, j]:.17g}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_security(args) -> int:
    coin, miners, schedules = _load_scenario(args.config)
    report = security_report(coin, miners, schedules)
    doc = {
        "lre_active_power": report.lre_active_power,
        "idle_fraction": report.idle_fraction,
        "attack_threshold": report.attack_threshold,
        "per_miner_gain": {p.id: report.per_miner_gain[p.id] for p in miners},
    }
    if args.entrant is not None:
        if len(schedules) != 1:
            raise _ConfigError(["--entrant requires exactly one schedule (the deviating miner)"])
        eff = entry_effect(coin, miners, schedules[0], args.entrant)
        doc["entry_effect"] = {
            "entrant_power": args.entrant,
            "rph_lre_before": eff.rph_lre_before,
            "rph_lre_after": eff.rph_lre_after,
            "rph_lre_ratio": eff.rph_lre_after / eff.rph_lre_before,
            "rph_hre_before": eff.rph_hre_before,
            "rph_hre_after": eff.rph_hre_after,
            "lre_active_before": eff.lre_active_before,
            "lre_active_after": eff.lre_active_after,
        }
    _print_json(doc)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smartmining",
        description="Deterministic epoch simulator and closed-form analyzer of "
                    "mining economics under difficulty retargeting.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate epochs; write trace.csv and summary.json")
    p.add_argument("config", help="scenario config (JSON)")
    p.add_argument("--epochs", type=int, required=True, help="number of epochs (>= 1)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("analyze", help="closed-form deviation report for one miner (JSON on stdout)")
    p.add_argument("config", help="scenario config (JSON)")
    p.add_argument("--miner", required=True, help="miner id to analyze")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("optimize", help="profit-maximizing idle power for one miner (JSON on stdout)")
    p.add_argument("config", help="scenario config (JSON)")
    p.add_argument("--miner", required=True, help="miner id to optimize")
    p.set_defaults(handler=_cmd_optimize)

    p = sub.add_parser("sweep", help="ROI heatmap CSV over power share x and fixed-cost share y")
    p.add_argument("--mode", choices=["smart", "smarter"], required=True)
    p.add_argument("--nx", type=int, required=True, help="number of x cells (>= 2)")
    p.add_argument("--ny", type=int, required=True, help="number of y cells (>= 2)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("security", help="attack-threshold report (JSON on stdout)")
    p.add_argument("config", help="scenario config (JSON)")
    p.add_argument("--entrant", type=float, default=None,
                   help="hash power of an entrant joining only the high-revenue epochs")
    p.set_defaults(handler=_cmd_security)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _ConfigError as exc:
        print(json.dumps(exc.errors), file=sys.stderr)
        return EXIT_CONFIG
    except ConfigurationError as exc:
        print(json.dumps([str(exc)]), file=sys.stderr)
        return EXIT_CONFIG
    except StalledEpochError as exc:
        print(json.dumps({"error": "stalled epoch", "epoch": exc.epoch}), file=sys.stderr)
        return EXIT_MODEL
    except OSError as exc:
        print(json.dumps([f"I/O error: {exc}"]), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
