"""Command-line experiment runner.

Usage::

    nwlattice list
    nwlattice run CONFIG [--out-dir DIR] [--strict]

A config is flat ``key = value`` text with ``#`` comments and exactly one
``experiment = NAME`` line.  List values are comma-separated.  Exit codes:
0 all checks passed, 1 usage or config error, 2 an assertion failed (or,
with ``--strict``, a warning).
"""

import argparse
import csv
import io
import math
import sys
from pathlib import Path

from . import experiments

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class ConfigError(ValueError):
    pass


def _convert(kind, text, key, where):
    try:
        if isinstance(kind, list):
            items = [t.strip() for t in text.split(",") if t.strip()]
            return [_convert(kind[0], t, key, where) for t in items]
        if kind is int:
            value = float(text)
            if not value.is_integer():
                raise ValueError
            return int(value)
        value = float(text)
        if not math.isfinite(value):
            raise ValueError
        return value
    except ValueError:
        raise ConfigError(f"{where}: invalid value for {key}: {text!r}") from None


def parse_config(text, source="<config>"):
    """Parse config text into ``(experiment, params)`` with defaults filled in."""
    raw, name = {}, None
    for lineno, line in enumerate(text.splitlines(), 1):
        where = f"{source}:{lineno}"
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"{where}: expected 'key = value', got {line.strip()!r}")
        key, value = (s.strip() for s in body.split("=", 1))
        if not key:
            raise ConfigError(f"{where}: missing key")
        if key in raw or (key == "experiment" and name is not None):
            raise ConfigError(f"{where}: duplicate key {key!r}")
        if key == "experiment":
            name = value
            try:
                exp = experiments.lookup(value)
            except KeyError:
                known = ", ".join(sorted(experiments.REGISTRY))
                raise ConfigError(f"{where}: unknown experiment {value!r} (known: {known})") \
                    from None
            continue
        raw[key] = (value, where)
    if name is None:
        raise ConfigError(f"{source}: no 'experiment = NAME' line")

    params = dict(exp.params)
    for key, (value, where) in raw.items():
        if key not in params:
            raise ConfigError(f"{where}: unknown parameter {key!r} for experiment {exp.name!r}")
        params[key] = _convert(experiments.PARAM_TYPES[key], value, key, where)
    if exp.sampled and params.get("seed") is None:
        raise ConfigError(f"{source}: experiment {exp.name!r} samples randomly; "
                          "a 'seed = N' line is required")
    return exp, params


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def write_csv(result, path):
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writerow(result.columns)
    rows = [[_fmt(row.get(c)) for c in result.columns] for row in result.rows]
    for row in rows:
        writer.writerow(row)
    path.write_bytes(buf.getvalue().encode("utf-8"))


def summarize(exp, params, result, strict):
    lines = [f"experiment: {exp.name}",
             f"topic: {exp.topic}",
             "parameters: " + ", ".join(f"{k}={'' if v is None else v}"
                                        for k, v in sorted(params.items()))]
    failed = False
    for c in result.checks:
        if c.passed:
            tag = "PASS"
        elif c.severity == "warn" and not strict:
            tag = "WARN"
        else:
            tag = "FAIL"
            failed = True
        lines.append(f"{tag} {c.name}" + (f": {c.detail}" if c.detail else ""))
    lines.extend(result.notes)
    lines.append("result: " + ("FAILED" if failed else "PASSED"))
    return "\n".join(lines) + "\n", failed


def list_experiments():
    width = max(len(n) for n in experiments.REGISTRY)
    out = []
    for name in sorted(experiments.REGISTRY):
        exp = experiments.REGISTRY[name]
        out.append(f"{name:<{width}}  {exp.description}  [{exp.topic}]")
    return "\n".join(out) + "\n"


def run(config_path, out_dir="results", strict=False, stdout=None):
    stdout = stdout or sys.stdout
    path = Path(config_path)
    try:
        text = path.read_text()
    except OSError as exc:
        print(f"error: cannot read config {config_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        exp, params = parse_config(text, str(path))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = exp.run(params)
    except ValueError as exc:
        print(f"error: {path}: invalid parameters for {exp.name}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(result, out / f"{exp.name}.csv")
    summary, failed = summarize(exp, params, result, strict)
    (out / f"{exp.name}_summary.txt").write_text(summary)
    stdout.write(summary)
    return EXIT_FAILED if failed else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nwlattice",
        description="Standard vs. Newton-Wigner localization experiments on a lattice.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list registered experiments")
    p_run = sub.add_parser("run", help="run the experiment described by a config file")
    p_run.add_argument("config")
    p_run.add_argument("--out-dir", default="results", help="directory for CSV and summary")
    p_run.add_argument("--strict", action="store_true", help="treat warnings as failures")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "list":
        sys.stdout.write(list_experiments())
        return EXIT_OK
    return run(args.config, args.out_dir, args.strict)


if __name__ == "__main__":
    sys.exit(main())
