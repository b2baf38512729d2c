"""Command-line entry point: ``xlmimo {fig2,fig3,fig4,fig6,fig7,classify}``.

Exit status is 0 on success, 2 for configuration errors and 3 when the
model is undefined for the requested geometry.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .errors import ConfigError, DomainError
from .experiments import RUNNERS, ScenarioConfig, Sweep, classify_cli, format_report

EXIT_CONFIG = 2
EXIT_DOMAIN = 3

_HALF = object()
_SPACING_KEYS = ("spacing-m", "half-wavelength")


def _floats(text):
    return tuple(float(v) for v in str(text).split(",") if v.strip())


def _ints(text):
    return tuple(int(v) for v in str(text).split(",") if v.strip())


def _spacing(text):
    return _HALF if str(text).strip() == "half-wavelength" else float(text)


def _flag(text):
    value = str(text).strip().lower()
    if value in ("", "1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# scenario key -> (ScenarioConfig field, parser)
KEYS = {
    "freq-ghz": ("carrier_freq", lambda s: float(s) * 1e9),
    "wavelength-m": ("wavelength", float),
    "spacing-m": ("spacing", _spacing),
    "half-wavelength": ("spacing", lambda s: _HALF if _flag(s) else None),
    "elements": ("elements", _ints),
    "ref-snr-db": ("ref_snr_db", float),
    "user-r-m": ("user_r", _floats),
    "user-theta-deg": ("user_theta_deg", _floats),
    "alpha": ("alpha", float),
    "seed": ("seed", int),
    "trials": ("trials", int),
    "users": ("users", int),
    "workers": ("workers", int),
    "sweep": ("sweep", Sweep.parse),
}


def read_scenario(path) -> dict[str, str]:
    """Read a ``key=value`` scenario file; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("_", "-")
        if not sep or key not in KEYS and key != "out":
            raise ConfigError(f"{path}:{lineno}: unrecognized line {raw!r}")
        values[key] = value.strip()
    return values


def build_config(raw: dict[str, str]) -> ScenarioConfig:
    kwargs = {}
    for key, value in raw.items():
        if key == "out":
            continue
        name, parse = KEYS[key]
        try:
            parsed = parse(value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}") from None
        if key == "half-wavelength" and parsed is None:
            continue
        kwargs[name] = None if parsed is _HALF else parsed
    return ScenarioConfig(**kwargs)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", metavar="FILE", help="scenario file of key=value lines")
    common.add_argument("--freq-ghz", help="carrier frequency in GHz (default 2.4)")
    common.add_argument("--wavelength-m", help="wavelength in m (overrides --freq-ghz)")
    spacing = common.add_mutually_exclusive_group()
    spacing.add_argument("--spacing-m", help="element spacing in m")
    spacing.add_argument("--half-wavelength", action="store_const", const="true",
                         help="element spacing of half a wavelength (default)")
    common.add_argument("--elements", help="element count(s), comma separated")
    common.add_argument("--ref-snr-db", help="reference SNR P*beta0/sigma^2 in dB (default 50)")
    common.add_argument("--user-r-m", help="user distance(s) in m, comma separated")
    common.add_argument("--user-theta-deg", help="user direction(s) in degrees, comma separated")
    common.add_argument("--alpha", help="power-ratio threshold for the critical distance")
    common.add_argument("--seed", help="Monte Carlo seed (64-bit unsigned)")
    common.add_argument("--trials", help="Monte Carlo trials (default 100)")
    common.add_argument("--users", help="users per trial for fig7 (default 10)")
    common.add_argument("--workers", help="worker processes for Monte Carlo trials")
    common.add_argument("--sweep", help="start:stop:points[:log]")
    common.add_argument("--out", help="output CSV path (default: standard output)")

    parser = argparse.ArgumentParser(prog="xlmimo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(RUNNERS) + ["classify"]:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = vars(_parser().parse_args(argv))
    command = args.pop("command")
    try:
        raw = read_scenario(args.pop("config")) if "config" in args else {}
        for key, value in args.items():
            key = key.replace("_", "-")
            for dropped in _SPACING_KEYS if key in _SPACING_KEYS else (key,):
                raw.pop(dropped, None)
            raw[key] = value
        config = build_config(raw)
        if command == "classify":
            text = format_report(classify_cli(config))
        else:
            text = RUNNERS[command](config).to_csv()
    except ConfigError as exc:
        print(f"xlmimo: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"xlmimo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"xlmimo: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out = raw.get("out")
    if out and command != "classify":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
