"""Command line interface.

    range-enclosure COMMAND CONFIG.json [options]

Commands: poles, member, axis, boundary, strip, pseudo, bound, validate,
figure.  Exit status is 0 on success, 1 for configuration errors and 2 for
numerical failures (the error class name is printed on stderr).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .axis import axis_segments
from .boundary import boundary_set, default_im_grid, default_viewport
from .core import OmegaBox, ProblemParams, poles
from .errors import EnclosureError
from .membership import contains, contains_grid
from .oracle import MatrixPair, sample_numerical_range, sigma_min_T
from .pseudo import epsilon0, epsilon0_grid, pseudo_axis_segments, pseudo_contour, resolvent_bound
from .strip import strip_alpha, strip_edges_beta, strip_exists_beta
from .svg import EDGE_COLORS, Figure, curve_polylines

COMMANDS = ("poles", "member", "axis", "boundary", "strip", "pseudo", "bound", "validate", "figure")


class ConfigError(ValueError):
    """Invalid configuration or command line input."""


# ---------------------------------------------------------------------------
# serialization


def fmt(x: float) -> str:
    """17 significant digits; infinities as inf / -inf."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def to_json(obj) -> str:
    """Deterministic JSON with floats at 17 significant digits.

    Non-finite floats become the strings "inf", "-inf" and "nan".
    """
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        s = fmt(obj)
        if not math.isfinite(obj):
            return json.dumps(s)
        return s if any(ch in s for ch in ".en") else s + ".0"
    if isinstance(obj, complex):
        return to_json([obj.real, obj.imag])
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_csv(rows, header, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in r])


# ---------------------------------------------------------------------------
# configuration


@dataclass
class ProblemConfig:
    params: ProblemParams
    box: OmegaBox
    viewport: tuple | None = None
    resolution: int = 256
    epsilon: float | None = None
    seed: int = 0


def _num(v, name: str) -> float:
    if isinstance(v, str):
        if v.strip() in ("inf", "+inf", "-inf"):
            return float(v)
        raise ConfigError(f"{name}: expected a number or 'inf'/'-inf', got {v!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{name}: expected a number, got {v!r}")
    return float(v)


def load_config(path: str) -> ProblemConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    try:
        c = _num(raw["c"], "c")
        d = _num(raw["d"], "d")
        alpha = raw["alpha"]
        beta = raw["beta"]
    except KeyError as e:
        raise ConfigError(f"missing key {e}") from e
    if not (isinstance(alpha, list) and len(alpha) == 2 and isinstance(beta, list) and len(beta) == 2):
        raise ConfigError("alpha and beta must be two-element arrays")
    try:
        params = ProblemParams(c, d)
        box = OmegaBox(_num(alpha[0], "alpha[0]"), _num(alpha[1], "alpha[1]"),
                       _num(beta[0], "beta[0]"), _num(beta[1], "beta[1]"))
    except (ValueError, TypeError) as e:
        raise ConfigError(str(e)) from e
    vp = raw.get("viewport")
    if vp is not None:
        if not (isinstance(vp, list) and len(vp) == 4):
            raise ConfigError("viewport must be [re_lo, re_hi, im_lo, im_hi]")
        vp = tuple(_num(v, "viewport") for v in vp)
        if not (vp[0] < vp[1] and vp[2] < vp[3]):
            raise ConfigError("viewport bounds must be increasing")
    res = raw.get("resolution", 256)
    if not isinstance(res, int) or res < 64:
        raise ConfigError("resolution must be an integer >= 64")
    eps = raw.get("epsilon")
    if eps is not None:
        eps = _num(eps, "epsilon")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    return ProblemConfig(params, box, vp, res, eps, seed)


def _pair(s: str | None, name: str) -> complex:
    if s is None:
        raise ConfigError(f"--{name} is required")
    try:
        a, b = (float(t) for t in s.split(","))
    except ValueError as e:
        raise ConfigError(f"--{name} expects 're,im', got {s!r}") from e
    return complex(a, b)


def thread_count(flag: int | None) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get("RANGE_ENCLOSURE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as e:
            raise ConfigError("RANGE_ENCLOSURE_THREADS must be an integer") from e
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# commands


def cmd_poles(cfg, args, out):
    dp, dm, th = poles(cfg.params)
    out.write(to_json({"theta": th, "delta_plus": dp, "delta_minus": dm}) + "\n")


def cmd_member(cfg, args, out):
    w = _pair(args.omega, "omega")
    v = contains(w, cfg.box, cfg.params)
    out.write(to_json({"omega": w, "inside": v.inside, "witness": v.witness, "alpha": v.alpha,
                       "beta": v.beta, "boundary_flag": v.boundary_flag}) + "\n")


def cmd_axis(cfg, args, out):
    eps = args.epsilon if args.epsilon is not None else 0.0
    st = pseudo_axis_segments(cfg.box, eps, cfg.params) if eps > 0 else axis_segments(cfg.box, cfg.params)
    out.write(to_json({"epsilon": eps, **st.to_dict()}) + "\n")


def _viewport(cfg):
    return cfg.viewport if cfg.viewport is not None else default_viewport(cfg.box, cfg.params)


def cmd_boundary(cfg, args, out):
    vp = _viewport(cfg)
    span = vp[3] - vp[2]
    curves = boundary_set(cfg.box, default_im_grid(vp[2] - 0.1 * span, vp[3] + 0.1 * span, cfg.params), cfg.params)
    rows = []
    for cv in curves:
        for p, tag in cv.tagged_points():
            rows.append((p.real, p.imag, cv.edge_tag, tag))
    write_csv(rows, ["re", "im", "edge_tag", "branch_tag"], out)


def cmd_strip(cfg, args, out):
    if (args.beta is None) == (args.alpha is None):
        raise ConfigError("strip needs exactly one of --beta or --alpha")
    if args.beta is not None:
        if not strip_exists_beta(args.beta, cfg.params):
            res = {"exists": False, "beta": args.beta}
        else:
            res = {"beta": args.beta, **strip_edges_beta(args.beta, cfg.params).to_dict()}
    else:
        res = {"alpha": args.alpha, **strip_alpha(args.alpha, cfg.params).to_dict()}
    out.write(to_json(res) + "\n")


def cmd_pseudo(cfg, args, out):
    eps = args.epsilon if args.epsilon is not None else cfg.epsilon
    if eps is None:
        raise ConfigError("pseudo needs --epsilon or an epsilon in the config")
    lines = pseudo_contour(cfg.box, eps, _viewport(cfg), cfg.resolution, cfg.params, threads=args.threads)
    rows = [(k, p.real, p.imag) for k, ln in enumerate(lines) for p in ln]
    write_csv(rows, ["polyline", "re", "im"], out)


def cmd_bound(cfg, args, out):
    w = _pair(args.omega, "omega")
    r = epsilon0(w, cfg.box, cfg.params)
    out.write(to_json({"omega": w, "epsilon0": r.value, "bound": resolvent_bound(w, cfg.box, cfg.params),
                       "argmin": [r.alpha, r.beta], "branch": r.branch}) + "\n")


def cmd_validate(cfg, args, out):
    """Run the oracle suites on the configured box."""
    p, box = cfg.params, cfg.box
    rng_seed = cfg.seed
    pair = MatrixPair.realize(box, 8, seed=rng_seed)
    pts = sample_numerical_range(pair, args.samples, rng_seed, p).flat()
    sound = contains_grid(pts, box, p, threads=args.threads)
    vp = _viewport(cfg)
    xs = np.linspace(vp[0], vp[1], 60)
    ys = np.linspace(vp[2], vp[3], 60)
    W = (xs[None, :] + 1j * ys[:, None]).ravel()
    E = epsilon0_grid(W, box, p)
    ext = W[(E > 0) & np.isfinite(E)]
    viol = sum(sigma_min_T(pair, w, p) < e - 1e-10 for w, e in zip(ext, E[(E > 0) & np.isfinite(E)]))
    st = axis_segments(box, p)
    mus = np.linspace(vp[2], vp[3], 2001)
    grid_in = contains_grid(1j * mus, box, p)
    tol = 2 * (mus[1] - mus[0])
    ends = [e for s in st.segments for e in s] + list(st.isolated)
    ax_bad = sum(
        1 for m, g in zip(mus, grid_in) if st.contains_mu(m) != bool(g) and not any(abs(m - e) <= tol for e in ends)
    )
    res = {
        "soundness": {"points": int(pts.size), "violations": int((~sound).sum()), "pass": bool(sound.all())},
        "bound": {"points": int(len(ext)), "violations": int(viol), "pass": viol == 0},
        "axis": {"points": int(len(mus)), "mismatches": int(ax_bad), "pass": ax_bad == 0},
    }
    res["pass"] = all(v["pass"] for v in res.values() if isinstance(v, dict))
    out.write(to_json(res) + "\n")


def cmd_figure(cfg, args, out):
    p, box = cfg.params, cfg.box
    vp = _viewport(cfg)
    fig = Figure(vp)
    fig.axes()
    span = vp[3] - vp[2]
    for cv in boundary_set(box, default_im_grid(vp[2] - 0.1 * span, vp[3] + 0.1 * span, p), p):
        for ln in curve_polylines(cv, p):
            fig.polyline(ln, EDGE_COLORS.get(cv.edge_tag, "black"), 1.2)
    eps = args.epsilon if args.epsilon is not None else cfg.epsilon
    if eps:
        for ln in pseudo_contour(box, eps, vp, max(128, cfg.resolution // 2), p, threads=args.threads):
            fig.polyline(ln, "#777777", 1.0, 0.8)
    st = axis_segments(box, p)
    for a, b in st.segments:
        fig.polyline([complex(0, max(a, vp[2] - span)), complex(0, min(b, vp[3] + span))], "black", 3.0)
    for m in st.isolated:
        fig.circle(complex(0, m), 3.0)
    dp, dm, _ = poles(p)
    fig.cross(dp, color="#444444")
    fig.cross(dm, color="#444444")
    fig.text(complex(vp[0] + 0.02 * (vp[1] - vp[0]), vp[3] - 0.05 * span),
             f"c={fmt(p.c)} d={fmt(p.d)} alpha=[{fmt(box.alpha_lo)},{fmt(box.alpha_hi)}] "
             f"beta=[{fmt(box.beta_lo)},{fmt(box.beta_hi)}]")
    out.write(fig.render())


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="range-enclosure", description="Numerical range enclosures of a rational operator function.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("config", help="JSON problem configuration")
    ap.add_argument("--omega", help="point as 're,im'")
    ap.add_argument("--epsilon", type=float)
    ap.add_argument("--beta", type=float)
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--samples", type=int, default=2000, help="numerical range samples for validate")
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("-o", "--output", help="output file (default: standard output)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0
    try:
        cfg = load_config(args.config)
        args.threads = thread_count(args.threads)
        buf = io.StringIO()
        HANDLERS[args.command](cfg, args, buf)
    except ConfigError as e:
        print(f"ConfigError: {e}", file=sys.stderr)
        return 1
    except EnclosureError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"ConfigError: {e}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        try:
            sys.stdout.write(buf.getvalue())
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stderr.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
