"""Command-line entry point: one tool, one subcommand per capability.

Every run writes its outputs under ``--out`` together with a manifest JSON
recording the resolved parameters, seed, tool version, output paths, and
wall time.  CSV output uses a header row, comma separators, and scientific
notation with 17 significant digits so that re-running a manifest reproduces
byte-identical files.

Exit codes: 0 success, 2 validation error, 3 numerical-quality error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from importlib.metadata import version as pkg_version

import numpy as np

from . import activations as acts
from . import dual as dual_mod
from . import finite_width as fw
from . import gp_paths
from . import hermite as hermite_mod
from . import kernels as kern
from . import spectrum as spec_mod
from .errors import NumericalQualityError, ValidationError

FLOAT_FMT = "%.17e"


def _tool_version() -> str:
    try:
        return pkg_version("neural-kernels")
    except Exception:
        return "unknown"


def _configure_threads(n_threads: int):
    if n_threads <= 0:
        return None
    try:
        import threadpoolctl

        return threadpoolctl.threadpool_limits(limits=n_threads)
    except ImportError:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = str(n_threads)
        return None


def _parse_params(items):
    params = {}
    for item in items or []:
        key, _, value = item.partition("=")
        if not _:
            raise ValidationError(f"--params entries look like key=value, got {item!r}")
        try:
            params[key] = float(value)
        except ValueError:
            params[key] = value
    # integer-valued params that must stay integers
    for key in ("m", "k"):
        if key in params:
            params[key] = int(params[key])
    return params


def _parse_grid(text: str):
    try:
        t0, t1, n = text.split(":")
        return np.linspace(float(t0), float(t1), int(n))
    except ValueError as exc:
        raise ValidationError(f"grid must look like t0:t1:n, got {text!r}") from exc


def _parse_window(text):
    if text is None:
        return None
    try:
        a, b = text.split(":")
        return (int(a), int(b))
    except ValueError as exc:
        raise ValidationError(f"window must look like a:b, got {text!r}") from exc


def _write_csv(path, header, columns):
    rows = len(columns[0])
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(rows):
            cells = []
            for col in columns:
                value = col[i]
                if isinstance(value, str):
                    cells.append(value)
                elif isinstance(value, (int, np.integer)):
                    cells.append(str(int(value)))
                else:
                    cells.append(FLOAT_FMT % float(value))
            fh.write(",".join(cells) + "\n")


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _manifest(out_dir, stem, subcommand, params, outputs, started, seed=None):
    payload = {
        "subcommand": subcommand,
        "parameters": params,
        "seed": seed,
        "tool_version": _tool_version(),
        "outputs": [os.path.basename(p) for p in outputs],
        "wall_time_s": round(time.monotonic() - started, 3),
    }
    path = os.path.join(out_dir, f"{stem}.manifest.json")
    _write_json(path, payload)
    return path


def _activation(args):
    return acts.make_activation(args.activation, **_parse_params(getattr(args, "params", None)))


def _network_config(args):
    return kern.NetworkConfig(
        depth=args.depth, sigma_w2=args.sw2, sigma_b2=args.sb2, sigma_i2=args.si2
    )


def _load_spectrum_csv(path, d_override=None):
    data = np.genfromtxt(path, delimiter=",", names=True)
    mu = np.asarray(data["mu"], float)
    mult = np.asarray(data["N_ld"], float)
    d = int(d_override) if d_override else int(round(mult[1])) - 1
    return spec_mod.Spectrum(d=d, mu=mu, multiplicities=mult, n_quad=0, source=path)


def _spectrum_to_csv(path, spectrum):
    ls = np.arange(spectrum.l_max + 1)
    _write_csv(path, ["l", "mu", "N_ld"],
               [ls, spectrum.mu, spectrum.multiplicities.astype(int)])


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_classify(args):
    started = time.monotonic()
    act = _activation(args)
    report = acts.classify(act, max_order=args.max_order)
    payload = report.to_dict()
    payload["activation"] = act.name
    stem = f"classify_{act.name.replace(':', '_').replace(',', '_')}"
    path = os.path.join(args.out, stem + ".json")
    _write_json(path, payload)
    print(json.dumps(payload, sort_keys=True))
    _manifest(args.out, stem, "classify", _args_dict(args), [path], started)
    return 0


def _cmd_hermite(args):
    started = time.monotonic()
    act = _activation(args)
    series = hermite_mod.expand(act, args.n_coeffs)
    stem = f"hermite_{act.name.replace(':', '_').replace(',', '_')}"
    path = os.path.join(args.out, stem + ".csv")
    _write_csv(path, ["n", "a_n"], [np.arange(series.coeffs.size), series.coeffs])
    _manifest(args.out, stem, "hermite", _args_dict(args), [path], started)
    return 0


def _cmd_dual(args):
    started = time.monotonic()
    act = _activation(args)
    evaluator = dual_mod.make_dual(act, backend=args.backend)
    grid = _parse_grid(args.grid)
    values = evaluator(grid)
    stem = f"dual_{act.name.replace(':', '_').replace(',', '_')}_{args.backend}"
    path = os.path.join(args.out, stem + ".csv")
    _write_csv(path, ["t", "dual"], [grid, values])
    _manifest(args.out, stem, "dual", _args_dict(args), [path], started)
    return 0


def _cmd_kernel(args):
    started = time.monotonic()
    act = _activation(args)
    cfg = _network_config(args)
    builder = kern.build_nngp if args.kind == "nngp" else kern.build_ntk
    kernel = builder(act, cfg, backend=args.backend)
    grid = _parse_grid(args.grid)
    values = kernel.evaluate(grid)
    stem = f"kernel_{args.kind}_{act.name.replace(':', '_').replace(',', '_')}_L{args.depth}"
    path = os.path.join(args.out, stem + ".csv")
    _write_csv(path, ["t", "kappa"], [grid, values])
    _manifest(args.out, stem, "kernel", _args_dict(args), [path], started)
    return 0


def _cmd_spectrum(args):
    started = time.monotonic()
    act = _activation(args)
    cfg = _network_config(args)
    builder = kern.build_nngp if args.kind == "nngp" else kern.build_ntk
    kernel = builder(act, cfg, backend=args.backend)
    spectrum = spec_mod.eigenvalues(kernel, d=args.d, l_max=args.lmax, n_quad=args.nquad)
    stem = f"spectrum_{args.kind}_{act.name.replace(':', '_').replace(',', '_')}_L{args.depth}_d{args.d}"
    path = os.path.join(args.out, stem + ".csv")
    _spectrum_to_csv(path, spectrum)
    _manifest(args.out, stem, "spectrum", _args_dict(args), [path], started)
    return 0


def _cmd_fit(args):
    started = time.monotonic()
    spectrum = _load_spectrum_csv(args.spectrum, args.d)
    fit = spec_mod.fit_decay(spectrum, parity=args.parity, window=_parse_window(args.window))
    payload = fit.to_dict()
    payload["spectrum"] = os.path.basename(args.spectrum)
    stem = f"fit_{os.path.splitext(os.path.basename(args.spectrum))[0]}_{args.parity}"
    path = os.path.join(args.out, stem + ".json")
    _write_json(path, payload)
    print(json.dumps(payload, sort_keys=True))
    _manifest(args.out, stem, "fit", _args_dict(args), [path], started)
    return 0


def _cmd_predict(args):
    started = time.monotonic()
    act = _activation(args)
    cfg = _network_config(args)
    prediction = spec_mod.predict_exponent(act, cfg, kind=args.kind,
                                           parity=args.parity, d=args.d)
    payload = prediction.to_dict()
    payload["activation"] = act.name
    payload["depth"] = args.depth
    payload["d"] = args.d
    stem = f"predict_{args.kind}_{act.name.replace(':', '_').replace(',', '_')}_L{args.depth}_{args.parity}"
    path = os.path.join(args.out, stem + ".json")
    _write_json(path, payload)
    print(json.dumps(payload, sort_keys=True))
    _manifest(args.out, stem, "predict", _args_dict(args), [path], started)
    return 0


def _points_on_sphere(d, n, seed=None):
    if d == 1:
        theta = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    rng = np.random.Generator(np.random.Philox(key=seed or 0))
    pts = rng.standard_normal((n, d + 1))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _cmd_paths(args):
    started = time.monotonic()
    spectrum = _load_spectrum_csv(args.spectrum, args.d)
    l_max = min(spectrum.l_max, args.lmax) if args.lmax else spectrum.l_max
    basis = gp_paths.SphericalBasis(d=spectrum.d, l_max=l_max)
    path_fn = gp_paths.sample_path(spectrum, basis, seed=args.seed)
    points = _points_on_sphere(spectrum.d, args.grid, seed=args.seed)
    values = path_fn(points)
    stem = f"paths_{os.path.splitext(os.path.basename(args.spectrum))[0]}_seed{args.seed}"
    out_path = os.path.join(args.out, stem + ".csv")
    coords = [points[:, j] for j in range(points.shape[1])]
    _write_csv(out_path, [f"x{j}" for j in range(points.shape[1])] + ["f"], coords + [values])
    _manifest(args.out, stem, "paths", _args_dict(args), [out_path], started, seed=args.seed)
    return 0


def _cmd_sobolev(args):
    started = time.monotonic()
    spectrum = _load_spectrum_csv(args.spectrum, args.d)
    try:
        r0, r1, n = args.r_range.split(":")
        rs = np.linspace(float(r0), float(r1), int(n))
    except ValueError as exc:
        raise ValidationError(f"--r-range must look like a:b:n, got {args.r_range!r}") from exc
    verdicts, exponents = [], []
    for r in rs:
        series = gp_paths.sobolev_series(spectrum, float(r))
        verdicts.append(series.verdict)
        exponents.append(series.tail_exponent)
    stem = f"sobolev_{os.path.splitext(os.path.basename(args.spectrum))[0]}"
    path = os.path.join(args.out, stem + ".csv")
    _write_csv(path, ["r", "verdict", "tail_exponent"], [rs, verdicts, exponents])
    _manifest(args.out, stem, "sobolev", _args_dict(args), [path], started)
    return 0


def _cmd_mc_validate(args):
    started = time.monotonic()
    act = _activation(args)
    cfg = _network_config(args)
    rng = np.random.Generator(np.random.Philox(key=args.seed))
    points = rng.standard_normal((args.pairs, 2, args.d + 1))
    points /= np.linalg.norm(points, axis=2, keepdims=True)
    pairs = [(points[j, 0], points[j, 1]) for j in range(args.pairs)]
    pairs[0] = (points[0, 0], points[0, 0])  # include a diagonal pair
    results = fw.estimate(act, cfg, pairs, width=args.width,
                          n_samples=args.samples, seed=args.seed)
    nngp = kern.build_nngp(act, cfg, backend="hermite")
    ntk = kern.build_ntk(act, cfg, backend="hermite")
    rows = []
    for res in results:
        analytic_nngp = float(nngp.evaluate(res.t))
        analytic_ntk = float(ntk.evaluate(res.t))
        rows.append({
            "t": res.t,
            "empirical_nngp": res.nngp_mean,
            "se_nngp": res.nngp_se,
            "analytic_nngp": analytic_nngp,
            "z_nngp": (res.nngp_mean - analytic_nngp) / res.nngp_se,
            "empirical_ntk": res.ntk_mean,
            "se_ntk": res.ntk_se,
            "analytic_ntk": analytic_ntk,
            "z_ntk": (res.ntk_mean - analytic_ntk) / res.ntk_se,
        })
    stem = f"mc_{act.name.replace(':', '_').replace(',', '_')}_L{args.depth}_w{args.width}"
    path = os.path.join(args.out, stem + ".json")
    _write_json(path, {"pairs": rows, "width": args.width, "samples": args.samples})
    print(json.dumps({"max_abs_z_nngp": max(abs(r["z_nngp"]) for r in rows),
                      "max_abs_z_ntk": max(abs(r["z_ntk"]) for r in rows)}))
    _manifest(args.out, stem, "mc-validate", _args_dict(args), [path], started, seed=args.seed)
    return 0


FIG1_ACTS = [("relu", {}), ("leakyrelu", {}), ("selu", {}), ("elu", {"alpha": 0.5}),
             ("celu", {})]
FIG2_ACTS = [("relu", {}), ("gelu", {}), ("selu", {}), ("celu", {})]


def _cmd_figures(args):
    started = time.monotonic()
    outputs = []
    if args.figure == "fig1":
        cfg = kern.NetworkConfig(depth=3, sigma_w2=1.0, sigma_b2=1.0, sigma_i2=1.0)
        for name, params in FIG1_ACTS:
            act = acts.make_activation(name, **params)
            for kind in ("nngp", "ntk"):
                builder = kern.build_nngp if kind == "nngp" else kern.build_ntk
                kernel = builder(act, cfg)
                spectrum = spec_mod.eigenvalues(kernel, d=2, l_max=args.lmax,
                                                n_quad=args.nquad)
                csv_path = os.path.join(args.out, f"fig1_{name}_{kind}.csv")
                _spectrum_to_csv(csv_path, spectrum)
                outputs.append(csv_path)
                prediction = spec_mod.predict_exponent(act, cfg, kind=kind,
                                                       parity="all", d=2)
                json_path = os.path.join(args.out, f"fig1_{name}_{kind}.predict.json")
                _write_json(json_path, prediction.to_dict())
                outputs.append(json_path)
        stem = "fig1"
    else:
        for bias_tag, (sb2, si2) in (("bias", (1.0, 1.0)), ("nobias", (0.0, 0.0))):
            cfg = kern.NetworkConfig(depth=2, sigma_w2=1.0, sigma_b2=sb2, sigma_i2=si2)
            for name, params in FIG2_ACTS:
                act = acts.make_activation(name, **params)
                kernel = kern.build_ntk(act, cfg)
                spectrum = spec_mod.eigenvalues(kernel, d=2, l_max=args.lmax,
                                                n_quad=args.nquad)
                csv_path = os.path.join(args.out, f"fig2_{name}_{bias_tag}.csv")
                _spectrum_to_csv(csv_path, spectrum)
                outputs.append(csv_path)
                for parity in ("even", "odd"):
                    prediction = spec_mod.predict_exponent(act, cfg, kind="ntk",
                                                           parity=parity, d=2)
                    json_path = os.path.join(
                        args.out, f"fig2_{name}_{bias_tag}.{parity}.predict.json"
                    )
                    _write_json(json_path, prediction.to_dict())
                    outputs.append(json_path)
        stem = "fig2"
    _manifest(args.out, stem, "figures", _args_dict(args), outputs, started)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _args_dict(args):
    skip = {"func", "config"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _add_common(p):
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--config", default=None, help="flat key-value JSON config file")
    p.add_argument("--threads", type=int, default=int(os.environ.get("NK_THREADS", "0")),
                   help="worker threads for numerics (0 = auto)")


def _add_network(p):
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--sw2", type=float, default=1.0)
    p.add_argument("--sb2", type=float, default=1.0)
    p.add_argument("--si2", type=float, default=1.0)
    p.add_argument("--backend", choices=["quadrature", "hermite"], default="quadrature")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nk",
        description="Neural kernels of deep fully connected networks: duals, "
        "spectra, sample paths, and finite-width validation.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("classify", help="smoothness report of an activation")
    p.add_argument("activation")
    p.add_argument("--params", nargs="*", default=None)
    p.add_argument("--max-order", type=int, default=6, dest="max_order")
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("hermite", help="Hermite coefficients of an activation")
    p.add_argument("activation")
    p.add_argument("--params", nargs="*", default=None)
    p.add_argument("--n-coeffs", type=int, default=512, dest="n_coeffs")
    _add_common(p)
    p.set_defaults(func=_cmd_hermite)

    p = sub.add_parser("dual", help="dual activation values on a grid")
    p.add_argument("activation")
    p.add_argument("--params", nargs="*", default=None)
    p.add_argument("--backend", choices=["hermite", "quadrature"], default="hermite")
    p.add_argument("--grid", default="-0.99:0.99:199")
    _add_common(p)
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("kernel", help="NNGP/NTK kernel values on a grid")
    p.add_argument("--kind", choices=["nngp", "ntk"], required=True)
    p.add_argument("--act", dest="activation", required=True)
    p.add_argument("--params", nargs="*", default=None)
    p.add_argument("--grid", default="-1:1:201")
    _add_network(p)
    _add_common(p)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("spectrum", help="eigenvalues of a neural kernel on S^d")
    p.add_argument("--kind", choices=["nngp", "ntk"], required=True)
    p.add_argument("--act", dest="activation", required=True)
    p.add_argument("--params", nargs="*", default=None)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--lmax", type=int, default=spec_mod.DEFAULT_L_MAX)
    p.add_argument("--nquad", type=int, default=spec_mod.DEFAULT_N_QUAD)
    _add_network(p)
    _add_common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("fit", help="log-log decay fit of a spectrum CSV")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--parity", choices=["even", "odd", "all"], default="all")
    p.add_argument("--window", default=None)
    p.add_argument("--d", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("predict", help="predicted eigenvalue structure")
    p.add_argument("--kind", choices=["nngp", "ntk"], required=True)
    p.add_argument("--act", dest="activation", required=True)
    p.add_argument("--params", nargs="*", default=None)
    p.add_argument("--parity", choices=["even", "odd", "all"], default="all")
    p.add_argument("--d", type=int, default=2)
    _add_network(p)
    _add_common(p)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("paths", help="sample a GP path from a spectrum CSV")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--lmax", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_paths)

    p = sub.add_parser("sobolev", help="Sobolev-norm convergence verdicts")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--r-range", default="0.5:3.0:11", dest="r_range")
    p.add_argument("--d", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_sobolev)

    p = sub.add_parser("mc-validate", help="finite-width Monte-Carlo validation")
    p.add_argument("--act", dest="activation", required=True)
    p.add_argument("--params", nargs="*", default=None)
    p.add_argument("--width", type=int, default=1024)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--pairs", type=int, default=10)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    _add_network(p)
    _add_common(p)
    p.set_defaults(func=_cmd_mc_validate)

    p = sub.add_parser("figures", help="spectrum CSV bundles behind the standard figures")
    p.add_argument("figure", choices=["fig1", "fig2"])
    p.add_argument("--lmax", type=int, default=spec_mod.DEFAULT_L_MAX)
    p.add_argument("--nquad", type=int, default=spec_mod.DEFAULT_N_QUAD)
    _add_common(p)
    p.set_defaults(func=_cmd_figures)

    parser.subcommand_parsers = {name: sp for name, sp in sub.choices.items()}
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    # config file values sit between CLI flags and defaults; they must land
    # on the active subcommand's parser to take effect
    pre, _ = parser.parse_known_args(argv)
    if getattr(pre, "config", None):
        with open(pre.config) as fh:
            parser.subcommand_parsers[pre.subcommand].set_defaults(**json.load(fh))
    args = parser.parse_args(argv)
    _configure_threads(args.threads)
    os.makedirs(args.out, exist_ok=True)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalQualityError as exc:
        print(f"numerical-quality error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
