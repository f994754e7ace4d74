"""Scenario-driven command line front end.

A declarative JSON config selects a beam, optional aperture window and
sampling, an observation grid, and optional obstacle / receiver / pulse
sections.  Commands:

    field     intensity + complex field over the grid
    caustic   caustic curve and range report
    pathloss  received energy and path loss along the caustic
    knife     knife-edge obstructed field and received energy
    softheal  soft-obstacle diffracted field and similarity index
    pulse     polychromatic (pulsed) intensity over the grid
    validate  fast invariant suite; nonzero exit on failure

Lengths in the config are wavelength-normalized by default; with a
``carrier_ghz`` key they are read as meters and converted.  Artifacts
are deterministic: a long-form CSV (z,x,re,im,intensity), a JSON
metadata sidecar, and optionally an 8-bit log-scaled PGM preview.
"""

import argparse
import concurrent.futures
import json
import math
import os
import sys

import numpy as np

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

from . import budget, caustics, obstacles, polychrome
from .aperture import (
    DEFAULT_DX,
    AiryBeamSpec,
    GaussianBeamSpec,
    aperture_energy,
    make_airy_aperture,
    make_gaussian_aperture,
)
from .errors import BeamSimError, ConfigError
from .propagate import (
    FieldGrid,
    airy_envelope,
    airy_field_grid,
    gaussian_field_grid,
    intensity_grid,
    propagate_fresnel,
    propagate_rs,
)
from .units import K0, wavelength_m

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

#: decades of intensity kept in the PGM preview
PREVIEW_LOG_RANGE = 4.0

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["beam", "grid"],
    "properties": {
        "carrier_ghz": {"type": "number", "exclusiveMinimum": 0},
        "beam": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["airy", "gaussian"]},
                "gamma_over_k0": {"type": "number", "exclusiveMinimum": 0},
                "alpha": {"type": "number", "minimum": 0},
                "nu": {"type": "number"},
                "amplitude": {"type": "number", "exclusiveMinimum": 0},
                "normalize": {"type": "boolean"},
                "mirror": {"type": "boolean"},
                "waist": {"type": "number", "exclusiveMinimum": 0},
                "mu_over_k0": {"type": "number"},
                "center": {"type": "number"},
            },
        },
        "aperture": {
            "type": "object",
            "additionalProperties": False,
            "required": ["x1", "x2"],
            "properties": {
                "x1": {"type": "number"},
                "x2": {"type": "number"},
                "dx": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "required": ["z_min", "z_max", "nz", "x_min", "x_max", "nx"],
            "properties": {
                "z_min": {"type": "number", "exclusiveMinimum": 0},
                "z_max": {"type": "number", "exclusiveMinimum": 0},
                "nz": {"type": "integer", "minimum": 1},
                "x_min": {"type": "number"},
                "x_max": {"type": "number"},
                "nx": {"type": "integer", "minimum": 1},
            },
        },
        "obstacle": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind", "z_b"],
            "properties": {
                "kind": {"enum": ["knife", "soft"]},
                "z_b": {"type": "number", "minimum": 0},
                "x_b1": {"type": "number"},
                "x_b2": {"type": "number"},
                "clearance": {"type": "number"},
                "mu_obs": {"type": "number"},
                "sigma_obs": {"type": "number", "exclusiveMinimum": 0},
                "column_span": {
                    "type": "array", "items": {"type": "number"},
                    "minItems": 2, "maxItems": 2,
                },
            },
        },
        "receiver": {
            "type": "object",
            "additionalProperties": False,
            "required": ["width"],
            "properties": {
                "width": {"type": "number", "exclusiveMinimum": 0},
                "z_c": {"type": "number", "exclusiveMinimum": 0},
                "position": {
                    "type": "array", "items": {"type": "number"},
                    "minItems": 2, "maxItems": 2,
                },
            },
        },
        "pulse": {
            "type": "object",
            "additionalProperties": False,
            "required": ["bandwidth_ratio"],
            "properties": {
                "bandwidth_ratio": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 2},
                "n_nodes": {"type": "integer", "minimum": 1},
            },
        },
        "ranges": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"n": {"type": "integer", "minimum": 1}},
        },
    },
}


class ScenarioConfig:
    """Validated scenario: beam spec plus grid/aperture/obstacle/receiver/pulse."""

    def __init__(self, raw):
        self.raw = raw
        scale = 1.0
        if "carrier_ghz" in raw:
            scale = 1.0 / wavelength_m(raw["carrier_ghz"])  # meters -> wavelengths
        self.length_scale = scale

        beam = raw["beam"]
        self.beam_kind = beam["kind"]
        if self.beam_kind == "airy":
            if "gamma_over_k0" not in beam:
                raise ConfigError("beam.gamma_over_k0 is required for an airy beam")
            gamma = beam["gamma_over_k0"] * K0
            alpha = beam.get("alpha", 0.0) / scale if scale != 1.0 else beam.get("alpha", 0.0)
            nu = beam.get("nu", 0.0) / scale if scale != 1.0 else beam.get("nu", 0.0)
            if beam.get("normalize", True):
                if alpha <= 0:
                    raise ConfigError("beam.alpha must be positive to normalize energy")
                self.beam = AiryBeamSpec.normalized(
                    gamma, alpha, nu, mirror=beam.get("mirror", False)
                )
            else:
                self.beam = AiryBeamSpec(
                    gamma_a=gamma, alpha_a=alpha, nu_a=nu,
                    amplitude=beam.get("amplitude", 1.0),
                    mirror=beam.get("mirror", False),
                )
        else:
            if "waist" not in beam:
                raise ConfigError("beam.waist is required for a gaussian beam")
            waist = beam["waist"] * scale
            mu = beam.get("mu_over_k0", 0.0) * K0
            center = beam.get("center", 0.0) * scale
            if beam.get("normalize", True):
                self.beam = GaussianBeamSpec.normalized(waist, mu, center)
            else:
                self.beam = GaussianBeamSpec(
                    waist=waist, mu_a=mu, amplitude=beam.get("amplitude", 1.0), center=center
                )

        g = raw["grid"]
        if g["z_max"] <= g["z_min"]:
            raise ConfigError("grid.z_max must exceed grid.z_min")
        if g["x_max"] <= g["x_min"]:
            raise ConfigError("grid.x_max must exceed grid.x_min")
        self.z = np.linspace(g["z_min"] * scale, g["z_max"] * scale, g["nz"])
        self.x = np.linspace(g["x_min"] * scale, g["x_max"] * scale, g["nx"])

        ap = raw.get("aperture")
        self.aperture_window = None
        self.dx = DEFAULT_DX
        if ap is not None:
            if ap["x2"] <= ap["x1"]:
                raise ConfigError("aperture.x2 must exceed aperture.x1")
            self.aperture_window = (ap["x1"] * scale, ap["x2"] * scale)
            self.dx = ap.get("dx", DEFAULT_DX) * scale

        ob = raw.get("obstacle")
        self.obstacle = None
        self.column_span = None
        if ob is not None:
            zb = ob["z_b"] * scale
            if ob["kind"] == "knife":
                if "clearance" in ob:
                    if self.beam_kind != "airy":
                        raise ConfigError("obstacle.clearance requires an airy beam caustic")
                    x_b1 = obstacles.clearance_edge_position(
                        lambda z: caustics.airy_caustic_x(self.beam, z),
                        zb, ob["clearance"] * scale,
                    )
                elif "x_b1" in ob:
                    x_b1 = ob["x_b1"] * scale
                else:
                    raise ConfigError("obstacle needs x_b1 or clearance")
                x_b2 = ob.get("x_b2", math.inf)
                if x_b2 != math.inf:
                    x_b2 = x_b2 * scale
                if ob.get("sigma_obs") is not None or ob.get("mu_obs") is not None:
                    raise ConfigError("mu_obs/sigma_obs are soft-obstacle keys")
                self.obstacle = obstacles.KnifeEdgeSpec(z_b=zb, x_b1=x_b1, x_b2=x_b2)
            else:
                if "sigma_obs" not in ob or "mu_obs" not in ob:
                    raise ConfigError("soft obstacle needs obstacle.mu_obs and obstacle.sigma_obs")
                if ob["sigma_obs"] <= 0:
                    raise ConfigError("obstacle.sigma_obs must be positive")
                self.obstacle = obstacles.SoftObstacleSpec(
                    z_b=zb, mu_obs=ob["mu_obs"] * scale, sigma_obs=ob["sigma_obs"] * scale
                )
            if "column_span" in ob:
                self.column_span = tuple(v * scale for v in ob["column_span"])

        rc = raw.get("receiver")
        self.receiver = None
        if rc is not None:
            z_c = rc["z_c"] * scale if "z_c" in rc else None
            position = tuple(v * scale for v in rc["position"]) if "position" in rc else None
            self.receiver = budget.ReceiverSpec(
                width=rc["width"] * scale, z_c=z_c, position=position
            )

        pu = raw.get("pulse")
        self.pulse = None
        self.pulse_nodes = polychrome.DEFAULT_FREQ_NODES
        if pu is not None:
            self.pulse = polychrome.PulseSpec(bandwidth_ratio=pu["bandwidth_ratio"])
            self.pulse_nodes = pu.get("n_nodes", polychrome.DEFAULT_FREQ_NODES)

        self.range_n = raw.get("ranges", {}).get("n", 3)


def parse_config(path) -> ScenarioConfig:
    """Load and validate a scenario config; raises ConfigError with key paths."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if jsonschema is not None:
        validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
        errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
        if errors:
            msgs = "; ".join(
                f"{'.'.join(str(p) for p in e.absolute_path) or '<root>'}: {e.message}"
                for e in errors
            )
            raise ConfigError(msgs)
    try:
        return ScenarioConfig(raw)
    except BeamSimError as exc:
        raise ConfigError(str(exc)) from exc


def serialize_config(cfg: ScenarioConfig) -> dict:
    """Round-trippable echo of the raw config."""
    return json.loads(json.dumps(cfg.raw))


def write_grid_csv(fg: FieldGrid, path):
    """Long-form CSV: header z,x,re,im,intensity; %.12e; LF line endings."""
    if not np.all(np.isfinite(fg.field)):
        raise ConfigError("refusing to write non-finite field values")
    inten = intensity_grid(fg)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("z,x,re,im,intensity\n")
        for i, zv in enumerate(fg.z):
            row = fg.field[i]
            for j, xv in enumerate(fg.x):
                fh.write(
                    "%.12e,%.12e,%.12e,%.12e,%.12e\n"
                    % (zv, xv, row[j].real, row[j].imag, inten[i, j])
                )


def read_grid_csv(path) -> FieldGrid:
    """Inverse of write_grid_csv."""
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    data = np.atleast_2d(data)
    z = np.unique(data[:, 0])
    x = np.unique(data[:, 1])
    field = (data[:, 2] + 1j * data[:, 3]).reshape(len(z), len(x))
    return FieldGrid(z=z, x=x, field=field)


def write_intensity_csv(path, columns, rows):
    """Small long-form CSV for 1-D sweeps (e.g. z_c, energy, loss_db)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            if not all(math.isfinite(v) for v in row):
                raise ConfigError("refusing to write non-finite values")
            fh.write(",".join("%.12e" % v for v in row) + "\n")


def write_pgm_preview(fg: FieldGrid, path, log_range=PREVIEW_LOG_RANGE):
    """8-bit binary PGM of log10 intensity, clipped to ``log_range`` decades."""
    inten = intensity_grid(fg)
    peak = float(inten.max())
    if peak <= 0:
        raise ConfigError("cannot preview an all-zero field")
    floor = peak * 10.0 ** (-log_range)
    db = np.log10(np.maximum(inten, floor))
    lo, hi = math.log10(floor), math.log10(peak)
    img = np.round(255 * (db - lo) / (hi - lo)).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (img.shape[1], img.shape[0]))
        fh.write(img.tobytes())  # row-major, x fastest


def _grid_in_threads(row_fn, z, x, threads):
    """Evaluate independent z rows, optionally across a thread pool."""
    out = np.empty((len(z), len(x)), dtype=complex)
    if threads <= 1:
        for i, zv in enumerate(z):
            out[i] = row_fn(zv)
        return out
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {pool.submit(row_fn, zv): i for i, zv in enumerate(z)}
        for fut, i in futures.items():
            out[i] = fut.result()
    return out


def _resolve_threads(threads):
    if threads == 0:
        return min(os.cpu_count() or 1, 8)
    return max(1, threads)


def _make_aperture(cfg: ScenarioConfig):
    x1, x2 = cfg.aperture_window
    if cfg.beam_kind == "airy":
        return make_airy_aperture(cfg.beam, x1, x2, cfg.dx)
    return make_gaussian_aperture(cfg.beam, x1, x2, cfg.dx)


def _field_grid(cfg: ScenarioConfig, threads) -> FieldGrid:
    """Closed form for unbounded apertures, RS quadrature for windows."""
    if cfg.aperture_window is None:
        if cfg.beam_kind == "airy":
            return airy_field_grid(cfg.beam, cfg.z, cfg.x)
        return gaussian_field_grid(cfg.beam, cfg.z, cfg.x)
    ap = _make_aperture(cfg)

    def row(zv):
        return propagate_rs(ap, np.array([zv]), cfg.x).field[0]

    field = _grid_in_threads(row, cfg.z, cfg.x, threads)
    return FieldGrid(z=cfg.z, x=cfg.x, field=field)


def _write_meta(outdir, name, cfg, command, extra=None):
    meta = {
        "command": command,
        "config": serialize_config(cfg),
        "format": {
            "csv": "z,x,re,im,intensity long-form, %.12e, UTF-8, LF",
            "lengths": "wavelength-normalized",
        },
    }
    if extra:
        meta.update(extra)
    path = os.path.join(outdir, name)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_field(cfg, outdir, threads, preview, oracle):
    fg = _field_grid(cfg, threads)
    write_grid_csv(fg, os.path.join(outdir, "field.csv"))
    extra = {}
    if oracle and cfg.aperture_window is None and cfg.beam_kind == "airy":
        # cross-check the closed form against Fresnel quadrature on a
        # wide sampled window
        win = (-12.0 / max(cfg.beam.alpha_a, 0.04), 20.0)
        ap = make_airy_aperture(cfg.beam, win[0], win[1], cfg.dx)
        sub_z = cfg.z[:: max(1, len(cfg.z) // 8)]
        ref = propagate_fresnel(ap, sub_z, cfg.x)
        own = airy_field_grid(cfg.beam, sub_z, cfg.x)
        num = np.linalg.norm(ref.field - own.field)
        den = np.linalg.norm(ref.field)
        extra["oracle_rel_l2"] = float(num / den)
    if preview:
        write_pgm_preview(fg, os.path.join(outdir, "field.pgm"))
    _write_meta(outdir, "field.meta.json", cfg, "field", extra)
    return extra


def _cmd_caustic(cfg, outdir):
    if cfg.beam_kind != "airy":
        raise ConfigError("caustic command requires an airy beam")
    prof = caustics.airy_phase_profile(xi_min=-1e4)
    curve = caustics.caustic_paraxial(prof, cfg.beam.gamma_a, cfg.beam.nu_a, cfg.z)
    rows = [(zc, xc, xic) for zc, xc, xic in zip(curve.z, curve.x, curve.xi)]
    write_intensity_csv(os.path.join(outdir, "caustic.csv"), ["z_c", "x_c", "xi_c"], rows)
    x_eff = None
    if cfg.aperture_window is not None:
        x_eff = abs(cfg.aperture_window[0])
    rep = caustics.range_report(cfg.beam, x_eff=x_eff, n=cfg.range_n)
    _write_meta(
        outdir, "caustic.meta.json", cfg, "caustic",
        {"ranges": {
            "z_max": rep.z_max, "z_corner": rep.z_corner,
            "z_fraunhofer": rep.z_fraunhofer,
            "z_fraunhofer_apodized": rep.z_fraunhofer_apodized,
        }},
    )


def _cmd_pathloss(cfg, outdir, threads):
    if cfg.beam_kind != "airy":
        raise ConfigError("pathloss command requires an airy beam")
    if cfg.receiver is None or cfg.receiver.width is None:
        raise ConfigError("pathloss command needs a receiver section")
    width = cfg.receiver.width
    rows = []
    if cfg.aperture_window is None:
        for zc in cfg.z:
            er = budget.received_energy_closed(cfg.beam, zc, width)
            rows.append((zc, er, budget.path_loss_db(er)))
    else:
        ap = _make_aperture(cfg)
        for zc in cfg.z:
            xc = caustics.airy_caustic_x(cfg.beam, zc)
            xw = np.linspace(xc - width, xc, 97)
            col = propagate_rs(ap, np.array([zc]), xw).field[0]
            er = budget.received_energy(xw, col, xc - width, xc)
            rows.append((zc, er, budget.path_loss_db(er)))
    write_intensity_csv(
        os.path.join(outdir, "pathloss.csv"), ["z_c", "energy", "loss_db"], rows
    )
    _write_meta(outdir, "pathloss.meta.json", cfg, "pathloss")


def _cmd_knife(cfg, outdir, threads, preview):
    if not isinstance(cfg.obstacle, obstacles.KnifeEdgeSpec):
        raise ConfigError("knife command needs a knife obstacle section")
    if cfg.aperture_window is None:
        raise ConfigError("knife command needs a sampled aperture window")
    ap = _make_aperture(cfg)
    zsel = cfg.z[cfg.z > cfg.obstacle.z_b]
    if len(zsel) == 0:
        raise ConfigError("grid lies entirely before the obstacle plane")
    fg = obstacles.two_stage_knife_field(
        ap, cfg.obstacle, zsel, cfg.x, column_span=cfg.column_span
    )
    write_grid_csv(fg, os.path.join(outdir, "knife.csv"))
    extra = {
        "obstructed_energy_fraction": budget.obstructed_energy_fraction(
            ap, (cfg.obstacle.x_b1, cfg.obstacle.x_b2)
        )
    }
    if cfg.receiver is not None and cfg.receiver.position is not None:
        zr, xr = cfg.receiver.position
        w = cfg.receiver.width
        xw = np.linspace(xr - w, xr, 97)
        col = obstacles.two_stage_knife_field(
            ap, cfg.obstacle, np.array([zr]), xw, column_span=cfg.column_span
        ).field[0]
        er = budget.received_energy(xw, col, xr - w, xr)
        extra["received_energy"] = er
        extra["path_loss_db"] = budget.path_loss_db(min(er, 1.0))
    if preview:
        write_pgm_preview(fg, os.path.join(outdir, "knife.pgm"))
    _write_meta(outdir, "knife.meta.json", cfg, "knife", extra)


def _cmd_softheal(cfg, outdir, preview, oracle):
    if not isinstance(cfg.obstacle, obstacles.SoftObstacleSpec):
        raise ConfigError("softheal command needs a soft obstacle section")
    if cfg.beam_kind != "airy":
        raise ConfigError("softheal command requires an airy beam")
    obs = cfg.obstacle
    zsel = cfg.z[cfg.z > obs.z_b]
    if len(zsel) == 0:
        raise ConfigError("grid lies entirely before the obstacle plane")
    field = obstacles.soft_diffracted_field(cfg.beam, obs, zsel[:, None], cfg.x[None, :])
    fg = FieldGrid(z=zsel, x=cfg.x, field=field)
    write_grid_csv(fg, os.path.join(outdir, "softheal.csv"))

    eps = 12.0
    z_lo = obs.z_b + eps / 2.0 + 0.5
    zc_values = zsel[zsel >= z_lo]
    rows = []
    for zc in zc_values:
        xc = caustics.airy_caustic_x(cfg.beam, zc)
        rho = obstacles.similarity_index(
            lambda v, xx: obstacles.soft_diffracted_envelope(cfg.beam, obs, v, xx),
            lambda v, xx: airy_envelope(cfg.beam, v, xx),
            xc, zc, epsilon=eps,
        )
        rows.append((zc, rho))
    if rows:
        write_intensity_csv(os.path.join(outdir, "similarity.csv"), ["z_c", "rho"], rows)
    extra = {}
    if oracle:
        # independent Fresnel quadrature of the soft-obstacle integral
        extra["oracle_rel_l2"] = _softheal_oracle(cfg.beam, obs)
    if preview:
        write_pgm_preview(fg, os.path.join(outdir, "softheal.pgm"))
    _write_meta(outdir, "softheal.meta.json", cfg, "softheal", extra)


def _softheal_oracle(beam, obs, n_z=12, n_x=24):
    z = np.linspace(obs.z_b + 20.0, obs.z_b + 60.0, n_z)
    x = np.linspace(-8.0, 8.0, n_x)
    xi = np.arange(-300.0, 20.0 + 1 / 128, 1.0 / 64.0)
    u_b = airy_envelope(beam, obs.z_b, xi) * obstacles.soft_transmittance(obs, xi)
    closed = obstacles.soft_diffracted_envelope(beam, obs, z[:, None], x[None, :])
    quad = np.empty((len(z), len(x)), dtype=complex)
    for i, zv in enumerate(z):
        dz = zv - obs.z_b
        kern = np.exp(-1j * K0 * (x[:, None] - xi[None, :]) ** 2 / (2.0 * dz))
        quad[i] = np.sqrt(1j / dz) * np.trapezoid(u_b[None, :] * kern, xi, axis=1)
    return float(np.linalg.norm(closed - quad) / np.linalg.norm(quad))


def _cmd_pulse(cfg, outdir, preview):
    if cfg.pulse is None:
        raise ConfigError("pulse command needs a pulse section")
    if cfg.beam_kind != "airy":
        raise ConfigError("pulse command requires an airy beam")
    inten = polychrome.polychromatic_intensity(
        cfg.beam, cfg.pulse, cfg.z[:, None], cfg.x[None, :], n_nodes=cfg.pulse_nodes
    )
    fg = FieldGrid(z=cfg.z, x=cfg.x, field=np.sqrt(inten).astype(complex))
    write_grid_csv(fg, os.path.join(outdir, "pulse.csv"))
    if preview:
        write_pgm_preview(fg, os.path.join(outdir, "pulse.pgm"))
    _write_meta(outdir, "pulse.meta.json", cfg, "pulse",
                {"note": "field columns hold sqrt(intensity); field phase is not defined"})


def _cmd_validate(cfg, outdir):
    """Fast invariant suite; returns (passed, failed, details)."""
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
            checks.append((name, ok, ""))
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            checks.append((name, False, f"{type(exc).__name__}: {exc}"))

    if cfg.beam_kind == "airy" and cfg.beam.alpha_a > 0:
        from .aperture import airy_energy_modulated_closed

        def norm_ok():
            e = airy_energy_modulated_closed(cfg.beam)
            ap = make_airy_aperture(
                cfg.beam, -8.0 / cfg.beam.alpha_a, min(30.0, 8.0 / cfg.beam.alpha_a), cfg.dx
            )
            return abs(aperture_energy(ap) - e) < 2e-3 * max(e, 1.0)

        check("aperture energy closed-vs-quadrature", norm_ok)

        def caustic_ok():
            prof = caustics.airy_phase_profile(xi_min=-1e4)
            curve = caustics.caustic_paraxial(
                prof, cfg.beam.gamma_a, cfg.beam.nu_a, np.linspace(10.0, 100.0, 7)
            )
            pred = caustics.airy_caustic_x(cfg.beam, curve.z)
            return np.max(np.abs(curve.x - pred)) < 1e-8 and np.max(curve.residual) < 1e-8

        check("caustic system residuals", caustic_ok)

        def ratio_ok():
            rep = caustics.range_report(cfg.beam, n=cfg.range_n)
            lhs = rep.z_corner / rep.z_fraunhofer_apodized
            rhs = (2.0 * np.sqrt(2.0) / cfg.range_n**2) * (
                cfg.beam.alpha_a / cfg.beam.gamma_a
            ) ** 1.5
            return abs(lhs - rhs) < 1e-12 * max(abs(rhs), 1.0)

        check("corner/Fraunhofer ratio identity", ratio_ok)

    def linearity_ok():
        rng = np.random.default_rng(20240817)
        x1, x2 = (cfg.aperture_window or (-10.0, 10.0))
        spec = GaussianBeamSpec.normalized(2.0)
        ap_a = make_gaussian_aperture(spec, x1, x2, cfg.dx)
        noise = rng.normal(size=ap_a.n) + 1j * rng.normal(size=ap_a.n)
        ap_b = ap_a.with_samples(noise * np.exp(-((ap_a.x) ** 2) / 25.0))
        zq = np.array([17.0])
        xq = np.linspace(-4, 4, 7)
        fa = propagate_fresnel(ap_a, zq, xq).field
        fb = propagate_fresnel(ap_b, zq, xq).field
        fab = propagate_fresnel(
            ap_a.with_samples(2.0 * ap_a.samples + 0.5j * ap_b.samples), zq, xq
        ).field
        return np.allclose(fab, 2.0 * fa + 0.5j * fb, rtol=1e-12, atol=1e-14)

    check("propagator linearity", linearity_ok)

    def roundtrip_ok():
        fg = FieldGrid(
            z=np.array([1.0, 2.0]), x=np.array([0.0, 0.5]),
            field=np.array([[1 + 2j, 3 - 4j], [0.5j, -1.25]], dtype=complex),
        )
        p = os.path.join(outdir, "_roundtrip.csv")
        write_grid_csv(fg, p)
        back = read_grid_csv(p)
        os.remove(p)
        return np.allclose(back.field, fg.field, rtol=1e-12, atol=1e-15)

    check("csv round trip", roundtrip_ok)

    passed = sum(1 for _, ok, _ in checks if ok)
    failed = len(checks) - passed
    for name, ok, msg in checks:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}{(': ' + msg) if msg else ''}")
    print(f"validate: {passed} passed, {failed} failed")
    _write_meta(outdir, "validate.meta.json", cfg, "validate",
                {"passed": passed, "failed": failed})
    return failed


COMMANDS = ("field", "caustic", "pathloss", "knife", "softheal", "pulse", "validate")


def run_scenario(cfg: ScenarioConfig, command, outdir, threads=1, preview=False,
                 oracle=False):
    """Execute one command for a validated scenario; returns process exit code."""
    os.makedirs(outdir, exist_ok=True)
    threads = _resolve_threads(threads)
    if command == "field":
        _cmd_field(cfg, outdir, threads, preview, oracle)
    elif command == "caustic":
        _cmd_caustic(cfg, outdir)
    elif command == "pathloss":
        _cmd_pathloss(cfg, outdir, threads)
    elif command == "knife":
        _cmd_knife(cfg, outdir, threads, preview)
    elif command == "softheal":
        _cmd_softheal(cfg, outdir, preview, oracle)
    elif command == "pulse":
        _cmd_pulse(cfg, outdir, preview)
    elif command == "validate":
        failed = _cmd_validate(cfg, outdir)
        return EXIT_NUMERIC if failed else EXIT_OK
    else:
        raise ConfigError(f"unknown command {command!r}")
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="airybeams",
        description="Airy/Gaussian near-field beam scenarios from a JSON config",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="scenario config path (JSON)")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--threads", type=int, default=0, help="0 = auto")
    parser.add_argument("--preview", action="store_true", help="emit log-scale PGM previews")
    parser.add_argument(
        "--oracle", action="store_true",
        help="run quadrature cross-checks alongside closed forms",
    )
    args = parser.parse_args(argv)

    try:
        cfg = parse_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return run_scenario(
            cfg, args.command, args.out, threads=args.threads,
            preview=args.preview, oracle=args.oracle,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BeamSimError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
