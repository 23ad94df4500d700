import os

from ptscatter import LOGGER, WORKERS, application
from ptscatter.modules.helper_funcs.handlers import RunCommand
from ptscatter.modules.helper_funcs.output import fit_fields, summary, write_csv, write_json
from ptscatter.modules.helper_funcs.run_config import load_run_config, reference_energy, resolve_gammas
from ptscatter.physics.eptrace import ep_fit_grid, fit_power_law, gamma_grid, locate_ep, trace

TRACE_HEADER = [
    "gamma",
    "big_gamma",
    "e_lower",
    "e_upper",
    "height_lower",
    "height_upper",
    "fwhm_lower",
    "fwhm_upper",
    "q_lower",
    "q_upper",
    "splitting",
]


def _trace_rows(ep_trace):
    for record in ep_trace:
        lower, upper = record.lower, record.upper
        yield (
            record.gamma,
            record.big_gamma,
            lower.position,
            upper and upper.position,
            lower.height,
            upper and upper.height,
            lower.fwhm,
            upper and upper.fwhm,
            lower.q,
            upper and upper.q,
            record.splitting,
        )


def ep(config_path, gammas, out_dir):
    config = load_run_config(config_path, gammas, out_dir)
    params = config.params
    energy_ref = reference_energy(config)
    location = locate_ep(
        params,
        config.gamma_lo,
        config.gamma_hi,
        config.tol_gamma,
        config.window,
        config.n_points,
        config.prominence,
        energy_ref,
        config.hbar2_over_2m,
    )
    grid = gamma_grid(
        [*ep_fit_grid(location.gamma_ep, config.fit_points, config.fit_span), *resolve_gammas(config, energy_ref), config.gamma_hi],
    )
    ep_trace = trace(
        params,
        grid,
        config.window,
        config.n_points,
        config.prominence,
        energy_ref,
        config.hbar2_over_2m,
        WORKERS,
    )
    fit = fit_power_law(ep_trace, location.gamma_ep)
    fit_distance = fit_power_law(ep_trace, location.gamma_ep, abscissa="distance", big_gamma_ep=location.big_gamma_ep)
    LOGGER.info("EP exponent %.4f (Gamma) / %.4f (distance to EP)", fit.B, fit_distance.B)

    write_csv(os.path.join(config.out_dir, "ep_trace.csv"), TRACE_HEADER, _trace_rows(ep_trace))
    write_json(
        os.path.join(config.out_dir, "ep_report.json"),
        summary(
            "ep",
            config.to_dict(),
            energy_ref=energy_ref,
            gamma_ep=location.gamma_ep,
            big_gamma_ep=location.big_gamma_ep,
            bracket=list(location.bracket),
            iterations=location.iterations,
            fit=fit_fields(fit),
            fit_distance=fit_fields(fit_distance),
            trace_file="ep_trace.csv",
        ),
    )


__mod_name__ = "EP"

__help__ = """
Exceptional point of the doublet and the splitting power law:
 • `ptscatter ep --config run.json`
Bisection runs between `gamma_lo` (two maxima) and `gamma_hi` (one maximum).
"""

EP_HANDLER = RunCommand("ep", ep, help="Locate the exceptional point and fit the splitting.")
application.add_command(EP_HANDLER)
