import os

import click
import numpy as np

from ptscatter import application
from ptscatter.error import ConfigError, InvalidParameterError, NoResonanceError
from ptscatter.modules.helper_funcs.handlers import RunCommand
from ptscatter.modules.helper_funcs.output import summary, write_csv, write_json
from ptscatter.modules.helper_funcs.run_config import load_run_config, reference_energy, resolve_gammas
from ptscatter.physics.phases import doublet_window, fraction_near_pi, phase_histogram, trace_argand
from ptscatter.physics.potential import gamma_to_big_gamma
from ptscatter.physics.spectrum import resonance_pair

ARGAND_HEADER = ["energy", "branch", "re_lambda", "im_lambda", "theta_re", "theta_im"]
HISTOGRAM_HEADER = ["bin_left", "bin_right", "count_branch1", "count_branch2"]


def _doublet_fraction(config, gamma, trace):
    """fraction_near_pi restricted to the resonances, None without samples there."""
    try:
        pair = resonance_pair(
            config.params, gamma, config.window, config.n_points, config.prominence, config.hbar2_over_2m,
        )
        return fraction_near_pi(trace, energies=doublet_window(*pair))
    except (NoResonanceError, InvalidParameterError):
        return None


def _argand_rows(trace):
    theta_re, theta_im = trace.theta_re, trace.theta_im
    for i, energy in enumerate(trace.energies):
        for branch, label in enumerate(trace.labels):
            lam = trace.eigenvalues[i, branch]
            yield energy, label, lam.real, lam.imag, theta_re[i, branch], theta_im[i, branch]


def phases(config_path, gammas, out_dir, n_bins):
    config = load_run_config(config_path, gammas, out_dir)
    bins = config.n_bins if n_bins is None else n_bins
    if bins < 2:
        raise ConfigError(f"n_bins must be at least 2, got {bins}")
    energy_ref = reference_energy(config)
    entries = []
    for index, gamma in enumerate(resolve_gammas(config, energy_ref)):
        trace = trace_argand(config.params, gamma, config.window, config.n_points, config.hbar2_over_2m)
        histogram = phase_histogram(trace, bins)
        argand_name = f"argand_{index:03d}.csv"
        histogram_name = f"histogram_{index:03d}.csv"
        write_csv(os.path.join(config.out_dir, argand_name), ARGAND_HEADER, _argand_rows(trace))
        write_csv(
            os.path.join(config.out_dir, histogram_name),
            HISTOGRAM_HEADER,
            (
                (left, right, int(first), int(second))
                for left, right, (first, second) in zip(histogram.edges[:-1], histogram.edges[1:], histogram.counts)
            ),
        )
        entries.append(
            {
                "index": index,
                "gamma": gamma,
                "big_gamma": gamma_to_big_gamma(abs(gamma), energy_ref, config.v_prime, config.hbar2_over_2m),
                "argand_file": argand_name,
                "histogram_file": histogram_name,
                "max_radius_deviation": float(np.max(np.abs(trace.radius - 1))),
                "fraction_near_pi": fraction_near_pi(trace),
                "fraction_near_pi_doublet": _doublet_fraction(config, gamma, trace),
                "branch_jumps": [float(trace.energies[i]) for i in trace.jumps],
                "samples": int(histogram.total),
            },
        )
    write_json(
        os.path.join(config.out_dir, "phases_summary.json"),
        summary("phases", config.to_dict(), energy_ref=energy_ref, n_bins=bins, phases=entries),
    )


__mod_name__ = "Phases"

__help__ = """
S-matrix eigenphases on the Argand plane and their histograms:
 • `ptscatter phases --config run.json --bins 32`
"""

PHASES_HANDLER = RunCommand(
    "phases",
    phases,
    help="Eigenvalue trajectories and eigenphase histograms per gamma.",
    params=[click.Option(["--bins", "n_bins"], type=int, default=None, help="Histogram bins over [-pi, pi].")],
)
application.add_command(PHASES_HANDLER)
