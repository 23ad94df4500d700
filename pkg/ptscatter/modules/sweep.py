import os

import numpy as np

from ptscatter import LOGGER, application
from ptscatter.modules.helper_funcs.handlers import RunCommand
from ptscatter.modules.helper_funcs.output import resonance_fields, summary, write_csv, write_json
from ptscatter.modules.helper_funcs.run_config import load_run_config, reference_energy, resolve_gammas
from ptscatter.physics.potential import build_dimer, gamma_to_big_gamma
from ptscatter.physics.scatter_core import classify_unitarity
from ptscatter.physics.spectrum import find_peaks
from ptscatter.physics.spectrum import sweep as spectrum_sweep

SPECTRUM_HEADER = ["energy_eV", "T", "R", "T_prime", "R_prime", "defect_left", "defect_right"]


def _balance(defect: np.ndarray) -> str:
    """Overall label of a sweep: conserving, absorbing, emitting or mixed."""
    labels = set(np.atleast_1d(classify_unitarity(defect)).tolist())
    return labels.pop() if len(labels) == 1 else "mixed"


def sweep(config_path, gammas, out_dir):
    config = load_run_config(config_path, gammas, out_dir)
    energy_ref = reference_energy(config)
    entries = []
    for index, gamma in enumerate(resolve_gammas(config, energy_ref)):
        potential = build_dimer(config.params.with_gamma(gamma), config.hbar2_over_2m)
        spectrum = spectrum_sweep(potential, *config.window, config.n_points)
        name = f"spectrum_{index:03d}.csv"
        write_csv(
            os.path.join(config.out_dir, name),
            SPECTRUM_HEADER,
            zip(
                spectrum.energies,
                spectrum.transmission,
                spectrum.reflection,
                spectrum.transmission_prime,
                spectrum.reflection_prime,
                spectrum.defect_left,
                spectrum.defect_right,
            ),
        )
        peaks = find_peaks(spectrum, config.prominence)
        LOGGER.info("gamma = %.6g eV: %d resonance(s)", gamma, len(peaks))
        entries.append(
            {
                "index": index,
                "gamma": gamma,
                "big_gamma": gamma_to_big_gamma(abs(gamma), energy_ref, config.v_prime, config.hbar2_over_2m),
                "file": name,
                "resonances": [resonance_fields(peak) for peak in peaks],
                "balance_left": _balance(spectrum.defect_left),
                "balance_right": _balance(spectrum.defect_right),
                "max_abs_defect": float(max(np.max(np.abs(spectrum.defect_left)), np.max(np.abs(spectrum.defect_right)))),
            },
        )
    write_json(
        os.path.join(config.out_dir, "sweep_summary.json"),
        summary("sweep", config.to_dict(), energy_ref=energy_ref, spectra=entries),
    )


__mod_name__ = "Sweep"

__help__ = """
Transmission spectra over the configured energy window, one CSV per gamma:
 • `ptscatter sweep --config run.json`
 • `ptscatter sweep --gamma 0 --gamma 0.01 --out spectra/`
"""

SWEEP_HANDLER = RunCommand("sweep", sweep, help="Transmission and reflection spectra per gamma.")
application.add_command(SWEEP_HANDLER)
