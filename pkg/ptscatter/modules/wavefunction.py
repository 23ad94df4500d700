import os

from ptscatter import LOGGER, application
from ptscatter.modules.helper_funcs.handlers import RunCommand
from ptscatter.modules.helper_funcs.output import resonance_fields, summary, write_csv, write_json
from ptscatter.modules.helper_funcs.run_config import load_run_config, reference_energy, resolve_gammas
from ptscatter.physics.potential import build_dimer, gamma_to_big_gamma
from ptscatter.physics.spectrum import resonance_pair
from ptscatter.physics.wavefield import (
    classify_symmetry,
    continuity_residual,
    sample_wavefunction,
    solve_amplitudes,
    symmetry_score,
)

WAVEFUNCTION_HEADER = ["x_nm", "re_psi", "im_psi", "region_index"]


def wavefunction(config_path, gammas, out_dir):
    config = load_run_config(config_path, gammas, out_dir)
    energy_ref = reference_energy(config)
    entries = []
    for index, gamma in enumerate(resolve_gammas(config, energy_ref)):
        potential = build_dimer(config.params.with_gamma(gamma), config.hbar2_over_2m)
        lower, upper = resonance_pair(
            config.params, gamma, config.window, config.n_points, config.prominence, config.hbar2_over_2m,
        )
        for tag, resonance in (("lower", lower), ("upper", upper)):
            if resonance is None:
                continue
            amps = solve_amplitudes(potential, resonance.position)
            wf = sample_wavefunction(amps, config.wave_points, config.padding)
            score = symmetry_score(wf)
            name = f"wavefunction_{index:03d}_{tag}.csv"
            write_csv(
                os.path.join(config.out_dir, name),
                WAVEFUNCTION_HEADER,
                ((x, psi.real, psi.imag, int(region)) for x, psi, region in zip(wf.x, wf.psi, wf.region)),
            )
            label = classify_symmetry(score)
            LOGGER.info("gamma = %.6g eV, %s resonance at %.6g eV: %s", gamma, tag, resonance.position, label)
            entries.append(
                {
                    "index": index,
                    "gamma": gamma,
                    "big_gamma": gamma_to_big_gamma(abs(gamma), energy_ref, config.v_prime, config.hbar2_over_2m),
                    "resonance": tag,
                    "file": name,
                    **resonance_fields(resonance),
                    "symmetry": label,
                    "symmetry_score": score,
                    "max_amplitude": wf.max_amplitude,
                    "continuity_residual": continuity_residual(amps),
                },
            )
    write_json(
        os.path.join(config.out_dir, "wavefunction_summary.json"),
        summary("wavefunction", config.to_dict(), energy_ref=energy_ref, wavefunctions=entries),
    )


__mod_name__ = "Wavefunction"

__help__ = """
Wavefunctions at every transmission maximum, labelled by parity:
 • `ptscatter wavefunction --config run.json`
"""

WAVEFUNCTION_HANDLER = RunCommand("wavefunction", wavefunction, help="Wavefunctions at the resonances per gamma.")
application.add_command(WAVEFUNCTION_HANDLER)
