import re

import click

from ptscatter.error import PtScatterError

COMMAND_NAME = re.compile(r"^[\da-z_]{1,32}$")


class CustomGroup(click.Group):
    """Command group that turns library errors into exit codes."""

    def add_command(self, cmd: click.Command, name=None) -> None:
        name = (name or cmd.name or "").lower()
        if not COMMAND_NAME.match(name):
            raise ValueError(f"Command `{name}` is not a valid command name")
        super().add_command(cmd, name)

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except PtScatterError as err:
            # imported late, the error handler is itself a loadable module
            from ptscatter.modules.error_handler import error_callback

            error_callback(err)
            raise click.exceptions.Exit(err.exit_code)


class RunCommand(click.Command):
    """A command taking the shared run options: --config, --gamma, --out."""

    def __init__(self, name, callback, **kwargs):
        params = [
            click.Option(
                ["--config", "config_path"],
                type=click.Path(dir_okay=False),
                default=None,
                help="JSON run config; defaults reproduce the reference dimer.",
            ),
            click.Option(
                ["--gamma", "gammas"],
                type=float,
                multiple=True,
                help="Gain/loss strength in eV; repeat for several. Replaces the config lists.",
            ),
            click.Option(["--out", "out_dir"], type=click.Path(file_okay=False), default=None, help="Output directory."),
        ]
        params.extend(kwargs.pop("params", []))
        super().__init__(name, callback=callback, params=params, **kwargs)
