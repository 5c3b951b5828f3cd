"""
CLI Constants
Command names, exit codes and defaults of the command-line front door.
"""

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Dict


class ExitCode(IntEnum):
    """Process exit statuses."""
    OK = 0
    VERDICT_FALSE = 1
    INPUT_ERROR = 2


class Command(str, Enum):
    """Available subcommands."""
    FACES = "faces"
    CLASSIFY = "classify"
    CHECK_REALIZABLE = "check-realizable"
    CHECK_ACYLINDRICAL = "check-acylindrical"
    LIMIT_SET_CONNECTED = "limit-set-connected"
    EW = "ew"
    DUALITY = "duality"
    VERIFY_PROJECTION = "verify-projection"
    EXTEND_METRIC = "extend-metric"
    LAYOUT = "layout"
    SKINNING_WIDTH = "skinning-width"
    GEN_EXAMPLE = "gen-example"


@dataclass(frozen=True)
class CommandInfo:
    """Help text and input requirement of a subcommand."""
    help: str
    needs_input: bool = True
    is_check: bool = False


COMMANDS: Dict[Command, CommandInfo] = {
    Command.FACES: CommandInfo("Trace the faces of a plane graph"),
    Command.CLASSIFY: CommandInfo("Classify faces of a Coxeter graph"),
    Command.CHECK_REALIZABLE: CommandInfo("Decide whether a Coxeter graph is realizable", is_check=True),
    Command.CHECK_ACYLINDRICAL: CommandInfo("Acylindricity predicate", is_check=True),
    Command.LIMIT_SET_CONNECTED: CommandInfo("Connected limit set predicate", is_check=True),
    Command.EW: CommandInfo("Vertex extremal width of a path family"),
    Command.DUALITY: CommandInfo("Duality / quasi-duality report"),
    Command.VERIFY_PROJECTION: CommandInfo("Projection sandwich and metric-extension certificate"),
    Command.EXTEND_METRIC: CommandInfo("Run the staged metric extension"),
    Command.LAYOUT: CommandInfo("Radius iteration layout of a triangulated subdivision"),
    Command.SKINNING_WIDTH: CommandInfo("Circular width of the skinning interstice"),
    Command.GEN_EXAMPLE: CommandInfo("Emit a generated example graph", needs_input=False),
}

FAMILY_CHOICES = ("connecting", "separating")
EXAMPLE_CHOICES = (
    "A", "B", "hub", "pentagon", "hexflower", "squareflower",
    "wheel", "elliptic", "tetrahedron", "random", "random-triangulated",
)
SEED_ENV_VAR = "PD_SEED"
