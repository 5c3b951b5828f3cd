"""
Disk Pattern Workbench
Command-line entry point.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent))

import numpy as np

from src.constants import COMMANDS, EXAMPLE_CHOICES, FAMILY_CHOICES, Command, ExitCode
from src.core.app_config import get_app_name, get_version
from src.core.conformal_geom import skinning_width
from src.core.coxeter import (
    check_realizable,
    classify_faces,
    completion,
    coxeter_from_document,
    is_acylindrical,
    limit_set_connected,
    normalization_diagnostics,
)
from src.core.environment import configure_logging, seed_from_environment
from src.core.extremal import (
    default_pair,
    duality_report,
    extremal_width,
    solve_width,
    verify_projection_bound,
)
from src.core.generators import (
    elliptic_connection_graph,
    example_a,
    example_b,
    flower,
    pentagon_face_subdivision,
    quad_with_hub,
    random_subdivision,
    random_triangulated_subdivision,
    right_angled_tetrahedron,
    right_angled_wheel,
)
from src.core.graph_core import parse_graph_document, serialize_plane_graph, trace_faces
from src.core.layout import layout_residuals, pattern_from_document, render_svg, thurston_layout
from src.core.metric_extension import run_metric_pipeline
from src.core.settings_manager import SettingsManager
from src.core.subdivision import is_acylindrical_subdivision, make_subdivision
from src.core.types import DiskPatternError, PreconditionError, VertexId
from src.models.coxeter_models import RealizabilityStatus
from src.models.extremal_models import FamilyKind, FamilySpec
from src.models.subdivision_models import SubdivisionGraph
from src.utils.reports import Report, input_digest, write_jsonl, write_report, write_text

logger = logging.getLogger("main")


@dataclass
class RunConfig:
    """One CLI invocation after argument parsing."""
    command: Command
    input: Optional[Path] = None
    output: Optional[Path] = None
    seed: Optional[int] = None
    family: str = "connecting"
    pair: Optional[Tuple[VertexId, VertexId]] = None
    oracle: bool = False
    trace: Optional[Path] = None
    svg: Optional[Path] = None
    labels: bool = False
    shade: bool = False
    pattern: Optional[Path] = None
    boundary_radius: float = 1.0
    which: str = "A"
    n: int = 1
    quiet: bool = False
    log_level: Optional[str] = None
    tol: Optional[float] = None
    max_cuts: Optional[int] = None

    def validate(self) -> None:
        """
        Raises:
            PreconditionError: a flag combination or value is invalid
        """
        info = COMMANDS[self.command]
        if info.needs_input and self.input is None:
            raise PreconditionError(f"'{self.command.value}' needs an input graph document")
        if self.family not in FAMILY_CHOICES:
            raise PreconditionError(f"Unknown family {self.family!r}")
        if self.which not in EXAMPLE_CHOICES:
            raise PreconditionError(f"Unknown example {self.which!r}")
        if self.n < 1:
            raise PreconditionError(f"--n must be at least 1, got {self.n}")
        if self.boundary_radius <= 0.0:
            raise PreconditionError(f"--boundary-radius must be positive, got {self.boundary_radius}")
        if self.tol is not None and self.tol <= 0.0:
            raise PreconditionError(f"--tol must be positive, got {self.tol}")
        if self.max_cuts is not None and self.max_cuts < 1:
            raise PreconditionError(f"--max-cuts must be at least 1, got {self.max_cuts}")


@dataclass
class Outcome:
    """What a command handler hands back to run()."""
    result: Any
    ok: bool = True
    extra: Optional[Dict[str, Any]] = None


# ============================================================================
# Input helpers
# ============================================================================

class Session:
    """Input bytes, their parsed document and the resolved seed for one run."""

    def __init__(self, config: RunConfig, seed: int):
        self.config = config
        self.seed = seed
        self.raw: Optional[bytes] = None
        if config.input is not None:
            self.raw = Path(config.input).read_bytes()

    def document(self):
        return parse_graph_document(self.raw.decode("utf-8"))

    def subdivision(self) -> SubdivisionGraph:
        doc = self.document()
        if doc.outer_face is None:
            raise PreconditionError("Input document has no 'outer_face'")
        return make_subdivision(doc.graph, doc.outer_face, doc.weights)

    def coxeter(self):
        return coxeter_from_document(self.document())

    def pair(self, sg: SubdivisionGraph) -> Tuple[VertexId, VertexId]:
        return self.config.pair if self.config.pair is not None else default_pair(sg)

    def family(self) -> FamilyKind:
        return FamilyKind(self.config.family)


def parse_pair(text: str) -> Tuple[VertexId, VertexId]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    return parts[0], parts[1]


# ============================================================================
# Command handlers
# ============================================================================

def cmd_faces(session: Session) -> Outcome:
    graph = session.document().graph
    faces = trace_faces(graph)
    return Outcome({
        "vertices": graph.num_vertices,
        "edges": graph.num_edges,
        "faces": [f.to_dict() for f in faces],
        "euler": graph.num_vertices - graph.num_edges + len(faces),
    })


def cmd_classify(session: Session) -> Outcome:
    cg = session.coxeter()
    classes = classify_faces(cg)
    return Outcome({
        "faces": [{"boundary": list(face.boundary), **cls.to_dict()} for face, cls in classes.items()],
        "completion": completion(cg).to_dict(),
        "normalization": [issue.to_dict() for issue in normalization_diagnostics(cg)],
    })


def cmd_check_realizable(session: Session) -> Outcome:
    report = check_realizable(session.coxeter())
    return Outcome(report, ok=report.status != RealizabilityStatus.NOT_REALIZABLE)


def cmd_check_acylindrical(session: Session) -> Outcome:
    doc = session.document()
    if doc.outer_face is not None:
        sg = make_subdivision(doc.graph, doc.outer_face, doc.weights)
        verdict = is_acylindrical_subdivision(sg)
        return Outcome(verdict, ok=verdict.ok, extra={"route": "subdivision"})
    verdict = is_acylindrical(coxeter_from_document(doc))
    return Outcome(verdict, ok=verdict.ok, extra={"route": "coxeter"})


def cmd_limit_set_connected(session: Session) -> Outcome:
    verdict = limit_set_connected(session.coxeter())
    return Outcome(verdict, ok=verdict.ok)


def cmd_ew(session: Session) -> Outcome:
    sg = session.subdivision()
    a, b = session.pair(sg)
    spec = FamilySpec(session.family(), a, b)
    result = solve_width(sg, spec, oracle=session.config.oracle)
    return Outcome(result, extra={"family": spec.to_dict(), "complexity": sg.complexity})


def cmd_duality(session: Session) -> Outcome:
    sg = session.subdivision()
    a, b = session.pair(sg)
    return Outcome(duality_report(sg, a, b, oracle=session.config.oracle))


def cmd_verify_projection(session: Session) -> Outcome:
    sg = session.subdivision()
    a, b = session.pair(sg)
    return Outcome(verify_projection_bound(sg, a, b))


def cmd_extend_metric(session: Session) -> Outcome:
    sg = session.subdivision()
    a, b = session.pair(sg)
    kind = session.family()
    width = extremal_width(sg, FamilySpec(kind, a, b))
    if not width.is_finite_positive:
        raise PreconditionError(f"{kind.value} family of ({a}, {b}) is degenerate: {width.status.value}")

    trace, certificate = run_metric_pipeline(sg, a, b, width.metric.values, kind)
    if session.config.trace is not None:
        write_jsonl((stage.to_dict() for stage in trace.stages), session.config.trace)
    return Outcome(certificate, ok=certificate.holds, extra={
        "pair": [a, b],
        "family": kind.value,
        "stages": len(trace.stages),
        "width": width.width,
    })


def _layout(session: Session, sg: SubdivisionGraph):
    radii = {v: session.config.boundary_radius for v in sg.boundary}
    return thurston_layout(sg, radii)


def cmd_layout(session: Session) -> Outcome:
    sg = session.subdivision()
    pattern = _layout(session, sg)
    diagnostics = layout_residuals(pattern)
    if session.config.svg is not None:
        write_text(render_svg(pattern, labels=session.config.labels, shade_interstices=session.config.shade),
                   session.config.svg)
    return Outcome({"pattern": pattern.to_dict(), "diagnostics": diagnostics.to_dict()})


def cmd_skinning_width(session: Session) -> Outcome:
    sg = session.subdivision()
    a, b = session.pair(sg)
    if session.config.pattern is not None:
        text = Path(session.config.pattern).read_text(encoding="utf-8")
        pattern = pattern_from_document(text, source=sg)
    else:
        pattern = _layout(session, sg)
    estimate = skinning_width(pattern, a, b)
    return Outcome(estimate, extra={"pair": [a, b], "normalization": pattern.normalization})


GENERATED: Dict[str, Callable[[Session], Any]] = {
    "A": lambda s: example_a(),
    "B": lambda s: example_b(s.config.n),
    "hub": lambda s: quad_with_hub(),
    "pentagon": lambda s: pentagon_face_subdivision(),
    "hexflower": lambda s: flower(6),
    "squareflower": lambda s: flower(4),
    "wheel": lambda s: right_angled_wheel(),
    "elliptic": lambda s: elliptic_connection_graph(),
    "tetrahedron": lambda s: right_angled_tetrahedron(),
    "random": lambda s: random_subdivision(np.random.default_rng(s.seed)),
    "random-triangulated": lambda s: random_triangulated_subdivision(np.random.default_rng(s.seed)),
}


def cmd_gen_example(session: Session) -> Outcome:
    built = GENERATED[session.config.which](session)
    if isinstance(built, SubdivisionGraph):
        doc = serialize_plane_graph(built.graph, built.weights, built.boundary)
    else:
        doc = serialize_plane_graph(built.graph, built.weights)
    return Outcome(doc)


HANDLERS: Dict[Command, Callable[[Session], Outcome]] = {
    Command.FACES: cmd_faces,
    Command.CLASSIFY: cmd_classify,
    Command.CHECK_REALIZABLE: cmd_check_realizable,
    Command.CHECK_ACYLINDRICAL: cmd_check_acylindrical,
    Command.LIMIT_SET_CONNECTED: cmd_limit_set_connected,
    Command.EW: cmd_ew,
    Command.DUALITY: cmd_duality,
    Command.VERIFY_PROJECTION: cmd_verify_projection,
    Command.EXTEND_METRIC: cmd_extend_metric,
    Command.LAYOUT: cmd_layout,
    Command.SKINNING_WIDTH: cmd_skinning_width,
    Command.GEN_EXAMPLE: cmd_gen_example,
}


# ============================================================================
# Entry points
# ============================================================================

def resolve_seed(flag: Optional[int]) -> int:
    """PD_SEED beats --seed, which beats the settings file."""
    env = seed_from_environment()
    if env is not None:
        return env
    if flag is not None:
        return flag
    return SettingsManager().settings.seed


def run(config: RunConfig) -> int:
    """
    Execute one command and emit its report.

    Returns:
        0 on success, 1 when a check command's verdict is false, 2 on any
        input or precondition error
    """
    try:
        config.validate()
        SettingsManager().override(admissibility_tol=config.tol, max_cuts=config.max_cuts)
        seed = resolve_seed(config.seed)
        session = Session(config, seed)
        outcome = HANDLERS[config.command](session)
    except (DiskPatternError, OSError, json.JSONDecodeError, UnicodeDecodeError) as e:
        logger.error(f"{config.command.value}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return int(ExitCode.INPUT_ERROR)

    if config.command == Command.GEN_EXAMPLE:
        write_text(json.dumps(outcome.result, indent=2), config.output)
        return int(ExitCode.OK)

    report = Report(
        command=config.command.value,
        seed=seed,
        input_sha256=input_digest(session.raw),
        ok=outcome.ok,
        result=outcome.result,
        extra=outcome.extra or {},
    )
    try:
        write_report(report, config.output)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return int(ExitCode.INPUT_ERROR)

    if COMMANDS[config.command].is_check and not outcome.ok:
        return int(ExitCode.VERDICT_FALSE)
    return int(ExitCode.OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="main.py", description=get_app_name())
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", type=Path, help="Write the report here instead of stdout")
    common.add_argument("--seed", type=int, help="Random seed (PD_SEED overrides)")
    common.add_argument("--quiet", action="store_true", help="Only the report is written")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument("--tol", type=float, help="Admissibility tolerance")
    common.add_argument("--max-cuts", type=int, help="Cutting-plane iteration cap")

    sub = parser.add_subparsers(dest="command", required=True)
    for command, info in COMMANDS.items():
        p = sub.add_parser(command.value, help=info.help, parents=[common])
        if info.needs_input:
            p.add_argument("input", type=Path, help="Graph document (JSON)")
        if command in (Command.EW, Command.DUALITY, Command.VERIFY_PROJECTION,
                       Command.EXTEND_METRIC, Command.SKINNING_WIDTH):
            p.add_argument("--pair", type=parse_pair, help="Boundary pair 'a,b'")
        if command in (Command.EW, Command.EXTEND_METRIC):
            p.add_argument("--family", choices=FAMILY_CHOICES, default="connecting")
        if command in (Command.EW, Command.DUALITY):
            p.add_argument("--oracle", action="store_true", help="Cross-check with the brute-force solver")
        if command == Command.EXTEND_METRIC:
            p.add_argument("--trace", type=Path, help="Write one JSON line per stage")
        if command in (Command.LAYOUT, Command.SKINNING_WIDTH):
            p.add_argument("--boundary-radius", type=float, default=1.0)
        if command == Command.LAYOUT:
            p.add_argument("--svg", type=Path, help="Write an SVG figure")
            p.add_argument("--labels", action="store_true")
            p.add_argument("--shade", action="store_true", help="Fill interstices")
        if command == Command.SKINNING_WIDTH:
            p.add_argument("--pattern", type=Path, help="Disk pattern document; laid out when omitted")
        if command == Command.GEN_EXAMPLE:
            p.add_argument("--which", choices=EXAMPLE_CHOICES, default="A")
            p.add_argument("--n", type=int, default=1)
    return parser


def config_from_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    values = vars(args)
    return RunConfig(
        command=Command(values["command"]),
        input=values.get("input"),
        output=values.get("output"),
        seed=values.get("seed"),
        family=values.get("family") or "connecting",
        pair=values.get("pair"),
        oracle=bool(values.get("oracle")),
        trace=values.get("trace"),
        svg=values.get("svg"),
        labels=bool(values.get("labels")),
        shade=bool(values.get("shade")),
        pattern=values.get("pattern"),
        boundary_radius=values["boundary_radius"] if values.get("boundary_radius") is not None else 1.0,
        which=values.get("which") or "A",
        n=values["n"] if values.get("n") is not None else 1,
        quiet=bool(values.get("quiet")),
        log_level=values.get("log_level"),
        tol=values.get("tol"),
        max_cuts=values.get("max_cuts"),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Application entry point."""
    config = config_from_args(argv)
    configure_logging(config.log_level, quiet=config.quiet)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
