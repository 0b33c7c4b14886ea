"""
Command-line interface for weylfree
Every verification is a subcommand writing JSON (default), CSV or YAML.
Exit codes: 0 all checks passed, 1 a verification failed, 2 usage error.
"""

import argparse
import logging
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

import yaml

from src.analysis.branching import (
    FusionLabel,
    central_charge,
    classification_tables,
    conformal_embedding_checks,
    decomposition_report,
    finite_e6_branching,
    fusion_product,
)
from src.config import Settings, load_settings
from src.lie.charact import (
    dominant_character,
    fundamental_to_epsilon,
    tensor_decompose,
    weight_multiplicities,
)
from src.lie.chevalley import EmbeddingName, build_embedding, embedding_summary
from src.lie.rootlie import RootSystem, Series, SeriesLabel, Weight, build_root_system
from src.monitoring.monitoring import configure_monitoring, get_monitoring
from src.utils.errors import (
    InternalInconsistencyError,
    UsageError,
    VerificationFailedError,
    WeylfreeError,
)
from src.vertex import fock
from src.vertex.affine_univ import (
    AffineLevel,
    ExplicitVector,
    build_explicit_vector,
    is_singular,
    resolve_signs,
)
from src.workflows.report import dump_csv, dump_json, plain

logger = logging.getLogger('cli')

FORMATS = ("json", "csv", "yaml")
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

# subcommand -> allowed actions (None when the subcommand takes no action word)
ACTIONS: Dict[str, Optional[Sequence[str]]] = {
    "roots": None,
    "tensor": None,
    "char": None,
    "fock": ("basis", "character", "scan"),
    "singular": ("verify",),
    "sugawara": ("check",),
    "phi": ("image",),
    "branch": ("report",),
    "fusion": None,
    "cc": None,
    "embed": None,
    "classify": None,
    "invariants": None,
}

DEFAULT_VECTOR_RANK = {ExplicitVector.A_TYPE: 3, ExplicitVector.D_TYPE: 4, ExplicitVector.E6: 0}


@dataclass
class Invocation:
    """A validated command line"""
    command: str
    action: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)
    output_format: str = "json"
    output: Optional[str] = None
    config: Optional[str] = None
    metrics: bool = False
    log_level: Optional[str] = None
    seed: Optional[int] = None

    def option(self, name: str, default: Any = None) -> Any:
        value = self.options.get(name)
        return default if value is None else value


@dataclass
class Payload:
    """Handler result: the document, optional CSV rows and the pass flag"""
    data: Dict[str, Any]
    rows: Optional[List[Dict[str, Any]]] = None
    ok: bool = True


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# Argument parsing

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: '{text}'")


def parse_charges(text: str) -> List[int]:
    """'-2..2', '3' or '-1,0,2' as a sorted list of integers"""
    text = text.strip()
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            low, high = int(low), int(high)
            if low > high:
                raise UsageError(f"empty charge range '{text}'")
            return list(range(low, high + 1))
        return sorted({int(part) for part in text.split(",")})
    except ValueError:
        raise UsageError(f"cannot parse charges '{text}'")


_FUNDAMENTAL_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)\*?)?w(\d+)")


def parse_weight(rs: RootSystem, text: str) -> Weight:
    """Weight from 'w1+2*w3' (fundamental weights) or '1/2,1/2,...' (epsilon coordinates)

    Raises:
        UsageError: If the text matches neither syntax or has the wrong length
    """
    compact = text.replace(" ", "")
    if compact in ("", "0"):
        return Weight.zero(rs.ambient_dim)
    if "w" in compact:
        coeffs = [Fraction(0)] * rs.rank
        position = 0
        for match in _FUNDAMENTAL_TERM.finditer(compact):
            if match.start() != position:
                break
            position = match.end()
            node = int(match.group(3))
            if not 1 <= node <= rs.rank:
                raise UsageError(f"w{node} is not a fundamental weight of {rs.label}")
            value = Fraction(match.group(2) or 1)
            coeffs[node - 1] += -value if match.group(1) == "-" else value
        if position != len(compact):
            raise UsageError(f"cannot parse weight '{text}'")
        return fundamental_to_epsilon(rs, coeffs)
    try:
        coords = tuple(Fraction(part) for part in compact.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse weight '{text}'")
    if len(coords) != rs.ambient_dim:
        raise UsageError(f"{rs.label} weights have {rs.ambient_dim} coordinates, got {len(coords)}")
    return Weight(coords)


def _common_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from overwriting flags given before it
    common = _Parser(add_help=False)
    common.add_argument('--config', default=argparse.SUPPRESS, help='YAML settings file')
    common.add_argument('--metrics', action='store_true', default=argparse.SUPPRESS,
                        help='Save run metrics into the metrics directory')
    common.add_argument('--log-level', default=argparse.SUPPRESS,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='Log level')
    common.add_argument('--output', '-o', default=argparse.SUPPRESS, help='Output file (default stdout)')
    common.add_argument('--seed', type=int, default=argparse.SUPPRESS, help='Seed for sampled checks')
    common.add_argument('--format', choices=FORMATS, default=argparse.SUPPRESS, help='Output format')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog='weylfree', parents=[common],
                     description='Exact checks for free-field realizations of negative-level affine algebras')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        if ACTIONS[name]:
            p.add_argument('action', choices=ACTIONS[name])
        return p

    def series(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument('--series', required=required, choices=[s.value for s in Series])
        p.add_argument('--rank', type=int, required=required)

    p = add('roots', 'Root system data')
    series(p)
    p = add('tensor', 'Tensor product decomposition')
    series(p)
    p.add_argument('--lam', required=True, help="Weight, e.g. 'w1+2*w3' or '1,0,0'")
    p.add_argument('--mu', required=True)
    p = add('char', 'Weight multiplicities')
    series(p)
    p.add_argument('--lam', required=True)
    p.add_argument('--dominant', action='store_true', help='Dominant weights only')
    p = add('fock', 'Charge sectors of the Weyl vertex algebra')
    p.add_argument('--rank', type=int, required=True, help='Number of Weyl pairs')
    p.add_argument('--charge', type=int, default=0)
    p.add_argument('--degree', type=_fraction, help='Conformal degree (cutoff for character and scan)')
    p = add('singular', 'Singularity of the explicit vectors')
    p.add_argument('--vector', required=True, choices=[v.value for v in ExplicitVector] + ['A', 'D'])
    p.add_argument('--rank', type=int)
    p.add_argument('--level', type=_fraction)
    p.add_argument('--cutoff', type=int)
    p = add('sugawara', 'Sugawara split of the conformal vector')
    p.add_argument('--rank', type=int, required=True)
    p.add_argument('--samples', type=int, default=50, help='Sampled charge additivity checks')
    p = add('phi', 'Image of the type A singular vector in the Weyl vertex algebra')
    p.add_argument('--rank', type=int, required=True)
    p = add('branch', 'Decomposition report')
    p.add_argument('--family', required=True, choices=['A', 'E6', 'A_in_Weyl', 'E6_over_D5'])
    p.add_argument('--rank', type=int, default=3)
    p.add_argument('--charge', default='-2..2', help="Charges, e.g. '-2..2' or '0,1,3'")
    p.add_argument('--degree', type=int, default=2)
    p = add('fusion', 'Fusion product of charge labels')
    p.add_argument('--a', type=int, required=True)
    p.add_argument('--b', type=int, required=True)
    p.add_argument('--rank', type=int, help='Also list the type A modules of this rank')
    p = add('cc', 'Central charge; without --series, the conformal embedding checks')
    series(p, required=False)
    p.add_argument('--level', type=_fraction)
    p = add('embed', 'Subalgebra embedding verification')
    p.add_argument('--name', required=True, choices=[n.value for n in EmbeddingName])
    p.add_argument('--rank', type=int, default=3, help='l for C_in_A')
    p = add('classify', 'Classification tables')
    p.add_argument('--rank', type=int, default=3)
    p.add_argument('--s-max', type=int, default=2)
    p = add('invariants', 'gl-invariant dimensions of the Weyl vertex algebra')
    p.add_argument('--rank', type=int, required=True)
    p.add_argument('--degree', type=int, default=3)
    return parser


_GLOBALS = ('config', 'metrics', 'log_level', 'output', 'seed', 'format')

# a value such as -2..2 or -1/2 that argparse would otherwise take for a flag
_NEGATIVE_VALUE = re.compile(r"-\d")


def attach_negative_values(argv: Sequence[str]) -> List[str]:
    """Rewrite '--opt -2..2' as '--opt=-2..2' for every long option"""
    tokens = list(argv)
    joined: List[str] = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if (token.startswith("--") and "=" not in token and i + 1 < len(tokens)
                and _NEGATIVE_VALUE.match(tokens[i + 1])):
            joined.append(f"{token}={tokens[i + 1]}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def parse_invocation(argv: Sequence[str]) -> Invocation:
    """Parse and validate a command line

    Raises:
        UsageError: With the usage message on any invalid input
    """
    namespace = vars(build_parser().parse_args(attach_negative_values(argv)))
    command = namespace.pop('command', None)
    if command is None:
        raise UsageError("a subcommand is required")
    action = namespace.pop('action', None)
    inv = Invocation(
        command=command, action=action,
        output_format=namespace.pop('format', 'json'),
        output=namespace.pop('output', None),
        config=namespace.pop('config', None),
        metrics=namespace.pop('metrics', False),
        log_level=namespace.pop('log_level', None),
        seed=namespace.pop('seed', None),
        options={k: v for k, v in namespace.items() if k not in _GLOBALS},
    )
    _validate(inv)
    return inv


def _validate(inv: Invocation) -> None:
    rank = inv.options.get('rank')
    if rank is not None and rank < 1:
        raise UsageError(f"--rank must be positive, got {rank}")
    series = inv.options.get('series')
    if series is not None or (inv.command == 'cc' and rank is not None):
        if series is None or rank is None:
            raise UsageError("--series and --rank go together")
        try:
            SeriesLabel(series, rank)
        except WeylfreeError as e:
            raise UsageError(str(e))
    if inv.command == 'cc' and series is not None and inv.options.get('level') is None:
        raise UsageError("cc needs --level with --series")
    for name in ('degree', 'samples', 's_max', 'cutoff'):
        value = inv.options.get(name)
        if value is not None and value < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
    if inv.command in ('fock', 'sugawara', 'invariants') and rank is not None and rank < 2:
        raise UsageError(f"{inv.command} needs --rank >= 2")
    if inv.command == 'branch':
        inv.options['charges'] = parse_charges(inv.options.pop('charge'))


# Handlers

def _label(inv: Invocation) -> SeriesLabel:
    return SeriesLabel(inv.option('series'), inv.option('rank'))


def _roots(inv: Invocation, settings: Settings) -> Payload:
    rs = build_root_system(_label(inv))
    rows = [{"root": str(r), "height": rs.height(r),
             "coefficients": list(rs.root_coefficients(r))} for r in rs.positive_roots]
    data = {
        "label": str(rs.label),
        "rank": rs.rank,
        "dimension": rs.dim_algebra,
        "dual_coxeter": rs.coxeter_dual,
        "simple_roots": [str(r) for r in rs.simple_roots],
        "fundamental_weights": [str(w) for w in rs.fundamental_weights],
        "highest_root": str(rs.highest_root),
        "rho": str(rs.rho),
        "positive_roots": rows,
    }
    return Payload(data, rows)


def _tensor(inv: Invocation, settings: Settings) -> Payload:
    rs = build_root_system(_label(inv))
    lam, mu = parse_weight(rs, inv.option('lam')), parse_weight(rs, inv.option('mu'))
    decomposition = tensor_decompose(rs, lam, mu, settings.dimension_bound)
    data = decomposition.to_dict()
    data.update({"lam": str(lam), "mu": str(mu)})
    return Payload(data, data["summands"])


def _char(inv: Invocation, settings: Settings) -> Payload:
    rs = build_root_system(_label(inv))
    table = weight_multiplicities(rs, parse_weight(rs, inv.option('lam')), settings.dimension_bound)
    data = table.to_dict()
    if inv.option('dominant', False):
        data["weights"] = [{"weight": w.to_strings(), "multiplicity": m}
                           for w, m in sorted(dominant_character(table).items(), reverse=True)]
    return Payload(data, data["weights"])


def _fock(inv: Invocation, settings: Settings) -> Payload:
    rank, charge = inv.option('rank'), inv.option('charge', 0)
    if rank > settings.max_fock_rank:
        raise UsageError(f"--rank {rank} exceeds the Fock rank bound {settings.max_fock_rank}")
    degree = inv.option('degree', Fraction(abs(charge), 2) + 2)
    idx = fock.SectorIndex(rank, charge, degree)
    if inv.action == 'basis':
        basis = fock.sector_basis(idx, degree, settings.dimension_bound)
        rows = [{"monomial": fock.monomial_name(m), "gl_weight": list(fock.gl_weight(rank, m))}
                for m in basis]
        data = {"rank": rank, "charge": charge, "degree": str(degree), "size": len(basis),
                "monomials": rows}
        return Payload(data, rows)
    if inv.action == 'character':
        character = fock.graded_character(idx, settings.dimension_bound)
        data = character.to_dict()
        rows = [{"degree": d, "dimension": n} for d, n in data["dimensions"].items()]
        return Payload(data, rows)
    result = fock.singular_scan(idx, settings.scan_degree, settings.max_fock_rank,
                                settings.dimension_bound)
    data = result.to_dict()
    rows = [{"degree": d["degree"], "dimension": d["dimension"],
             "kernel_dimension": d["kernel_dimension"], "extra": len(d["extra"])}
            for d in data["degrees"]]
    return Payload(data, rows, ok=result.clean)


def _singular(inv: Invocation, settings: Settings) -> Payload:
    which = {"A": ExplicitVector.A_TYPE, "D": ExplicitVector.D_TYPE}.get(inv.option('vector'))
    which = which or ExplicitVector(inv.option('vector'))
    rank = inv.option('rank', DEFAULT_VECTOR_RANK[which])
    v, level = build_explicit_vector(which, rank, inv.option('cutoff', settings.degree_cutoff))
    target = level
    if inv.option('level') is not None:
        target = AffineLevel(level.label, inv.option('level'))
        v = v.at_level(target)
    check = is_singular(target, v)
    data = {
        "vector": which.value,
        "rank": rank,
        "algebra": str(target.label),
        "level": str(target.k),
        "status": "singular" if check.singular else "not_singular",
        "terms": len(v.terms),
        "signs": resolve_signs(which, rank).to_dict(),
    }
    if not check.singular:
        data["operator"] = check.operator
        data["witness"] = check.witness.to_dict()
    return Payload(data, ok=check.singular)


def _sugawara(inv: Invocation, settings: Settings) -> Payload:
    rank = inv.option('rank')
    seed = settings.seed if inv.seed is None else inv.seed
    omega, sug, one = fock.conformal_vectors(rank)
    difference = omega - sug - one
    failures = fock.charge_additivity_failures(rank, inv.option('samples'), seed)
    data = {
        "rank": rank,
        "identity": difference.is_zero(),
        "difference": difference.to_dict(),
        "charge_additivity": {"samples": inv.option('samples'), "seed": seed,
                              "failures": failures},
    }
    return Payload(data, ok=difference.is_zero() and not failures)


def _phi(inv: Invocation, settings: Settings) -> Payload:
    rank = inv.option('rank')
    v, level = build_explicit_vector(ExplicitVector.A_TYPE, rank, settings.degree_cutoff)
    image = fock.phi_image(rank, v)
    data = {"rank": rank, "source": str(level), "zero": image.is_zero(), "image": image.to_dict()}
    return Payload(data, ok=image.is_zero())


def _branch(inv: Invocation, settings: Settings) -> Payload:
    report = decomposition_report(
        inv.option('family'), inv.option('rank'), inv.option('charges'),
        degree=inv.option('degree'), degree_bound=settings.scan_degree,
        max_rank=settings.max_fock_rank, bound=settings.dimension_bound)
    return Payload(report.to_dict(), [row.to_csv_row() for row in report.rows], ok=report.passed)


def _fusion(inv: Invocation, settings: Settings) -> Payload:
    a, b = FusionLabel(inv.option('a')), FusionLabel(inv.option('b'))
    product = fusion_product(a, b)
    data = {"a": str(a), "b": str(b), "product": str(product)}
    if inv.option('rank') is not None:
        data["modules"] = {str(x): str(x.type_a_module(inv.option('rank'))) for x in (a, b, product)}
    return Payload(data, [data])


def _cc(inv: Invocation, settings: Settings) -> Payload:
    if inv.option('series') is None:
        checks = conformal_embedding_checks()
        data = {"checks": [c.to_dict() for c in checks]}
        return Payload(data, data["checks"], ok=all(c.passed for c in checks))
    rs = build_root_system(_label(inv))
    data = {"algebra": str(rs.label), "level": str(inv.option('level')),
            "central_charge": str(central_charge(rs, inv.option('level')))}
    return Payload(data, [data])


def _embed(inv: Invocation, settings: Settings) -> Payload:
    spec = build_embedding(EmbeddingName(inv.option('name')), inv.option('rank'))
    data = embedding_summary(spec)
    ok = data["subalgebra_dimension"] == data["expected_dimension"] and data.get("H_commutes", True)
    if spec.name is EmbeddingName.D5_IN_E6:
        branching = finite_e6_branching()
        data["adjoint_branching"] = branching.to_dict()
        ok = ok and branching.dimensions == [45, 1, 16, 16]
    return Payload(data, ok=ok)


def _classify(inv: Invocation, settings: Settings) -> Payload:
    tables = classification_tables(inv.option('rank'), inv.option('s_max'))
    rows = [{"family": name, "instance": text}
            for name, table in tables.items() for text in table["instances"]]
    return Payload(tables, rows)


def _invariants(inv: Invocation, settings: Settings) -> Payload:
    rank = inv.option('rank')
    dims = fock.invariant_dims(rank, inv.option('degree'), settings.dimension_bound)
    rows = [{"degree": d, "dimension": n} for d, n in sorted(dims.items())]
    return Payload({"rank": rank, "dimensions": rows}, rows)


HANDLERS: Dict[str, Callable[[Invocation, Settings], Payload]] = {
    "roots": _roots,
    "tensor": _tensor,
    "char": _char,
    "fock": _fock,
    "singular": _singular,
    "sugawara": _sugawara,
    "phi": _phi,
    "branch": _branch,
    "fusion": _fusion,
    "cc": _cc,
    "embed": _embed,
    "classify": _classify,
    "invariants": _invariants,
}


# Output

def render(payload: Payload, output_format: str) -> str:
    if output_format == "csv":
        return dump_csv(payload.rows if payload.rows is not None else [payload.data])
    if output_format == "yaml":
        return yaml.safe_dump(plain(payload.data), sort_keys=True)
    return dump_json(payload.data)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, 'w') as f:
            f.write(text)
        logger.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)


def run_and_emit(inv: Invocation, settings: Optional[Settings] = None) -> int:
    """Dispatch an invocation, write its output and return the exit code"""
    settings = settings or load_settings(inv.config)
    monitoring = get_monitoring()
    try:
        payload = HANDLERS[inv.command](inv, settings)
    except (VerificationFailedError, InternalInconsistencyError) as e:
        logger.warning(f"{inv.command} failed: {e}")
        witness = getattr(e, 'witness', None)
        payload = Payload({"status": "failed", "error": str(e), "witness": witness}, ok=False)
    except WeylfreeError as e:
        logger.error(f"{inv.command}: {e}")
        sys.stderr.write(f"weylfree: error: {e}\n")
        return EXIT_USAGE
    monitoring.increment_counter("commands", tags={"command": inv.command})
    _emit(render(payload, inv.output_format), inv.output)
    return EXIT_OK if payload.ok else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, configure logging, settings and metrics, and run"""
    argv = sys.argv[1:] if argv is None else argv
    try:
        inv = parse_invocation(argv)
    except UsageError as e:
        sys.stderr.write(f"weylfree: usage error: {e}\n")
        return EXIT_USAGE
    try:
        overrides = {"seed": inv.seed, "log_level": inv.log_level}
        settings = load_settings(inv.config, overrides)
    except (OSError, ValueError, yaml.YAMLError) as e:
        sys.stderr.write(f"weylfree: cannot load settings: {e}\n")
        return EXIT_USAGE
    logging.getLogger().setLevel(settings.log_level)
    monitoring = configure_monitoring(settings.metrics_dir)
    code = run_and_emit(inv, settings)
    if inv.metrics:
        monitoring.record_memory()
        path = monitoring.save_metrics()
        if path:
            logger.info(f"Metrics saved to {path}")
    return code
