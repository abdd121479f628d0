#!/usr/bin/env python3
"""
Command-line front end.

Every command reads a JSON document (see cli/document.py), runs one
decision procedure and prints a report.

Command groups:
- check   effect | sharp | strong <doc> <effect>
- csea    build <doc> <sub> | contains <doc> <sub> <effect> |
          meet | join | separated <doc> <sub1> <sub2>
- obs     validate <doc> <obs> | dist <doc> <obs> <state> |
          apply <doc> <channel> <obs> | postprocess <doc> <A> <B> |
          coexist <doc> <sub> <a> <b> | iso <doc> <sub> <effect>
- ic      decide | complementary | strong-complementary <doc> [<f>...] |
          sweep <n>
- q       spectrum <doc> <effect> | decompose <doc> [<sub>] |
          example6 <doc> <alpha> <beta> | example7 <doc> <b> <c> <d> |
          strongify <doc> [<sub>]
          (noncommutative and blocks are aliases of example6 and example7)

Without variable names the ic commands use every random variable in the
document. Without a subalgebra name decompose and strongify use the
document's only subalgebra, or all of its effects when it declares none.

Exit status: 0 verdict true, 1 verdict false (witness printed),
2 input error (message and location on stderr).

Usage:
    python3 effect_algebra.py ic decide documents/complementary_not_ic.json f g
    python3 effect_algebra.py q decompose documents/block_generators.json F --tol 1e-9

    # Debug diagnostics and a transaction log
    python3 effect_algebra.py --debug --log session.log ic sweep 4
"""

import argparse
import os
import sys
import traceback
from datetime import datetime
from typing import Callable, Dict, List, Optional, TextIO

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.effects import (Effect, complement, is_effect, is_sharp, is_strong_effect,
                             payload_spectrum)
from cli.document import Document, load_document
from cli.report_display import Report, render_json, render_text
from infocomplete.ic import (complementarity_witness, is_ic, sweep_pairs, sweep_singles,
                             verify_witness)
from infocomplete.partition import (common_refinement, is_complementary,
                                    is_strongly_complementary, partition_of)
from kernel.errors import (DecompositionError, DocumentError, EffectAlgebraError,
                           NotAnObservableError, NotASubalgebraError)
from kernel.settings import get_seed, get_tolerance, set_debug, set_tolerance, is_debug
from observables.channel import apply_channel, find_postprocessing
from observables.observable import (classical_iso, coexistence_observable, coexistence_witness,
                                    distribution)
from quantum.commutative import strongify_commutative
from quantum.constructions import block_strong_generators, noncommutative_observable
from quantum.decomposition import spectrum, strong_decomposition
from subalgebra.csea import coefficients, is_separated, join, meet


def payload_json(a: Effect):
    """Coordinates of a classical effect, [re, im] entries of a quantum one."""
    if a.algebra.is_classical:
        return list(a.payload)
    return a.payload.to_entries()


class Runner:
    """Runs one command with optional debug output and a transaction log."""

    def __init__(self, log_file: Optional[str] = None, debug: bool = False,
                 output_format: str = 'text'):
        self.debug = debug
        self.output_format = output_format
        self.log_enabled = False
        self.log_file_path = log_file or "effect_algebra.log"
        self.log_handle: Optional[TextIO] = None
        if log_file:
            self.enable_log()

    def log_debug(self, message: str):
        """Diagnostic line on stderr when debug is on."""
        if self.debug:
            print(f"DEBUG: {message}", file=sys.stderr, flush=True)

    def enable_log(self):
        if not self.log_enabled:
            try:
                self.log_handle = open(self.log_file_path, 'a', encoding='utf-8')
                self.log_enabled = True
                timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
                self.log_handle.write(f"\n{'='*60}\n")
                self.log_handle.write(f"Session started: {timestamp}\n")
                self.log_handle.write(f"{'='*60}\n")
                self.log_handle.flush()
                self.log_debug(f"transaction log enabled: {self.log_file_path}")
            except OSError as e:
                self.log_debug(f"failed to enable transaction log: {e}")

    def disable_log(self):
        if self.log_enabled and self.log_handle:
            timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
            self.log_handle.write(f"Session ended: {timestamp}\n")
            self.log_handle.close()
            self.log_handle = None
            self.log_enabled = False

    def log_transaction(self, direction: str, message: str):
        """Append one timestamped IN/OUT line."""
        if self.log_enabled and self.log_handle:
            timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S.%f")[:-3]
            for line in message.splitlines() or [""]:
                self.log_handle.write(f"[{timestamp}] {direction:3s}: {line}\n")
            self.log_handle.flush()

    def emit(self, message: str, stream=None):
        """Print and log the transaction."""
        print(message, file=stream or sys.stdout, flush=True)
        self.log_transaction("OUT", message)

    def report(self, report: Report):
        if self.output_format == 'json':
            self.emit(render_json(report))
        else:
            for line in render_text(report):
                self.emit(line)
        if report.error is not None:
            print(f"error: {report.error}", file=sys.stderr, flush=True)

    def execute(self, args: argparse.Namespace) -> int:
        command = f"{args.group} {args.action}"
        self.log_transaction("IN", " ".join(args.argv))
        self.log_debug(f"command {command}, tolerance {get_tolerance():g}, seed {get_seed()}")
        try:
            try:
                report = HANDLERS[(args.group, args.action)](args, self)
            except EffectAlgebraError as e:
                self.log_debug(traceback.format_exc().rstrip())
                report = Report(command, error=str(e))
            report.command = command
            self.report(report)
            self.log_debug(f"exit status {report.exit_code}")
            return report.exit_code
        finally:
            self.disable_log()


# ----------------------------------------------------------------------------
# check

def cmd_check_effect(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    payload = doc.payload(args.effect)
    verdict = is_effect(doc.base, payload)
    if doc.base.is_classical:
        witness = {"effect": args.effect, "coordinates": list(payload)}
    else:
        witness = {"effect": args.effect, "spectrum": payload_spectrum(payload)}
    return Report("", verdict, witness)


def cmd_check_sharp(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    a = doc.effect(args.effect)
    return Report("", is_sharp(a), {"effect": args.effect, "spectrum": a.spectrum})


def cmd_check_strong(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    a = doc.effect(args.effect)
    return Report("", is_strong_effect(a), {"effect": args.effect, "max": a.spectrum[-1]})


# ----------------------------------------------------------------------------
# csea

def _generator_names(doc: Document, name: str, F) -> List[str]:
    names = doc.generator_names(name)
    return [next(n for n in names if doc.effect(n) == g) for g in F.generators]


def cmd_csea_build(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    try:
        F = doc.subalgebra(args.subalgebra)
    except NotASubalgebraError as e:
        return Report("", False, {"reason": str(e)})
    return Report("", True, {
        "dim": F.dim,
        "generators": _generator_names(doc, args.subalgebra, F),
        "unit_coefficients": F.unit_coefficients,
    })


def cmd_csea_contains(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    F = doc.subalgebra(args.subalgebra)
    a = doc.effect(args.effect)
    c = coefficients(F, a)
    if c is None:
        return Report("", False, {"reason": f"{args.effect} is outside the span"})
    return Report("", True, {"coefficients": c})


def _lattice(args, op) -> Report:
    doc = load_document(args.document)
    G = op(doc.subalgebra(args.first), doc.subalgebra(args.second))
    return Report("", True, {"dim": G.dim, "generators": [payload_json(g) for g in G.generators]})


def cmd_csea_meet(args, runner: Runner) -> Report:
    return _lattice(args, meet)


def cmd_csea_join(args, runner: Runner) -> Report:
    return _lattice(args, join)


def cmd_csea_separated(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    F1, F2 = doc.subalgebra(args.first), doc.subalgebra(args.second)
    return Report("", is_separated(F1, F2), {"meet_dim": meet(F1, F2).dim})


# ----------------------------------------------------------------------------
# obs

def cmd_obs_validate(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    try:
        A = doc.observable(args.observable)
    except NotAnObservableError as e:
        return Report("", False, {"reason": str(e)})
    return Report("", True, {"outcomes": list(A.outcomes)})


def cmd_obs_dist(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    A = doc.observable(args.observable)
    return Report("", True, {"distribution": distribution(A, doc.state(args.state))})


def cmd_obs_apply(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    B = apply_channel(doc.channel(args.channel), doc.observable(args.observable))
    return Report("", True, {"effects": {x: payload_json(b) for x, b in B.items()}})


def cmd_obs_postprocess(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    result = find_postprocessing(doc.observable(args.first), doc.observable(args.second))
    if not result.found:
        witness = {"reason": result.reason}
        if result.offending is not None:
            x, y, value = result.offending
            witness["offending"] = {"x": x, "y": y, "value": value}
        return Report("", False, witness)
    nu = result.channel
    return Report("", True, {"inputs": list(nu.inputs), "outputs": list(nu.outputs),
                             "channel": nu.matrix})


def cmd_obs_coexist(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    S = doc.strong_span(args.subalgebra)
    w = coexistence_witness(S, doc.effect(args.first), doc.effect(args.second))
    joint = coexistence_observable(w)
    return Report("", True, {x: payload_json(e) for x, e in joint.items()})


def cmd_obs_iso(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    J = classical_iso(doc.strong_span(args.subalgebra))
    a = doc.effect(args.effect)
    lam = J.forward(a)
    verdict = J.inverse(lam).close_to(a)
    return Report("", verdict, {"J(a)": lam, "J(a')": J.forward(complement(a))})


# ----------------------------------------------------------------------------
# ic

def _variables(args):
    """Named random variables, or every one in the document when none are named."""
    doc = load_document(args.document)
    if not args.variables:
        args.variables = list(doc.random_variables)
        if not args.variables:
            raise DocumentError("document has no random variables", "random_variables")
    return [doc.random_variable(name) for name in args.variables]


def _generators(doc: Document, name: Optional[str]) -> List[Effect]:
    """
    Effects of the named subalgebra. Without a name: the document's only
    subalgebra, or every effect when it declares none.
    """
    if name is None:
        if len(doc.subalgebras) > 1:
            raise DocumentError(f"name one of the subalgebras {sorted(doc.subalgebras)}",
                                "subalgebras")
        if doc.subalgebras:
            name = next(iter(doc.subalgebras))
        else:
            return doc.effects(list(doc.payloads))
    return doc.effects(doc.generator_names(name))


def cmd_ic_decide(args, runner: Runner) -> Report:
    fs = _variables(args)
    verdict = is_ic(fs)
    witness = {"rank": verdict.rank, "n": fs[0].n}
    if verdict.witness is not None:
        mu, nu = verdict.witness
        witness.update(mu=mu, nu=nu, verified=verify_witness(fs, mu, nu))
    return Report("", verdict.ic, witness)


def cmd_ic_complementary(args, runner: Runner) -> Report:
    fs = _variables(args)
    witness = {"refinement": str(common_refinement(fs))}
    pair = complementarity_witness(fs)
    if pair is not None:
        witness.update(mu=pair[0], nu=pair[1])
    return Report("", is_complementary(fs), witness)


def cmd_ic_strong_complementary(args, runner: Runner) -> Report:
    fs = _variables(args)
    partitions = {name: str(partition_of(f)) for name, f in zip(args.variables, fs)}
    return Report("", is_strongly_complementary(fs), {"partitions": partitions})


def cmd_ic_sweep(args, runner: Runner) -> Report:
    n = args.n
    if n < 1 or n > 6:
        raise EffectAlgebraError(f"sweep size must be between 1 and 6, got {n}")
    singles = sweep_singles(n, verbose=runner.debug)
    pairs = sweep_pairs(n, verbose=runner.debug)
    witness = {
        "partitions": singles.partitions,
        "single_violations": [str(P) for P in singles.violations],
        "pairs": pairs.pairs,
        "strongly_complementary": pairs.strongly_complementary,
        "ic": pairs.ic,
        "complementary": pairs.complementary,
        "strong_not_ic": [[str(P), str(Q)] for P, Q in pairs.strong_not_ic],
        "ic_not_complementary": [[str(P), str(Q)] for P, Q in pairs.ic_not_complementary],
    }
    if pairs.complementary_not_ic is not None:
        witness["complementary_not_ic"] = [str(P) for P in pairs.complementary_not_ic]
    if pairs.ic_not_strongly_complementary is not None:
        witness["ic_not_strongly_complementary"] = [str(P) for P in pairs.ic_not_strongly_complementary]
    return Report("", singles.holds and pairs.holds, witness)


# ----------------------------------------------------------------------------
# q

def cmd_q_spectrum(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    return Report("", True, {"spectrum": spectrum(doc.effect(args.effect))})


def cmd_q_decompose(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    generators = _generators(doc, args.subalgebra)
    try:
        dec = strong_decomposition(generators)
    except DecompositionError as e:
        return Report("", False, {"reason": str(e)})
    return Report("", True, {"ranks": dec.ranks, "q_rank": dec.q_rank,
                             "projections": [p.round(12) for p in dec.projections]},
                  dec.residuals)


def cmd_q_noncommutative(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    result = noncommutative_observable(doc.effect(args.alpha), doc.effect(args.beta))
    return Report("", True, {
        "effects": [payload_json(a) for a in result.observable.effects],
        "commutators": result.commutators,
        "spectra": result.spectra,
        "strong": result.strong,
    })


def cmd_q_blocks(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    result = block_strong_generators(doc.effect(args.b), doc.effect(args.c), doc.effect(args.d))
    return Report("", True, {
        "commutative": result.commutative,
        "commutator": result.commutator,
        "ranks": result.decomposition.ranks,
        "q_rank": result.decomposition.q_rank,
    }, result.decomposition.residuals)


def cmd_q_strongify(args, runner: Runner) -> Report:
    doc = load_document(args.document)
    generators = _generators(doc, args.subalgebra)
    result = strongify_commutative(generators, verbose=runner.debug)
    if not result.success:
        return Report("", False, {"proof_gap": result.proof_gap, "truncated": result.truncated,
                                  "diagonal": result.diagonal},
                      result.residuals)
    return Report("", True, {
        "rows": result.rows,
        "spectra": [b.spectrum for b in result.generators],
        "generators": [payload_json(b) for b in result.generators],
    }, result.residuals)


HANDLERS: Dict[tuple, Callable[[argparse.Namespace, Runner], Report]] = {
    ('check', 'effect'): cmd_check_effect,
    ('check', 'sharp'): cmd_check_sharp,
    ('check', 'strong'): cmd_check_strong,
    ('csea', 'build'): cmd_csea_build,
    ('csea', 'contains'): cmd_csea_contains,
    ('csea', 'meet'): cmd_csea_meet,
    ('csea', 'join'): cmd_csea_join,
    ('csea', 'separated'): cmd_csea_separated,
    ('obs', 'validate'): cmd_obs_validate,
    ('obs', 'dist'): cmd_obs_dist,
    ('obs', 'apply'): cmd_obs_apply,
    ('obs', 'postprocess'): cmd_obs_postprocess,
    ('obs', 'coexist'): cmd_obs_coexist,
    ('obs', 'iso'): cmd_obs_iso,
    ('ic', 'decide'): cmd_ic_decide,
    ('ic', 'complementary'): cmd_ic_complementary,
    ('ic', 'strong-complementary'): cmd_ic_strong_complementary,
    ('ic', 'sweep'): cmd_ic_sweep,
    ('q', 'spectrum'): cmd_q_spectrum,
    ('q', 'decompose'): cmd_q_decompose,
    ('q', 'example6'): cmd_q_noncommutative,
    ('q', 'example7'): cmd_q_blocks,
    ('q', 'noncommutative'): cmd_q_noncommutative,
    ('q', 'blocks'): cmd_q_blocks,
    ('q', 'strongify'): cmd_q_strongify,
}

# Positional arguments after <doc> for every command
ARGUMENTS = {
    ('check', 'effect'): ['effect'],
    ('check', 'sharp'): ['effect'],
    ('check', 'strong'): ['effect'],
    ('csea', 'build'): ['subalgebra'],
    ('csea', 'contains'): ['subalgebra', 'effect'],
    ('csea', 'meet'): ['first', 'second'],
    ('csea', 'join'): ['first', 'second'],
    ('csea', 'separated'): ['first', 'second'],
    ('obs', 'validate'): ['observable'],
    ('obs', 'dist'): ['observable', 'state'],
    ('obs', 'apply'): ['channel', 'observable'],
    ('obs', 'postprocess'): ['first', 'second'],
    ('obs', 'coexist'): ['subalgebra', 'first', 'second'],
    ('obs', 'iso'): ['subalgebra', 'effect'],
    ('ic', 'decide'): ['variables*'],
    ('ic', 'complementary'): ['variables*'],
    ('ic', 'strong-complementary'): ['variables*'],
    ('q', 'spectrum'): ['effect'],
    ('q', 'decompose'): ['subalgebra?'],
    ('q', 'example6'): ['alpha', 'beta'],
    ('q', 'example7'): ['b', 'c', 'd'],
    ('q', 'noncommutative'): ['alpha', 'beta'],
    ('q', 'blocks'): ['b', 'c', 'd'],
    ('q', 'strongify'): ['subalgebra?'],
}

GROUP_HELP = {
    'check': 'effect predicates',
    'csea': 'convex subeffect algebras',
    'obs': 'observables, channels, coexistence',
    'ic': 'informational completeness of random variables',
    'q': 'quantum spectra and decompositions',
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, default=argparse.SUPPRESS,
                        help='tolerance ε for quantum checks (default 1e-9, env EA_TOL)')
    common.add_argument('--format', choices=['text', 'json'], default=argparse.SUPPRESS,
                        help='report format (default text)')
    common.add_argument('--debug', action='store_true', default=argparse.SUPPRESS,
                        help='print diagnostics to stderr (env EA_DEBUG)')
    common.add_argument('--log', type=str, metavar='FILE', default=argparse.SUPPRESS,
                        help='append a timestamped transaction log to FILE')

    parser = argparse.ArgumentParser(
        prog='effect_algebra.py',
        description='Finite-dimensional convex effect algebras',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[common],
        epilog="""
Examples:
  # Are the document's random variables informationally complete?
  python3 effect_algebra.py ic decide documents/complementary_not_ic.json

  # Projection decomposition of a strong quantum CSEA, JSON report
  python3 effect_algebra.py q decompose documents/block_generators.json --tol 1e-9 --format json

  # Strong generators from noncommuting 2x2 blocks
  python3 effect_algebra.py q example7 documents/qubit_effects.json b c d

  # Exhaustive complementarity / IC sweep over partitions of 4 points
  python3 effect_algebra.py ic sweep 4

  # Rejected effect (exit 1)
  python3 effect_algebra.py check effect documents/classical_effects.json bad

Environment: EA_TOL, EA_SEED (diagonalization seed, default 42), EA_DEBUG, EA_COLOR.
        """
    )
    groups = parser.add_subparsers(dest='group', metavar='GROUP')
    groups.required = True
    actions_by_group: Dict[str, List[str]] = {}
    for group, action in HANDLERS:
        actions_by_group.setdefault(group, []).append(action)

    for group, actions in actions_by_group.items():
        group_parser = groups.add_parser(group, help=GROUP_HELP[group])
        sub = group_parser.add_subparsers(dest='action', metavar='ACTION')
        sub.required = True
        for action in actions:
            leaf = sub.add_parser(action, parents=[common])
            if (group, action) == ('ic', 'sweep'):
                leaf.add_argument('n', type=int, help='number of points')
                continue
            leaf.add_argument('document', help='input document (JSON)')
            for name in ARGUMENTS[(group, action)]:
                if name[-1] in '*?':
                    leaf.add_argument(name[:-1], nargs=name[-1])
                else:
                    leaf.add_argument(name)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv

    debug = getattr(args, 'debug', False) or is_debug()
    set_debug(debug)
    runner = Runner(log_file=getattr(args, 'log', None), debug=debug,
                    output_format=getattr(args, 'format', 'text'))
    if hasattr(args, 'tol'):
        try:
            set_tolerance(args.tol)
        except ValueError as e:
            runner.report(Report(f"{args.group} {args.action}", error=str(e)))
            runner.disable_log()
            return 2
    return runner.execute(args)


if __name__ == "__main__":
    sys.exit(main())
