"""Command-line harness: `osp-yangian <subcommand> [options]`.

Every subcommand prints one report (JSON or text) and exits with the
report's code: 0 when everything passed, 1 on any failure, 2 when the
only problems are inconclusive verdicts.  An invalid configuration exits
with 3; click keeps its own code 2 for unknown options.
"""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass

import click

from . import enveloping, hopf, matrix_model, yangian
from .report import PASS, VerificationReport
from .rewriting import DEFAULT_BOUND, DEFAULT_TIMEOUT
from .root_data import BorelChoice, enumerate_borels, positive_roots, simple_root_system


EXIT_CONFIG = 3


@dataclass
class RunConfig:
    m: int = 1
    n: int = 1
    borel: str = "all"
    max_level: int | None = None
    max_word_len: int = DEFAULT_BOUND[0]
    max_total_level: int = DEFAULT_BOUND[1]
    timeout_sec: float = DEFAULT_TIMEOUT
    report_format: str = "text"
    convention: str = "both"
    timings: bool = True

    def __post_init__(self):
        if self.m < 0 or self.n < 1:
            raise ValueError("B(m, n) needs m >= 0 and n >= 1")
        if self.max_word_len < 1 or self.max_total_level < 0 or self.timeout_sec <= 0:
            raise ValueError("bounds must be positive")
        if self.max_level is not None and self.max_level < 0:
            raise ValueError("max level must be non-negative")
        if self.borel != "all":
            BorelChoice.parse(self.borel, self.m, self.n)

    @property
    def bound(self) -> tuple:
        return (self.max_word_len, self.max_total_level)

    def borels(self) -> list:
        if self.borel == "all":
            return [b.tags for b in enumerate_borels(self.m, self.n)]
        return [self.borel]


def _params(cfg: RunConfig, **extra) -> dict:
    d = {"m": cfg.m, "n": cfg.n, "borel": cfg.borel}
    d.update(extra)
    return d


def run_borels(cfg: RunConfig) -> VerificationReport:
    rep = VerificationReport("borels", _params(cfg))
    for tags in cfg.borels():
        s = simple_root_system(BorelChoice.parse(tags, cfg.m, cfg.n))
        rep.add(tags, PASS, s.diagram())
    return rep


def run_cartan(cfg: RunConfig) -> VerificationReport:
    rep = VerificationReport("cartan", _params(cfg))
    for tags in cfg.borels():
        s = simple_root_system(BorelChoice.parse(tags, cfg.m, cfg.n))
        C = s.cartan.as_lists()
        ok = all(C[i][j] == C[j][i] for i in range(len(C)) for j in range(len(C)))
        rep.add_bool(tags, ok, str(C).replace(" ", ""))
    return rep


def run_roots(cfg: RunConfig) -> VerificationReport:
    rep = VerificationReport("roots", _params(cfg))
    rep.add_bool("root set = matrix eigen-decomposition", matrix_model.compare_root_sets(cfg.m, cfg.n))
    for tags in cfg.borels():
        s = simple_root_system(BorelChoice.parse(tags, cfg.m, cfg.n))
        pos = positive_roots(s).positive
        text = " ".join(f"{p.weight}{'*' if p.parity else ''}" for p in pos)
        rep.add(tags, PASS, text)
    rep.notes.append("* marks odd roots")
    return rep


def run_check_lie(cfg: RunConfig) -> VerificationReport:
    rep = VerificationReport("check-lie", _params(cfg))
    for tags in cfg.borels():
        rep.extend(matrix_model.verify_serre(cfg.m, cfg.n, tags), prefix=f"{tags}: ")
        bad = matrix_model.check_super_jacobi(cfg.m, cfg.n, tags)
        rep.add_bool(f"{tags}: super-Jacobi on basis triples", not bad, "; ".join(map(str, bad[:5])))
    return rep


def run_check_casimir(cfg: RunConfig) -> VerificationReport:
    rep = VerificationReport("check-casimir", _params(cfg))
    for tags in cfg.borels():
        rep.extend(enveloping.check_casimir_invariance(cfg.m, cfg.n, tags), prefix=f"{tags}: ")
    return rep


def _level_filter(suite, max_level):
    if max_level is None:
        return suite
    return tuple(e for e in suite if e.max_level <= max_level)


def run_check_minimal(cfg: RunConfig) -> VerificationReport:
    rep = VerificationReport("check-minimal", _params(cfg, bound=list(cfg.bound), timeout=cfg.timeout_sec))
    suite = _level_filter(yangian.MINIMAL_SUITE, cfg.max_level)
    for tags in cfg.borels():
        sub = yangian.check_minimal(tags, cfg.m, cfg.n, cfg.bound, cfg.timeout_sec, suite)
        rep.extend(sub, prefix=f"{tags}: ")
    return rep


def run_check_thx(cfg: RunConfig) -> VerificationReport:
    r = 2 if cfg.max_level is None else cfg.max_level
    rep = VerificationReport("check-thx", _params(cfg, max_r=r, max_s=1, bound=list(cfg.bound)))
    for tags in cfg.borels():
        sub = yangian.check_thx(tags, cfg.m, cfg.n, max_r=r, max_s=1, bound=cfg.bound, timeout=cfg.timeout_sec)
        rep.extend(sub, prefix=f"{tags}: ")
    return rep


def run_check_hopf(cfg: RunConfig) -> VerificationReport:
    convs = list(hopf.SignConvention) if cfg.convention == "both" else [hopf.SignConvention(cfg.convention)]
    rep = VerificationReport("check-hopf", _params(cfg, convention=cfg.convention, bound=list(cfg.bound)))
    for tags in cfg.borels():
        sub = hopf.check_hopf(tags, cfg.m, cfg.n, convs, cfg.bound, cfg.timeout_sec)
        rep.extend(sub, prefix=f"{tags}: ")
    rep.notes.append("Δ²(h_{j,0}) in the level-raising rule for Δ(x_{i,r+1}) is read as Δ(h_{j,0})²; □(x) = x⊗1 + 1⊗x.")
    return rep


COMMANDS = {
    "borels": run_borels,
    "cartan": run_cartan,
    "roots": run_roots,
    "check-lie": run_check_lie,
    "check-casimir": run_check_casimir,
    "check-minimal": run_check_minimal,
    "check-thx": run_check_thx,
    "check-hopf": run_check_hopf,
}


def run(subcommand: str, cfg: RunConfig) -> tuple:
    rep = COMMANDS[subcommand](cfg)
    if not cfg.timings:
        rep.strip_timings()
    return rep, rep.exit_code


def render(rep: VerificationReport, cfg: RunConfig) -> str:
    if cfg.report_format == "json":
        return rep.to_json()
    return rep.to_text(timings=cfg.timings)


def _common(f):
    opts = [
        click.option("--m", "m", type=int, default=1, show_default=True),
        click.option("--n", "n", type=int, default=1, show_default=True),
        click.option("--borel", default="all", show_default=True, help='ε/δ shuffle such as "de", or "all".'),
        click.option("--max-level", type=int, default=None, help="Level cap for generated instances."),
        click.option("--max-word-len", type=int, default=DEFAULT_BOUND[0], show_default=True),
        click.option("--max-total-level", type=int, default=DEFAULT_BOUND[1], show_default=True),
        click.option("--timeout", "timeout_sec", type=float, default=DEFAULT_TIMEOUT, show_default=True,
                     help="Seconds per completion."),
        click.option("--format", "report_format", type=click.Choice(["json", "text"]), default="text",
                     show_default=True),
        click.option("--convention", type=click.Choice(["plain", "parity", "both"]), default="both",
                     show_default=True, help="Coproduct sign convention (check-hopf)."),
        click.option("--no-timings", "no_timings", is_flag=True, help="Omit elapsed times (byte-stable output)."),
        click.option("-v", "--verbose", is_flag=True),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


@click.group()
def main():
    """Verification harness for Yangians of B(m, n)."""


def _make(name):
    @_common
    def cmd(verbose, no_timings, **kw):
        logging.basicConfig(level=logging.INFO if verbose else logging.WARNING)
        try:
            cfg = RunConfig(timings=not no_timings, **kw)
        except ValueError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_CONFIG)
        rep, code = run(name, cfg)
        click.echo(render(rep, cfg))
        sys.exit(code)

    cmd.__doc__ = {
        "borels": "Enumerate Borel choices with their Dynkin diagrams.",
        "cartan": "Symmetric Cartan matrices.",
        "roots": "Positive roots (and the matrix cross-check).",
        "check-lie": "Serre relations and super-Jacobi in the matrix realization.",
        "check-casimir": "Invariance and symmetry of the Casimir tensor.",
        "check-minimal": "Y-instances under the minimalistic relations.",
        "check-thx": "The [h̃_{i,r}, x_{j,s}] binomial identity under the minimalistic relations.",
        "check-hopf": "Counit, coassociativity and antipode axioms on low-level generators.",
    }[name]
    main.command(name)(cmd)


for _name in COMMANDS:
    _make(_name)


if __name__ == "__main__":
    main()
