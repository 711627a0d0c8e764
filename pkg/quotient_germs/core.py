"""
Core functionality for quotient_germs: one method per subcommand.
"""

from typing import Callable, Dict, Optional, Tuple

import click

from .config import RunConfig
from .errors import GermFileError, InvalidParametersError, QuotientGermsError
from .exact_core import to_rational
from .fundamental_cycle import (
    DEFAULT_ORACLE_BOUND,
    brute_force_fundamental_cycle,
    check_6e,
    fundamental_cycle_self_intersection,
    laufer_trace,
)
from .germ_files import load_germ_file, load_graph_file, write_graph_file
from .hj_cyclic import hj_expand
from .log_discrepancy import (
    exceptional_log_pullback,
    is_du_val,
    lct_maximal_ideal,
    mld_over_point,
    pullback_residuals,
    verify_surface_bound,
)
from .logger import get_logger
from .monomial_plane import (
    MonomialBoundary,
    example_sharpness_check,
    monomial_lct,
    monomial_mld_certified,
    parse_exponents,
)
from .properties import PropertySuite
from .quotient_catalog import Family, catalog_entry
from .report import Report, emit_report
from .verification import GermVerifier

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


class GermRunner:
    """Runs one subcommand described by a RunConfig and reports the outcome."""

    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig()
        self.logger = get_logger()
        self.verifier = GermVerifier(self.config)
        self.handlers: Dict[str, Callable[[], Report]] = {
            'catalog': self.catalog,
            'fundcycle': self.fundcycle,
            'sweep-6e': self.verifier.sweep_6e,
            'verify-tables': self.verifier.verify_tables,
            'discrepancy': self.discrepancy,
            'mld': self.mld,
            'lct-max-ideal': self.lct_max_ideal,
            'check-surface-bound': self.check_surface_bound,
            'monomial-mld': self.monomial_mld,
            'monomial-lct': self.monomial_lct,
            'example18': self.example18,
            'property-suite': self.property_suite,
        }

    @property
    def options(self) -> Dict:
        return self.config.options

    def _input(self) -> str:
        if not self.config.inputs:
            raise InvalidParametersError(f"{self.config.subcommand} needs an input file")
        return self.config.inputs[0]

    def execute(self) -> Report:
        handler = self.handlers.get(self.config.subcommand)
        if handler is None:
            raise InvalidParametersError(f"unknown subcommand {self.config.subcommand!r}")
        self.logger.debug(f"Running {self.config.subcommand} with {self.config.to_dict()}")
        return handler()

    def run(self) -> Tuple[int, str]:
        """Exit status and rendered report; input errors come back as status 2 and a diagnostic."""
        try:
            report = self.execute()
        except GermFileError as e:
            return EXIT_INPUT, e.render()
        except QuotientGermsError as e:
            return EXIT_INPUT, f"{self.config.subcommand}: {type(e).__name__.replace('Error', '')}: {e}"
        text = emit_report(report, self.config.output_format)
        return (EXIT_OK if report.passed else EXIT_FAILED), text

    def catalog(self) -> Report:
        family = Family.parse(self.options.get('family', ''))
        params = {k: self.options[k] for k in ('n', 'q', 'm') if self.options.get(k) is not None}
        entry = catalog_entry(family, **params)
        report = Report(f"Minimal resolution of {entry.key}", columns=['vertex', 'weight', 'neighbours'])
        for vertex in entry.graph.vertices:
            report.add(vertex=vertex.id, weight=vertex.weight, neighbours=sorted(entry.graph.neighbours(vertex.id)))
        report.summary = {'germ': entry.key, 'derived_b': entry.derived_b, 'graph': entry.graph.to_document()}
        if family in (Family.CYCLIC, Family.DIHEDRAL):
            report.summary['hj_expansion'] = list(hj_expand(params['n'], params['q']).terms)
        output = self.options.get('output')
        if output:
            write_graph_file(output, entry.graph)
            self.logger.info(f"✅ Wrote {output}")
        return report

    def fundcycle(self) -> Report:
        graph = load_graph_file(self._input())
        report = Report(f"Fundamental cycle of {self._input()}")
        if self.options.get('oracle'):
            cycle = brute_force_fundamental_cycle(graph, self.options.get('bound') or DEFAULT_ORACLE_BOUND)
            row = {'method': 'oracle'}
        else:
            trace = laufer_trace(graph, self.options.get('policy') or 'lowest', self.options.get('start'))
            cycle = trace.cycle
            row = {'method': 'laufer', 'steps': trace.steps}
        report.add(
            cycle=cycle,
            self_intersection=fundamental_cycle_self_intersection(graph, cycle),
            max_coefficient=check_6e(graph, cycle).max_coefficient,
            **row,
        )
        return report

    def discrepancy(self) -> Report:
        graph, boundary = load_germ_file(self._input())
        if graph.is_smooth_point():
            raise InvalidParametersError("a smooth point has no exceptional curves")
        pullback = exceptional_log_pullback(graph, boundary)
        report = Report(f"Log pullback of {self._input()}", columns=['vertex', 'weight', 'e', 'a'])
        for vertex, e in zip(graph.vertices, pullback):
            report.add(vertex=vertex.id, weight=vertex.weight, e=e, a=1 - e)
        report.summary = {
            'residuals_zero': not any(pullback_residuals(graph, boundary, pullback)),
            'du_val': not len(boundary) and is_du_val(graph),
        }
        return report

    def mld(self) -> Report:
        graph, boundary = load_germ_file(self._input())
        report = Report(f"mld over the point of {self._input()}")
        report.add(mld=mld_over_point(graph, boundary))
        return report

    def lct_max_ideal(self) -> Report:
        graph, boundary = load_germ_file(self._input())
        report = Report(f"lct of the maximal ideal of {self._input()}")
        report.add(lct=lct_maximal_ideal(graph, boundary))
        return report

    def check_surface_bound(self) -> Report:
        if self.options.get('sweep'):
            return self.verifier.surface_bound_sweep()
        graph, boundary = load_germ_file(self._input())
        result = verify_surface_bound(graph, boundary)
        report = Report(f"lct against mld^2/24 for {self._input()}")
        report.add(
            germ=self._input(),
            epsilon=result.mld,
            lct=result.lct_maximal_ideal,
            required=result.required,
            passed=result.epsilon_sq_over_24_ok,
        )
        report.summary = {
            'epsilon_sq_over_4_ok': result.epsilon_sq_over_4_ok,
            'adjunction_ok': result.adjunction_ok,
            'component_checks': result.component_checks,
        }
        report.passed = result.epsilon_sq_over_24_ok and result.epsilon_sq_over_4_ok and result.adjunction_ok
        return report

    def _exponents(self):
        text = self.options.get('exponents')
        if not text:
            raise InvalidParametersError("--exponents is required")
        return parse_exponents(text)

    def monomial_mld(self) -> Report:
        try:
            lam = to_rational(self.options.get('lambda') or '0')
        except (TypeError, ValueError) as e:
            raise InvalidParametersError(f"--lambda: {e}") from None
        mb = MonomialBoundary(lam, tuple(self._exponents()))
        certificate = monomial_mld_certified(mb)
        report = Report("mld at the origin with monomial boundary")
        report.add(
            mld=certificate.value,
            simplex_minimum=certificate.simplex_minimum,
            box=certificate.box,
            minimiser=list(certificate.minimiser) if certificate.minimiser else None,
        )
        return report

    def monomial_lct(self) -> Report:
        report = Report("lc threshold of the monomial curve")
        report.add(lct=monomial_lct(self._exponents()))
        return report

    def example18(self) -> Report:
        m = self.options.get('m')
        values = [m] if m else range(1, self.config.max_m + 1)
        report = Report("Sharpness family x^m + y^(m+1)",
                        columns=['m', 'lambda', 'mld', 'a_E', 'bound', 'order_bound_ok'])
        for value in values:
            check = example_sharpness_check(value)
            report.add(m=check.m, **{'lambda': check.lam}, mld=check.mld, a_E=check.a_E,
                       bound=check.bound, order_bound_ok=check.order_bound_ok)
        report.passed = all(row['order_bound_ok'] for row in report.rows)
        return report

    def property_suite(self) -> Report:
        return PropertySuite(self.config).run()


def run(config: RunConfig) -> int:
    """Run one configuration, print its report, and return the exit status."""
    status, text = GermRunner(config).run()
    click.echo(text, err=status == EXIT_INPUT)
    return status
