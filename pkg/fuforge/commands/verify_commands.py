"""
The `verify` subcommand.

Builds the suite parameters from the command line and the run configuration,
runs the suite and reports every counterexample verbatim.
"""
import json

from fuforge.config.config import EXIT_OK, EXIT_VIOLATION
from fuforge.core.alpha import parse_base, parse_int_list
from fuforge.errors import UsageError
from fuforge.verify.suites import SuiteParams, run_suite


class VerifyCommands:
    """
    A mixin for `CommandRunner` that drives the verification suites.
    """

    def _suite_params(self) -> SuiteParams:
        args, config = self.args, self.config
        trials = getattr(args, "trials", None)
        if trials is not None and trials < 1:
            raise UsageError("--trials must be positive")
        params = SuiteParams(
            seed=config.seed,
            oracle=config.oracle,
            growth_trials=config.growth_trials if trials is None else trials,
            heredity_trials=config.heredity_trials if trials is None else trials,
        )
        if args.base:
            params.base = parse_base(args.base, config.pow2_length)
        if args.seq:
            try:
                params.seq = tuple(parse_int_list(args.seq))
            except ValueError as e:
                raise UsageError(str(e)) from e
            if not params.seq:
                raise UsageError("--seq needs at least one term")
        for name in ("factor", "order", "positions", "terms", "bound"):
            value = getattr(args, name, None)
            if value is None:
                continue
            if value < 1:
                raise UsageError(f"--{name} must be positive")
            setattr(params, name, value)
        return params

    def cmd_verify(self) -> int:
        """
        Runs one suite.

        Returns:
            0 when no violation was found, 1 otherwise.
        """
        suite = self.args.suite
        report = run_suite(suite, self._suite_params(), self.app.mapper)
        record = report.to_json()
        if self.config.oracle:
            record["oracle"] = True
        status = "ok" if report.ok else f"{len(report.violations)} violations"
        lines = [f"verify {suite}: {status} over {report.checked} checks"]
        lines += [json.dumps(v, sort_keys=True) for v in report.violations]
        self.app.emit(record, lines)
        return EXIT_OK if report.ok else EXIT_VIOLATION
