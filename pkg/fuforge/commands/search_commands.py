"""
The `search` subcommand: witnesses for fs / fu / pairs colorings and exact
fs thresholds, optimized or through the naive oracle, with result caching.
"""
import logging
from functools import partial

from fuforge.config.config import EXIT_OK, EXIT_UNRESOLVED, SEARCH_DOMAINS
from fuforge.errors import BudgetExceeded, UsageError
from fuforge.oracle import naive
from fuforge.search.coloring import Coloring, Domain, make_coloring
from fuforge.search.threshold import fs_threshold
from fuforge.search.witness_search import fu_witness, fs_witness, pair_witness

logger = logging.getLogger(__name__)

_DOMAIN_KIND = {"fs": "interval", "fu": "subsets", "pairs": "pairs"}


class SearchCommands:
    """
    A mixin for `CommandRunner` covering witness and threshold searches.
    """

    def _require(self, name: str):
        value = getattr(self.args, name, None)
        if value is None:
            raise UsageError(f"--{name} is required for search {self.args.domain}")
        return value

    def _coloring(self) -> Coloring:
        domain_name = self.args.domain
        size = self._require("N") if domain_name == "fs" else self._require("n")
        domain = Domain(_DOMAIN_KIND[domain_name], size)
        spec = self.args.coloring or "constant"
        r = self.args.r or (1 if spec == "constant" else 2)
        return make_coloring(spec, domain, r, self.config.seed, self.args.cut)

    # --- Witnesses ---

    def _witness_result(self, coloring: Coloring, k: int) -> dict:
        domain = self.args.domain
        if self.config.oracle:
            table = coloring.table.tolist()
            size = coloring.domain.size
            naive_fn = {"fs": naive.naive_fs_witness, "fu": naive.naive_fu_witness,
                        "pairs": naive.naive_pair_witness}[domain]
            found = naive_fn(table, size, k)
            if found is None:
                return {"result": "none", "nodes_explored": 0}
            color, gens = found
            gens = list(gens) if domain == "fs" else [list(g) for g in gens]
            return {"result": {"witness": {"color": color, "generators": gens}}, "nodes_explored": 0}

        search = {"fs": fs_witness, "fu": fu_witness, "pairs": pair_witness}[domain]
        outcome = search(coloring, k, budget=self.config.budget, mapper=self.app.mapper)
        return {"result": outcome.result_json(), "nodes_explored": outcome.nodes_explored}

    def _threshold_result(self, k: int, r: int, n_max: int) -> dict:
        if self.config.oracle:
            for N in range(1, n_max + 1):
                try:
                    if naive.naive_threshold(k, r, N, self.config.naive_budget):
                        return {"result": {"threshold": N}, "nodes_explored": 0}
                except BudgetExceeded as e:
                    logger.warning("oracle stopped at N=%d: %s", N, e)
                    break
            return {"result": {"unresolved": n_max}, "nodes_explored": 0}
        outcome = fs_threshold(k, r, n_max, budget=self.config.budget, mapper=self.app.mapper)
        return {"result": outcome.result_json(), "nodes_explored": outcome.nodes_explored}

    def cmd_search(self) -> int:
        """
        Runs one search and reports {domain, r, k, result, nodes_explored}.

        Returns:
            0 when resolved, 3 when the budget ran out first.
        """
        domain = self.args.domain
        if domain not in SEARCH_DOMAINS:
            raise UsageError(f"unknown domain {domain!r}")
        k = self._require("k")
        if k < 1:
            raise UsageError("--k must be positive")

        if domain == "fs-threshold":
            r = self._require("r")
            n_max = 32 if self.args.max is None else self.args.max
            if n_max < 1:
                raise UsageError("--max must be positive")
            payload = {"domain": domain, "k": k, "r": r, "max": n_max}
            compute = partial(self._threshold_result, k, r, n_max)
            label = f"fs-threshold k={k} r={r} max={n_max}"
        else:
            coloring = self._coloring()
            r = coloring.r
            payload = {"domain": domain, "k": k, "r": r, "coloring": coloring.digest()}
            compute = partial(self._witness_result, coloring, k)
            label = f"{coloring.domain.describe()} k={k} r={r} coloring={coloring.name}"
        payload.update(budget=self.config.budget, oracle=self.config.oracle)

        body, hit = self.app.cached(payload, compute,
                                    store=lambda res: not _unresolved(res["result"]))
        record = {"domain": domain, "r": r, "k": k, **body}
        if self.config.oracle:
            record["oracle"] = True
        self.app.emit(record, [f"search {label}: {_describe(body['result'])} "
                               f"nodes_explored={body['nodes_explored']}" + (" (cached)" if hit else "")])
        return EXIT_UNRESOLVED if _unresolved(body["result"]) else EXIT_OK


def _unresolved(result) -> bool:
    return result == "unresolved" or (isinstance(result, dict) and "unresolved" in result)


def _describe(result) -> str:
    if isinstance(result, str):
        return result
    if "witness" in result:
        w = result["witness"]
        gens = ",".join("{" + ",".join(map(str, g)) + "}" if isinstance(g, list) else str(g)
                        for g in w["generators"])
        return f"witness color={w['color']} ({gens})"
    if "threshold" in result:
        return f"threshold {result['threshold']}"
    return f"unresolved at {result['unresolved']}"
