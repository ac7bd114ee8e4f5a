"""
The `explore` subcommand.

- `--seq` with `--y`: condensation report (blocks, disjointness, growth inheritance);
- `--seq` with `--sum`: x-support, image under the natural isomorphism, binary image;
- `--seq` with `--k`: export of the FS_k catalog;
- `--family` / `--cond` / `--b`: the x / y / z construction report.
"""
import json

from fuforge.config.config import EXIT_OK
from fuforge.core import fs_engine, parity
from fuforge.core.alpha import parse_int_list
from fuforge.core.finset import FinSet
from fuforge.errors import InvalidFamily, UsageError


class ExploreCommands:
    """
    A mixin for `CommandRunner` with the one-off inspection tools.
    """

    def _int_list(self, flag: str, text: str) -> list:
        try:
            return parse_int_list(text)
        except ValueError as e:
            raise UsageError(f"{flag}: {e}") from e

    def _explore_sequence(self):
        x = fs_engine.GrowthSequence.from_terms(self._int_list("--seq", self.args.seq))
        cap = self.config.max_enumeration_length
        base = {"seq": list(x.terms), "growth_factor": x.growth_factor}
        if self.args.y:
            result = fs_engine.is_condensation(self._int_list("--y", self.args.y), x, cap)
            record = dict(base, condensation=result.to_json())
            if isinstance(result, fs_engine.Refusal):
                text = f"refused: {result.reason} (sum {result.violating_sum})"
            else:
                blocks = " ".join(str(b) for b in result.blocks)
                text = (f"blocks {blocks} disjoint={result.pairwise_disjoint} "
                        f"increasing={result.increasing} growth_inherited={result.growth_inherited}")
            return record, [text]
        if self.args.sum is not None:
            z = self.args.sum
            if len(x) > cap:
                support = fs_engine.greedy_decode(x, z)
                image = support.mask
            else:
                catalog = fs_engine.enumerate_fs(x, 0, cap)
                support = fs_engine.additive_iso_image(catalog, z)
                image = fs_engine.binary_image(catalog, z)
            record = dict(base, sum=z, support=list(support), binary_image=image,
                          x_min=support.min, x_max=support.max)
            return record, [f"{z} supp={support} binary={image} "
                            f"min={support.min} max={support.max}"]
        k = self.args.k or 0
        catalog = fs_engine.enumerate_fs(x, k, cap)
        record = dict(base, catalog=catalog.to_json())
        lines = [f"FS_{k}: {catalog.sums.size} sums, unique={catalog.unique}"]
        lines.append(" ".join(str(int(v)) for v in catalog.sums))
        return record, lines

    def _explore_family(self):
        if self.args.cond is None or self.args.b is None:
            raise UsageError("--family needs --cond and --b")
        family = parity.FUFamily.from_json(self.args.family)
        try:
            raw = json.loads(self.args.cond)
            t = [FinSet.of(m, family.ground.universe) for m in raw]
        except (json.JSONDecodeError, TypeError) as e:
            raise InvalidFamily(f"--cond must be a JSON array of integer arrays: {e}") from e
        report = parity.construct_xyz(family, t, self.args.b)
        record = {"family": family.to_json(), "cond": [list(m) for m in t], "b": self.args.b,
                  **report.to_json()}
        text = (f"x={report.x} b1={report.b1} y={report.y} z={report.z} "
                f"pi_xy={report.pi_xy} pi_xz={report.pi_xz} "
                f"homogeneous={report.homogeneous} -> {report.verdict}"
                + (" (z empty)" if report.z_empty else ""))
        return record, [text]

    def cmd_explore(self) -> int:
        if self.args.seq:
            record, lines = self._explore_sequence()
        elif self.args.family:
            record, lines = self._explore_family()
        else:
            raise UsageError("explore needs --seq or --family")
        self.app.emit(record, lines)
        return EXIT_OK
