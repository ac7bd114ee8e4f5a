"""
The `decode` subcommand: alpha-expansions of integers over a divisible base.
"""
from fuforge.config.config import EXIT_OK
from fuforge.core.alpha import DivisibleBase, expand, parse_base
from fuforge.errors import UsageError


class DecodeCommands:
    """
    A mixin for `CommandRunner` printing expansions, supports and alpha-min/max.
    """

    def _base_for(self, n: int) -> DivisibleBase:
        """`pow2` is sized to each input; explicit bases are used as given."""
        if self.args.base.strip() == "pow2":
            return DivisibleBase.pow2(max(n.bit_length(), 1))
        return parse_base(self.args.base)

    def cmd_decode(self) -> int:
        if not self.args.values:
            raise UsageError("decode needs at least one integer")
        entries, lines = [], []
        for n in self.args.values:
            expansion = expand(self._base_for(n), n)
            support = expansion.support
            entry = {"n": n, "digits": list(expansion.digits), "support": list(support)}
            line = f"{expansion} supp={support}"
            if support:
                entry.update(alpha_min=support.min, alpha_max=support.max)
                line += f" min={support.min} max={support.max}"
            entries.append(entry)
            lines.append(line)
        self.app.emit({"base": self.args.base, "values": entries}, lines)
        return EXIT_OK
