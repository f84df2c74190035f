"""Output records and their delimited serializations.

Every record carries a schema name and a flat payload whose key order is
fixed by the schema, so identical inputs always serialize to identical
bytes.  Rationals are rendered ``num/den`` (reduced) and parse back
exactly; booleans render as ``true``/``false``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

SCHEMA_KEYS = {
    "census": ("schema", "group", "prime", "mpr_p", "m_p", "class_index",
               "rep", "class_size", "nc_index", "mpr_star", "generator_orbits",
               "source"),
    "bound": ("schema", "label", "context", "lhs", "rhs", "relation", "holds"),
    "stewart": ("schema", "base", "n", "phi_value", "lhs", "rhs", "holds",
                "marginal"),
    "ppd": ("schema", "base", "exponent", "primitive_primes", "largest",
            "exception"),
    # extensions beyond the four core schemas, same conventions
    "cyclotomic": ("schema", "n", "degree", "coefficients"),
    "factorization": ("schema", "value", "factors"),
}


@dataclass(frozen=True)
class BoundReport:
    """One verified inequality (or equality) instance.

    ``relation`` states the comparison direction ("ge", "le", "eq");
    ``holds`` records whether lhs relation rhs is true.
    """

    label: str
    context: str
    lhs: Fraction
    rhs: Fraction
    relation: str
    holds: bool

    def to_record(self) -> "OutputRecord":
        return OutputRecord("bound", {
            "label": self.label,
            "context": self.context,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "holds": self.holds,
        })


@dataclass(frozen=True)
class OutputRecord:
    schema: str
    payload: dict

    def __post_init__(self):
        keys = SCHEMA_KEYS.get(self.schema)
        if keys is None:
            raise DomainError(f"unknown record schema {self.schema!r}")
        expected = set(keys) - {"schema"}
        if set(self.payload) != expected:
            missing = expected - set(self.payload)
            extra = set(self.payload) - expected
            raise DomainError(
                f"schema {self.schema!r} payload mismatch "
                f"(missing {sorted(missing)}, extra {sorted(extra)})"
            )

    def ordered_items(self):
        for key in SCHEMA_KEYS[self.schema]:
            yield key, (self.schema if key == "schema" else self.payload[key])


def render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    if v is None:
        return "none"
    if isinstance(v, float):
        return repr(v)  # shortest round-tripping form
    return str(v)


def emit(records, fmt: str = "jsonl") -> bytes:
    """Serialize records to CSV or JSONL bytes.

    CSV requires all records to share one schema and starts with a header
    row; JSONL accepts mixed schemas, one object per line, keys in the
    schema's documented order.
    """
    records = list(records)
    if fmt == "csv":
        if not records:
            return b""
        schemas = {r.schema for r in records}
        if len(schemas) > 1:
            raise DomainError(f"CSV output needs a single schema, got {sorted(schemas)}")
        keys = SCHEMA_KEYS[records[0].schema]
        lines = [",".join(keys)]
        for r in records:
            lines.append(",".join(render_value(v) for _, v in r.ordered_items()))
        return ("\n".join(lines) + "\n").encode("ascii")
    if fmt == "jsonl":
        lines = []
        for r in records:
            obj = {}
            for k, v in r.ordered_items():
                if isinstance(v, Fraction):
                    v = render_value(v)
                elif v is None:
                    v = "none"
                obj[k] = v
            lines.append(json.dumps(obj, separators=(",", ":")))
        return ("\n".join(lines) + ("\n" if lines else "")).encode("ascii")
    raise DomainError(f"unknown output format {fmt!r}")
