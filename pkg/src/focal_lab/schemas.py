"""JSON Schemas for the CLI's machine-readable outputs.

Plain dicts, so the package does not need jsonschema at runtime; the test
suite validates emitted documents against them.
"""

_bound_value = {
    "type": "object",
    "required": ["kind", "value", "decimal", "floor", "valid", "reason", "provenance"],
    "properties": {
        "kind": {"enum": ["upper", "lower", "exact", "limit"]},
        "value": {"type": ["string", "null"], "pattern": r"^-?\d+(/\d+)?$"},
        "decimal": {"type": ["number", "null"]},
        "floor": {"type": ["integer", "null"]},
        "valid": {"type": "boolean"},
        "reason": {"type": "string"},
        "provenance": {"enum": ["exact", "conjectural"]},
    },
}

BOUNDS = {
    "type": "object",
    "required": ["schema", "side", "params", "t", "lambda", "m", "mRegime", "mConjectural", "denominator", "values"],
    "properties": {
        "schema": {"const": "focal-lab/bounds/v1"},
        "side": {"enum": ["hypergraph", "code"]},
        "params": {"type": "object", "required": ["r", "n"]},
        "t": {"type": "integer"},
        "lambda": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 0},
        "mRegime": {"type": "string"},
        "mConjectural": {"type": "boolean"},
        "denominator": {"type": "integer"},
        "values": {"type": "object", "additionalProperties": _bound_value},
    },
}

MNUM = {
    "type": "object",
    "required": ["schema", "n", "s", "lambda", "value", "regime", "conjectural", "franklBound", "hypothesisHolds"],
    "properties": {
        "schema": {"const": "focal-lab/mnum/v1"},
        "value": {"type": "integer", "minimum": 0},
        "exactValue": {"type": ["integer", "null"]},
        "formulaValue": {"type": ["integer", "null"]},
        "conjectural": {"type": "boolean"},
        "extremalFamily": {"type": ["array", "null"]},
    },
}

_witness = {
    "type": "object",
    "required": ["r", "focus", "members"],
}

VERIFY = {
    "type": "object",
    "required": ["schema", "kind", "r", "size", "focalFree", "witness"],
    "properties": {
        "schema": {"const": "focal-lab/verify/v1"},
        "kind": {"enum": ["family", "code"]},
        "focalFree": {"type": "boolean"},
        "witness": {"oneOf": [{"type": "null"}, _witness]},
    },
}

SEARCH = {
    "type": "object",
    "required": ["schema", "params", "optimum", "complete", "proofOfMaximality", "closedBy", "nodesExplored",
                 "extremal", "seedSource", "seedSize", "upperCap"],
    "properties": {
        "schema": {"const": "focal-lab/search/v1"},
        "optimum": {"type": "integer", "minimum": 0},
        "complete": {"type": "boolean"},
        "proofOfMaximality": {
            "type": "string",
            "pattern": r"^(Exhaustive|BranchAndBoundComplete|Timeout\(\d+\))$",
        },
        "nodesExplored": {"type": "integer", "minimum": 0},
        "extremal": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
}

CONSTRUCT = {
    "type": "object",
    "required": ["schema", "construction", "params", "size", "seeds", "verification", "items", "files"],
    "properties": {
        "schema": {"const": "focal-lab/construct/v1"},
        "construction": {"enum": ["oa", "code", "design", "packing", "family", "code-packing"]},
        "size": {"type": "integer", "minimum": 0},
        "seeds": {"type": "array", "items": {"type": "integer"}},
        "items": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
}

MANIFEST = {
    "type": "object",
    "required": ["schema", "command", "params", "seeds", "version", "verification", "wallTime", "threads",
                 "artifacts"],
    "properties": {
        "schema": {"const": "focal-lab/manifest/v1"},
        "command": {"type": "array", "items": {"type": "string"}},
        "seeds": {"type": "array", "items": {"type": "integer"}},
        "version": {"type": "string"},
        "wallTime": {"type": "number", "minimum": 0},
        "threads": {"type": "integer", "minimum": 1},
        "artifacts": {"type": "array", "items": {"type": "string"}},
    },
}

REPRO = {
    "type": "object",
    "required": ["schema", "suite", "passed", "criteria"],
    "properties": {
        "schema": {"const": "focal-lab/repro/v1"},
        "passed": {"type": "boolean"},
        "criteria": {
            "type": "array",
            "items": {"type": "object", "required": ["number", "name", "passed", "inTime", "elapsed", "limit"]},
        },
    },
}

BY_KIND = {
    "bounds": BOUNDS, "mnum": MNUM, "verify": VERIFY, "search": SEARCH,
    "construct": CONSTRUCT, "manifest": MANIFEST, "repro": REPRO,
}
