"""JSON Schemas for every machine-readable output of the CLI."""

_comment = {
    "type": "object",
    "required": ["id", "text"],
    "properties": {"id": {"type": "string"}, "text": {"type": "string"}},
}

QUERY = {
    "type": "object",
    "required": ["query", "count", "comments", "suggestions"],
    "properties": {
        "query": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "count": {"type": "integer", "minimum": 0},
        "comments": {"type": "array", "items": _comment},
        "suggestions": {"type": "array", "items": {"type": "string"}},
    },
}

TAG_REPORT = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["tag", "count"],
        "properties": {"tag": {"type": "string"}, "count": {"type": "integer", "minimum": 1}},
    },
}

COMBO_REPORT = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["rank", "tags", "count"],
        "properties": {
            "rank": {"type": "integer", "minimum": 1},
            "tags": {"type": "array", "items": {"type": "string"}, "minItems": 1},
            "count": {"type": "integer", "minimum": 1},
        },
    },
}

ANALYZE_SUMMARY = {
    "type": "object",
    "required": ["comments", "excluded", "groups", "top_groups", "top_tags", "bundle"],
    "properties": {
        "comments": {"type": "integer", "minimum": 0},
        "excluded": {"type": "integer", "minimum": 0},
        "groups": {"type": "integer", "minimum": 0},
        "top_groups": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "size", "tags"],
                "properties": {
                    "id": {"type": "integer"},
                    "size": {"type": "integer", "minimum": 1},
                    "tags": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "top_tags": TAG_REPORT,
        "bundle": {"type": "string"},
    },
}

EMBED_CHECK = {
    "type": "object",
    "required": ["vectors", "vocab_size", "dim"],
    "properties": {
        "vectors": {"type": "string"},
        "vocab_size": {"type": "integer", "minimum": 0},
        "dim": {"type": "integer", "minimum": 1},
    },
}

EMBED_TRAIN = {
    "type": "object",
    "required": ["out", "vocab_size", "dim", "loss_history"],
    "properties": {
        "out": {"type": "string"},
        "vocab_size": {"type": "integer", "minimum": 1},
        "dim": {"type": "integer", "minimum": 1},
        "loss_history": {"type": "array", "items": {"type": ["number", "null"]}},
    },
}

BUNDLE = {
    "type": "object",
    "required": ["format", "tool_version", "created_at", "params", "corpus", "groups", "excluded", "warnings"],
    "properties": {
        "format": {"const": "pulsetags-bundle"},
        "tool_version": {"type": "string"},
        "created_at": {"type": "string"},
        "params": {"type": "object"},
        "corpus": {
            "type": "object",
            "required": ["source", "comments"],
            "properties": {
                "source": {"type": "string"},
                "comments": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["id", "text", "tokens"],
                        "properties": {
                            "id": {"type": "string", "minLength": 1},
                            "text": {"type": "string"},
                            "tokens": {"type": "array", "items": {"type": "string"}},
                        },
                    },
                },
            },
        },
        "groups": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "members", "tags"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "members": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                    "tags": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["term", "score"],
                            "properties": {"term": {"type": "string"}, "score": {"type": "number"}},
                        },
                    },
                },
            },
        },
        "excluded": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "reason"],
                "properties": {"id": {"type": "string"}, "reason": {"type": "string"}},
            },
        },
        "warnings": {"type": "array", "items": {"type": "string"}},
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}
