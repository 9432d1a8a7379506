"""Tool descriptors and the scalar-subset schema validation they rely on.

Tool schemas are deliberately small: flat property maps whose types are
string, integer or boolean, optionally restricted by an enum, plus a
required list. Extra arguments are ignored, matching plain JSON Schema
semantics for schemas that do not constrain additional properties.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

_SCALAR_TYPES = ("string", "integer", "boolean")


@dataclass
class ToolDescriptor:
    name: str
    description: str
    input_schema: dict[str, Any]
    output_schema: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "inputSchema": self.input_schema,
            "outputSchema": self.output_schema,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ToolDescriptor":
        return cls(name=data["name"], description=data.get("description", ""),
                   input_schema=data.get("inputSchema", {}),
                   output_schema=data.get("outputSchema", {}))

    def validate(self) -> None:
        for label, schema in (("inputSchema", self.input_schema),
                              ("outputSchema", self.output_schema)):
            errors = check_schema(schema)
            if errors:
                raise ValueError(f"{self.name}.{label}: " + "; ".join(errors))


def check_schema(schema: dict[str, Any]) -> list[str]:
    """Structural check of a schema object; returns a list of defects."""
    errors = []
    properties = schema.get("properties")
    if not isinstance(properties, dict):
        return ["properties must be an object"]
    for name, spec in properties.items():
        if not isinstance(spec, dict):
            errors.append(f"property {name} must be an object")
            continue
        if spec.get("type") not in _SCALAR_TYPES:
            errors.append(f"property {name} has non-scalar type {spec.get('type')!r}")
        if "enum" in spec and (not isinstance(spec["enum"], list) or not spec["enum"]):
            errors.append(f"property {name} has an invalid enum")
    required = schema.get("required", [])
    if not isinstance(required, list):
        errors.append("required must be a list")
    else:
        for name in required:
            if name not in properties:
                errors.append(f"required field {name} is not in properties")
    return errors


def validate_arguments(schema: dict[str, Any], arguments: Any) -> list[str]:
    """Validate a tools/call argument object; returns human-readable defects."""
    if not isinstance(arguments, dict):
        return ["arguments must be an object"]
    violations = []
    properties = schema.get("properties", {})
    for name in schema.get("required", []):
        if name not in arguments:
            violations.append(f"missing required field {name}")
    for name, value in arguments.items():
        spec = properties.get(name)
        if spec is None:
            continue  # extra arguments are ignored
        expected = spec.get("type")
        if expected == "string" and not isinstance(value, str):
            violations.append(f"field {name} must be a string")
        elif expected == "integer" and (isinstance(value, bool) or not isinstance(value, int)):
            violations.append(f"field {name} must be an integer")
        elif expected == "boolean" and not isinstance(value, bool):
            violations.append(f"field {name} must be a boolean")
        elif "enum" in spec and value not in spec["enum"]:
            allowed = ", ".join(str(v) for v in spec["enum"])
            violations.append(f"field {name} must be one of: {allowed}")
    return violations


@dataclass
class ToolResult:
    """Structured outcome of one tool invocation."""

    structured_content: dict[str, Any] = field(default_factory=dict)
    is_error: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {"structuredContent": self.structured_content, "isError": self.is_error}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ToolResult":
        return cls(structured_content=data.get("structuredContent", {}),
                   is_error=bool(data.get("isError", False)))

    @property
    def result_text(self) -> str:
        return str(self.structured_content.get("result", ""))
