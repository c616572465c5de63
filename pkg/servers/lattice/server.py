import logging
from typing import Any, Dict, Optional

from mcp.types import Tool

from servers.tool_server import ToolServer

from .lattice import (
    Lattice,
    direct_sum,
    discriminant_group,
    invariants,
    lattice_from_json,
    lattice_to_json,
    standard_lattice,
    twist,
)

logger = logging.getLogger(__name__)

LATTICE_SCHEMA = {
    "type": "object",
    "properties": {
        "names": {"type": "array", "items": {"type": "string"}, "description": "Standard lattices summed in order"},
        "two_d": {"type": "integer", "description": "L^2 for RANK1"},
        "twist": {"type": "integer", "description": "Multiply the form by m"},
        "literal": {"type": ["object", "string"], "description": "{\"rank\": n, \"gram\": [[...]]}"},
    },
    "additionalProperties": False,
}


class LatticeServer(ToolServer):
    name = "lattice"

    def setup_tools(self):
        """Register the lattice tools"""
        self.register(
            Tool(name="invariants", description="Determinant, signature, parity of a lattice", inputSchema=LATTICE_SCHEMA),
            self.lattice_invariants,
        )
        self.register(
            Tool(name="discriminant", description="Discriminant group invariant factors", inputSchema=LATTICE_SCHEMA),
            self.lattice_discriminant,
        )

    @staticmethod
    def build(names=None, two_d: Optional[int] = None, twist_by: Optional[int] = None, literal=None) -> Lattice:
        if literal is not None:
            lattice = lattice_from_json(literal)
        else:
            lattice = direct_sum(*(standard_lattice(name, two_d) for name in names or ["U"]))
        if twist_by is not None:
            lattice = twist(lattice, twist_by)
        return lattice

    def lattice_invariants(self, names=None, two_d=None, twist=None, literal=None) -> Dict[str, Any]:
        lattice = self.build(names, two_d, twist, literal)
        result = invariants(lattice)
        logger.info(f"Lattice of rank {result.rank}: det {result.det}, signature {result.signature}")
        return {
            "lattice": lattice_to_json(lattice),
            "invariants": result.model_dump(),
            "checks": [{"name": "nondegenerate", "passed": result.det != 0}],
            "citations": [],
        }

    def lattice_discriminant(self, names=None, two_d=None, twist=None, literal=None) -> Dict[str, Any]:
        lattice = self.build(names, two_d, twist, literal)
        group = discriminant_group(lattice)
        return {
            "lattice": lattice_to_json(lattice),
            "invariant_factors": list(group.invariant_factors),
            "order": group.order,
            "checks": [{"name": "order equals |det|", "passed": group.order == abs(lattice.det)}],
            "citations": [],
        }
