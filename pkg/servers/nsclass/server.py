import logging
from typing import Any, Dict

from mcp.types import Tool

from servers import citations
from servers.lattice.lattice import invariants, lattice_to_json
from servers.tool_server import ToolServer

from .nsclass import candidate_summary, elliptic_pencils, ns_candidates

logger = logging.getLogger(__name__)


class NSClassServer(ToolServer):
    name = "ns"

    def setup_tools(self):
        """Register the Neron-Severi classification tools"""
        polarization = {
            "type": "object",
            "properties": {"d": {"type": "integer", "description": "L^2 = 2d"}},
            "required": ["d"],
            "additionalProperties": False,
        }
        self.register(
            Tool(name="classify", description="Candidate Neron-Severi lattices for L^2 = 2d", inputSchema=polarization),
            self.classify,
        )
        self.register(
            Tool(name="pencils", description="Elliptic pencils (L +- v)/2 for L^2 = 4", inputSchema=polarization),
            self.pencils,
        )

    def classify(self, d: int) -> Dict[str, Any]:
        candidates = ns_candidates(d)
        base = invariants(candidates.candidates[0])
        checks = [
            {"name": "Lambda_2d even", "passed": base.even},
            {"name": "|det Lambda_2d| = 512d", "passed": abs(base.det) == 512 * d},
            {"name": "Lambda_2d signature (1,8)", "passed": base.signature == (1, 8)},
            {"name": "candidate count", "passed": len(candidates.candidates) == (2 if d % 2 == 0 else 1)},
        ]
        payload: Dict[str, Any] = {"d": d, "candidate_count": len(candidates.candidates)}
        if d % 2 == 0:
            extension = candidates.extension
            over = invariants(extension.overlattice)
            checks += [
                {"name": "v^2 = -2d (mod 8)", "passed": (extension.glue_norm + 2 * d) % 8 == 0},
                {"name": "overlattice even", "passed": over.even},
                {"name": "|det overlattice| = 128d", "passed": abs(over.det) == 128 * d},
                {"name": "index 2", "passed": extension.index == 2},
                {"name": "E8(-2) primitive", "passed": extension.e8_primitive},
            ]
            payload["glue"] = {
                "coordinates": list(extension.glue),
                "v^2": extension.glue_norm,
                "((L+v)/2)^2": extension.half_norm,
            }
            payload["overlattice"] = lattice_to_json(extension.overlattice)
        payload["candidates"] = candidate_summary(candidates)
        payload["checks"] = checks
        payload["citations"] = [citations.THEOREM_6, citations.THEOREM_6_ODD if d % 2 else citations.THEOREM_6_EVEN]
        if d % 2 == 0:
            payload["citations"] += [citations.THEOREM_6_PRIMITIVE, citations.GLUE_CASE_II]
        return payload

    def pencils(self, d: int = 2) -> Dict[str, Any]:
        result = elliptic_pencils(d)
        return {
            **result,
            "checks": [
                {"name": "E1^2 = 0", "passed": result["E1^2"] == 0},
                {"name": "E2^2 = 0", "passed": result["E2^2"] == 0},
                {"name": "involution exchanges E1 and E2", "passed": result["involution_swaps"]},
            ],
            "citations": [citations.PENCILS_CASE_II],
        }
