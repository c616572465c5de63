import logging
from typing import Any, Dict

from mcp.types import Tool

from servers import citations
from servers.tool_server import ToolServer

from .weierstrass import (
    EXPECTED_ROOTS,
    FiberTable,
    WeierstrassModel,
    discriminant,
    double_quotient_recovers,
    fiber_table,
    fibers_swapped,
    fixed_points_of_translation,
    model_summary,
    printed_quotient_b,
    printed_quotient_swaps_fibers,
    quotient_model,
)

logger = logging.getLogger(__name__)


def _table_payload(table: FiberTable) -> Dict[str, Any]:
    return {
        "fibers": [
            {"factor": e.factor.as_strings(), "kodaira": e.kodaira, "root_count": e.root_count} for e in table.entries
        ],
        "I1_roots": table.roots("I1"),
        "I2_roots": table.roots("I2"),
        "euler_sum": table.euler_sum,
        "rho": table.rho,
        "dim_T": table.dim_t,
    }


class EllipticServer(ToolServer):
    name = "elliptic"

    def setup_tools(self):
        """Register the elliptic fibration tools"""
        self.register(
            Tool(
                name="analyze",
                description="Fiber table, Shioda-Tate rank and optional 2-isogeny quotient of y^2 = x(x^2+a(t)x+b(t))",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "a": {"type": "string", "description": "Ascending comma-separated rationals, deg <= 4"},
                        "b": {"type": "string", "description": "Ascending comma-separated rationals, deg 8"},
                        "quotient": {"type": "boolean"},
                    },
                    "required": ["a", "b"],
                    "additionalProperties": False,
                },
            ),
            self.analyze,
        )

    def analyze(self, a: str, b: str, quotient: bool = False) -> Dict[str, Any]:
        model = WeierstrassModel.parse(a, b)
        return self.analyze_model(model, quotient)

    def analyze_model(self, model: WeierstrassModel, quotient: bool = False) -> Dict[str, Any]:
        table = fiber_table(model)
        payload: Dict[str, Any] = {
            "model": model_summary(model),
            "discriminant": discriminant(model).as_strings(),
            **_table_payload(table),
        }
        checks = [
            {"name": "8 I1 roots", "passed": table.roots("I1") == EXPECTED_ROOTS},
            {"name": "8 I2 roots", "passed": table.roots("I2") == EXPECTED_ROOTS},
            {"name": "Euler sum 24", "passed": table.euler_sum == 24},
            {"name": "rho = 10", "passed": table.rho == 10},
            {"name": "dim T = 12", "passed": table.dim_t == 12},
            {"name": "translation fixes 8 points", "passed": fixed_points_of_translation(model) == EXPECTED_ROOTS},
        ]
        cited = [citations.WEIERSTRASS, citations.I1_FIBERS, citations.I2_FIBERS, citations.REMARK_4]
        if quotient:
            image = quotient_model(model)
            image_table = fiber_table(image)
            payload["quotient"] = {"model": model_summary(image), **_table_payload(image_table)}
            payload["printed_quotient"] = {
                "b": printed_quotient_b(model).as_strings(),
                "swaps_fibers": printed_quotient_swaps_fibers(model),
                "note": "the printed coefficient 9a(t)^2 is replaced by a(t)^2",
            }
            checks += [
                {"name": "quotient swaps I1 and I2", "passed": fibers_swapped(model, image)},
                {"name": "quotient Euler sum 24", "passed": image_table.euler_sum == 24},
                {"name": "quotient rho = 10", "passed": image_table.rho == 10},
                {"name": "double quotient recovers model", "passed": double_quotient_recovers(model)},
            ]
            cited += [citations.QUOTIENT_PRINTED, citations.FIXED_NODES]
        payload["checks"] = checks
        payload["citations"] = cited
        return payload
