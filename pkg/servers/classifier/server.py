import logging
from typing import Any, Dict, Optional

from mcp.types import Tool

from servers.motive.motive import FactStore, surface_labels
from servers.tool_server import ToolServer

from .descriptor import load_descriptor
from .engine import classify, explain, feed_store

logger = logging.getLogger(__name__)


class ClassifierServer(ToolServer):
    name = "classifier"

    def __init__(self, store: Optional[FactStore] = None):
        self.store = store or FactStore()
        super().__init__()

    def setup_tools(self):
        """Register the rule engine"""
        self.register(
            Tool(
                name="classify",
                description="Derive motive-level conclusions for a surface descriptor",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "descriptor": {
                            "type": ["object", "string"],
                            "description": "kind, rho, pg, q, features, assumptions",
                        }
                    },
                    "required": ["descriptor"],
                    "additionalProperties": False,
                },
            ),
            self.classify,
        )

    def classify(self, descriptor) -> Dict[str, Any]:
        parsed = load_descriptor(descriptor)
        derivation = classify(parsed)
        key = parsed.key()
        feed_store(derivation, self.store, *surface_labels(key))
        cited = []
        for fact in derivation.facts:
            if fact.citation not in cited:
                cited.append(fact.citation)
        known = {f.ref for f in derivation.facts}
        acyclic = all(
            p in known or not p.startswith("R") for fact in derivation.facts for p in fact.premises
        )
        logger.info(f"{parsed.kind}: {len(derivation.facts)} fact(s) derived")
        return {
            "descriptor": parsed.model_dump(mode="json"),
            "surface": key,
            "derived": derivation.conclusions(),
            "facts": [f.model_dump(mode="json") for f in derivation.facts],
            "explanation": explain(derivation),
            "checks": [{"name": "provenance acyclic", "passed": acyclic}],
            "citations": cited,
        }
