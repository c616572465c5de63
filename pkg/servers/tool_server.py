import asyncio
import json
import logging
from typing import Any, Callable, Dict, List

from mcp.server import Server
from mcp.types import CallToolRequest, CallToolRequestParams, ListToolsRequest, TextContent, Tool

from workbench.errors import WorkbenchError

logger = logging.getLogger(__name__)

NO_ARGUMENTS = {"type": "object", "properties": {}, "additionalProperties": False}


class ToolServer:
    """An MCP server whose tools are called in process through its request handlers"""

    name = "tool-server"

    def __init__(self):
        self.server = Server(self.name)
        self._tools: Dict[str, Tool] = {}
        self._handlers: Dict[str, Callable[..., Dict[str, Any]]] = {}
        self.setup_tools()

        @self.server.list_tools()
        async def list_tools() -> List[Tool]:
            return list(self._tools.values())

        @self.server.call_tool()
        async def call_tool(name: str, arguments: dict):
            if name not in self._handlers:
                raise ValueError(f"Unknown tool: {name}")
            try:
                logger.debug(f"{self.name}.{name} called with {arguments}")
                payload = {"success": True, **self._handlers[name](**arguments)}
            except WorkbenchError as e:
                logger.error(f"Error in {name}: {e.name}: {e}")
                payload = {"success": False, "error": str(e), "error_type": e.name}
                if getattr(e, "citation", None):
                    payload["citation"] = e.citation
            return [TextContent(type="text", text=json.dumps(payload, default=str))]

    def setup_tools(self):
        raise NotImplementedError

    def register(self, tool: Tool, handler: Callable[..., Dict[str, Any]]):
        self._tools[tool.name] = tool
        self._handlers[tool.name] = handler

    def list_tools(self) -> List[Tool]:
        result = asyncio.run(self.server.request_handlers[ListToolsRequest](ListToolsRequest(method="tools/list")))
        return list(result.root.tools)

    def call_tool(self, name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Run one tool; arguments are checked against its inputSchema before the handler sees them"""
        request = CallToolRequest(method="tools/call", params=CallToolRequestParams(name=name, arguments=arguments))
        result = asyncio.run(self.server.request_handlers[CallToolRequest](request)).root
        text = result.content[0].text if result.content else ""
        if result.isError:
            raise ValueError(text)
        return json.loads(text)
