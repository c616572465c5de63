import logging
from datetime import datetime
from typing import Any, Dict, List

from servers.tool_server import ToolServer

from .errors import error_from_name

logger = logging.getLogger(__name__)


class CheckClient:
    def __init__(self):
        self.servers: Dict[str, ToolServer] = {}
        self.call_log = []

    def start_server(self, server: ToolServer):
        """Register an in-process tool server under its name"""
        self.servers[server.name] = server
        logger.debug(f"Server {server.name} ready with tools {[t.name for t in server.list_tools()]}")

    def call_check(self, server_name: str, tool_name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Call a tool on a server; failures are logged and re-raised as workbench errors"""
        start_time = datetime.now()

        try:
            if server_name not in self.servers:
                raise ValueError(f"Unknown server: {server_name}")
            logger.info(f"Calling {server_name}.{tool_name} with {arguments}")
            response_data = self.servers[server_name].call_tool(tool_name, arguments)
            if not response_data.get("success", False):
                raise error_from_name(
                    response_data.get("error_type", ""), response_data.get("error", ""), response_data.get("citation")
                )

            latency = (datetime.now() - start_time).total_seconds()
            self.call_log.append(
                {
                    "timestamp": start_time.isoformat(),
                    "server": server_name,
                    "tool": tool_name,
                    "arguments": arguments,
                    "latency_seconds": latency,
                    "success": True,
                }
            )
            logger.info(f"{server_name}.{tool_name} completed in {latency:.2f}s")
            return response_data

        except Exception as e:
            latency = (datetime.now() - start_time).total_seconds()
            self.call_log.append(
                {
                    "timestamp": start_time.isoformat(),
                    "server": server_name,
                    "tool": tool_name,
                    "arguments": arguments,
                    "latency_seconds": latency,
                    "success": False,
                    "error": str(e),
                }
            )
            logger.error(f"{server_name}.{tool_name} failed after {latency:.2f}s: {e}")
            raise

    def get_call_log(self) -> List[Dict[str, Any]]:
        """Get the log of all check calls"""
        return self.call_log.copy()
