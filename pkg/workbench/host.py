import logging
import random
from typing import Any, Dict, List, Optional

from servers.classifier.server import ClassifierServer
from servers.elliptic.server import EllipticServer
from servers.elliptic.weierstrass import WeierstrassModel, random_generic_model
from servers.lattice.server import LatticeServer
from servers.motive.motive import FactStore
from servers.motive.server import MotiveServer
from servers.nikulin.server import NikulinServer
from servers.nsclass.server import NSClassServer

from .check_client import CheckClient
from .reports import Report
from .settings import WorkbenchSettings

logger = logging.getLogger(__name__)


class K3Workbench:
    def __init__(self, settings: Optional[WorkbenchSettings] = None):
        self.settings = settings or WorkbenchSettings.from_env()
        self.facts = FactStore()
        self.check_client = CheckClient()
        self.initialize()

    def initialize(self):
        """Start the in-process tool servers; motive and classifier share one fact store"""
        for server in (
            LatticeServer(),
            NikulinServer(),
            NSClassServer(),
            MotiveServer(self.facts),
            EllipticServer(),
            ClassifierServer(self.facts),
        ):
            self.check_client.start_server(server)
        logger.debug(f"K3 workbench initialized with seed {self.settings.seed}")

    def run(self, command: str, server: str, tool: str, **arguments) -> Report:
        payload = self.check_client.call_check(server, tool, arguments)
        return Report.from_payload(command, arguments, payload)

    def lattice(self, names: Optional[List[str]] = None, two_d=None, twist=None, literal=None) -> Report:
        arguments = {"names": names, "two_d": two_d, "twist": twist, "literal": literal}
        arguments = {k: v for k, v in arguments.items() if v is not None}
        invariants = self.run("lattice", "lattice", "invariants", **arguments)
        discriminant = self.run("lattice", "lattice", "discriminant", **arguments)
        return Report.merge("lattice", arguments, {"invariants": invariants, "discriminant": discriminant})

    def nikulin_verify(self) -> Report:
        return self.run("nikulin verify", "nikulin", "verify")

    def ns_classify(self, d: int) -> Report:
        return self.run("ns classify", "ns", "classify", d=d)

    def ns_pencils(self, d: int = 2) -> Report:
        return self.run("ns pencils", "ns", "pencils", d=d)

    def elliptic_analyze(self, a: str, b: str, quotient: bool = False) -> Report:
        return self.run("elliptic analyze", "elliptic", "analyze", a=a, b=b, quotient=quotient)

    def random_models(self, count: Optional[int] = None) -> List[WeierstrassModel]:
        rng = random.Random(self.settings.seed)
        return [random_generic_model(rng) for _ in range(count or self.settings.random_models)]

    def elliptic_sweep(self, count: Optional[int] = None) -> Report:
        """Analyze seeded random generic models with their quotients"""
        parts = {}
        for index, model in enumerate(self.random_models(count)):
            parts[f"model {index}"] = self.elliptic_analyze(
                ",".join(model.a.as_strings()), ",".join(model.b.as_strings()), quotient=True
            )
        return Report.merge("elliptic sweep", {"seed": self.settings.seed, "count": len(parts)}, parts)

    def motive(
        self,
        rho: int,
        v_gamma: str = "-1",
        p_g: int = 1,
        finite_dimensional: bool = False,
        surface: Optional[str] = None,
    ) -> Report:
        """Decomposition, algebra and valence checks; ``surface`` picks up facts from an earlier classify"""
        compare = {"rho": rho, "finite_dimensional": finite_dimensional}
        if surface is not None:
            compare["surface"] = surface
        parts = {
            "decompose": self.run("motive", "motive", "decompose", rho=rho),
            "algebra": self.run("motive", "motive", "algebra"),
            "valence": self.run("motive", "motive", "valence", v_gamma=v_gamma, p_g=p_g),
            "compare": self.run("motive", "motive", "compare", **compare),
        }
        inputs = {"rho": rho, "v_gamma": v_gamma, "p_g": p_g, "finite_dimensional": finite_dimensional}
        if surface is not None:
            inputs["surface"] = surface
        return Report.merge("motive", inputs, parts)

    def classify(self, descriptor: Any) -> Report:
        return self.run("classify", "classifier", "classify", descriptor=descriptor)

    def get_call_log(self) -> List[Dict[str, Any]]:
        return self.check_client.get_call_log()


def run_selftest(settings: Optional[WorkbenchSettings] = None) -> Report:
    """Run every acceptance criterion on a fresh workbench"""
    from .acceptance import run_acceptance

    workbench = K3Workbench(settings)
    report = run_acceptance(workbench)
    logger.info(f"Selftest: {sum(c.passed for c in report.checks)}/{len(report.checks)} checks passed")
    return report
