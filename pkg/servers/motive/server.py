import logging
from typing import Any, Dict, Optional

from mcp.types import Tool

from servers import citations
from servers.tool_server import NO_ARGUMENTS, ToolServer

from .involution import (
    ALPHA,
    DIAGONAL,
    P_MINUS,
    P_PLUS,
    XI,
    ZERO,
    InvolutionAction,
    action_from_valence,
    corollary1_trichotomy,
    gamma_valence_from_projector,
    klein_four_action,
    nikulin_valence_branch,
    projector_valence_check,
    pull,
    push,
    theorem1_decide,
    valence_compose,
)
from .motive import (
    FactStore,
    betti_dims,
    blowup_8,
    chow_kunneth_k3,
    nikulin_motive_comparison,
    surface_labels,
)

logger = logging.getLogger(__name__)


def _check(name: str, passed: bool) -> Dict[str, Any]:
    return {"name": name, "passed": bool(passed)}


class MotiveServer(ToolServer):
    name = "motive"

    def __init__(self, store: Optional[FactStore] = None):
        self.store = store or FactStore()
        super().__init__()

    def setup_tools(self):
        """Register the motive calculus tools"""
        self.register(
            Tool(
                name="decompose",
                description="Refined Chow-Kunneth decomposition of a K3 surface and its blow-up at 8 points",
                inputSchema={
                    "type": "object",
                    "properties": {"rho": {"type": "integer"}},
                    "required": ["rho"],
                    "additionalProperties": False,
                },
            ),
            self.decompose,
        )
        self.register(
            Tool(name="algebra", description="Idempotents and push/pull in the involution algebra", inputSchema=NO_ARGUMENTS),
            self.algebra,
        )
        self.register(
            Tool(
                name="valence",
                description="Valence calculus and the t_2 outcome of an involution",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "v_gamma": {"type": ["string", "integer"], "description": "Valence of the graph, e.g. \"-1\""},
                        "p_g": {"type": "integer"},
                    },
                    "additionalProperties": False,
                },
            ),
            self.valence,
        )
        self.register(
            Tool(
                name="compare",
                description="Compare h(X) and h(Y) for a Nikulin quotient, optionally assuming finite dimensionality",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "rho": {"type": "integer"},
                        "finite_dimensional": {"type": "boolean"},
                        "surface": {"type": "string", "description": "Surface key reported by classify"},
                    },
                    "required": ["rho"],
                    "additionalProperties": False,
                },
            ),
            self.compare,
        )

    def decompose(self, rho: int) -> Dict[str, Any]:
        h_x = chow_kunneth_k3(rho)
        blown_up = blowup_8(h_x)
        dims = betti_dims(h_x)
        blown_dims = betti_dims(blown_up)
        (t2_x,) = h_x.transcendental()
        return {
            "rho": rho,
            "motive": str(h_x),
            "betti": dims,
            "blowup_8": str(blown_up),
            "blowup_betti": blown_dims,
            "checks": [
                _check("Betti total = 24", sum(dims) == 24),
                _check("dim t_2 = 22 - rho", t2_x.dim == 22 - rho),
                _check("blow-up Betti total = 32", sum(blown_dims) == 32),
                _check("t_2 unchanged by blow-up", blown_up.transcendental() == h_x.transcendental()),
            ],
            "citations": [citations.THEOREM_3_DECOMPOSITION, citations.BETTI, citations.THEOREM_3_BLOWUP],
        }

    def algebra(self) -> Dict[str, Any]:
        return {
            "p+": str(P_PLUS),
            "p-": str(P_MINUS),
            "checks": [
                _check("alpha^2 = [xi]", ALPHA * ALPHA == XI),
                _check("p+^2 = p+", P_PLUS * P_PLUS == P_PLUS),
                _check("p-^2 = p-", P_MINUS * P_MINUS == P_MINUS),
                _check("p+ p- = 0", P_PLUS * P_MINUS == ZERO),
                _check("p+ + p- = [xi]", P_PLUS + P_MINUS == XI),
                _check("push [xi] = push alpha = 2", push(XI) == 2 and push(ALPHA) == 2),
                _check("push p- = 0", push(P_MINUS) == 0),
                _check("pull [eta] = [xi] + alpha", pull(1) == XI + ALPHA),
                _check("pull push [xi] = 2[xi] + 2alpha", pull(push(XI)) == 2 * (XI + ALPHA)),
                _check("push pull [eta] = 4", push(pull(1)) == 4),
            ],
            "citations": [citations.PROPOSITION_1_SQUARE, citations.PROPOSITION_1_PUSH, citations.PROPOSITION_1_PULL],
        }

    def valence(self, v_gamma: str = "-1", p_g: int = 1) -> Dict[str, Any]:
        outcome = theorem1_decide(v_gamma, p_g)
        action = action_from_valence(v_gamma)
        v_gamma_nikulin, nikulin_outcome = nikulin_valence_branch()
        triples = [(a, b, c) for a in (-1, 0, 1) for b in (-1, 0, 1) for c in (-1, 0, 1)]
        associative = all(
            valence_compose(valence_compose(a, b), c) == valence_compose(a, valence_compose(b, c)) for a, b, c in triples
        )
        return {
            "v_gamma": str(v_gamma),
            "outcome": outcome.value,
            "action": action.value,
            "summand": corollary1_trichotomy(action).value,
            "nikulin_branch": {"v_gamma": str(v_gamma_nikulin), "outcome": nikulin_outcome.value},
            "klein_four": corollary1_trichotomy(klein_four_action(-1, -1)).value,
            "checks": [
                _check("v(Delta o Delta) = v(Delta)", DIAGONAL.compose(DIAGONAL).valence == DIAGONAL.valence),
                _check("composition associative on {-1,0,1}", associative),
                _check("projector valences 0 and -1", projector_valence_check(0) and projector_valence_check(-1)),
                _check("v(q) = 0 gives v(Gamma) = -1", gamma_valence_from_projector(0) == -1),
                _check(
                    "valence outcome agrees with the trichotomy",
                    (outcome.value == "T2Isomorphism") == (corollary1_trichotomy(action).value == "Isomorphism"),
                ),
                _check("two rational quotients give i = +1", klein_four_action(-1, -1) is InvolutionAction.PLUS_ONE),
            ],
            "citations": [
                citations.THEOREM_1,
                citations.DEFINITION_1_COMPOSE,
                citations.DEFINITION_1_PROJECTOR,
                citations.COROLLARY_1,
                citations.THEOREM_4_PROOF,
                citations.KLEIN_FOUR,
            ],
        }

    def compare(self, rho: int, finite_dimensional: bool = False, surface: Optional[str] = None) -> Dict[str, Any]:
        x, y = surface_labels(surface)
        store = FactStore(self.store.facts)
        if finite_dimensional:
            store.register("FiniteDimensional", (x,), citations.THEOREM_2)
        justified = store.holds("FiniteDimensional", x) or store.t2_isomorphic(x, y)
        result = nikulin_motive_comparison(rho, store, x, y)
        if justified:
            check = _check("h(X) = h(Y)", result["isomorphic"])
        else:
            check = _check("t_2 not identified without finite dimensionality", not result["isomorphic"])
        return {
            **result,
            "surface": x,
            "facts": store.to_json(),
            "checks": [check],
            "citations": [citations.THEOREM_3, citations.THEOREM_3_KIMURA],
        }
