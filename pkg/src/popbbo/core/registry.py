"""Registry of all optimizer variants, their families, and scale flags."""

import enum
import importlib
from dataclasses import dataclass

from .errors import UnknownVariant
from .optimizer import Optimizer
from .problem import Problem, RunOptions


class Family(enum.Enum):
    """The thirteen optimization algorithm classes the library is organized by."""

    ES = "Evolution Strategies"
    NES = "Natural Evolution Strategies"
    EDA = "Estimation of Distribution Algorithms"
    CEM = "Cross-Entropy Methods"
    DE = "Differential Evolution"
    PSO = "Particle Swarm Optimizers"
    CC = "Cooperative Coevolution"
    SA = "Simulated Annealing"
    GA = "Genetic Algorithms"
    EP = "Evolutionary Programming"
    DS = "Pattern/Direct Search"
    RS = "Random Search"
    BO = "Bayesian Optimization"


@dataclass(frozen=True)
class OptimizerHandle:
    """Registry entry: variant name, family, and the large-scale design flag."""

    variant_id: str
    family_id: Family
    is_large_scale: bool
    module: str
    class_name: str

    def load(self):
        mod = importlib.import_module(self.module)
        return getattr(mod, self.class_name)


def _entry(name, family, large_scale, module, cls):
    return OptimizerHandle(name, family, large_scale, module, cls)


_VARIANTS = [
    # evolution strategies
    _entry("RES", Family.ES, False, "popbbo.es", "RES"),
    _entry("CSAES", Family.ES, False, "popbbo.es", "CSAES"),
    _entry("CMAES", Family.ES, False, "popbbo.es", "CMAES"),
    _entry("MAES", Family.ES, False, "popbbo.es", "MAES"),
    _entry("LMMAES", Family.ES, True, "popbbo.es", "LMMAES"),
    _entry("LMCMA", Family.ES, True, "popbbo.es", "LMCMA"),
    _entry("R1ES", Family.ES, True, "popbbo.es", "R1ES"),
    _entry("RMES", Family.ES, True, "popbbo.es", "RMES"),
    _entry("SEPCMAES", Family.ES, True, "popbbo.es", "SEPCMAES"),
    # natural evolution strategies
    _entry("SNES", Family.NES, True, "popbbo.nes", "SNES"),
    _entry("XNES", Family.NES, False, "popbbo.nes", "XNES"),
    _entry("R1NES", Family.NES, True, "popbbo.nes", "R1NES"),
    # particle swarms and cooperative coevolution
    _entry("SPSO", Family.PSO, False, "popbbo.swarm", "SPSO"),
    _entry("SPSOL", Family.PSO, False, "popbbo.swarm", "SPSOL"),
    _entry("CLPSO", Family.PSO, True, "popbbo.swarm", "CLPSO"),
    _entry("CPSO", Family.PSO, True, "popbbo.swarm", "CPSO"),
    _entry("COCMA", Family.CC, True, "popbbo.swarm", "COCMA"),
    # differential evolution
    _entry("CDE", Family.DE, False, "popbbo.de", "CDE"),
    _entry("JADE", Family.DE, False, "popbbo.de", "JADE"),
    # estimation of distribution / cross-entropy
    _entry("UMDA", Family.EDA, False, "popbbo.eda_cem", "UMDA"),
    _entry("EMNA", Family.EDA, False, "popbbo.eda_cem", "EMNA"),
    _entry("RPEDA", Family.EDA, True, "popbbo.eda_cem", "RPEDA"),
    _entry("SCEM", Family.CEM, False, "popbbo.eda_cem", "SCEM"),
    # one representative per remaining family
    _entry("CSA", Family.SA, False, "popbbo.classics", "CSA"),
    _entry("GENITOR", Family.GA, False, "popbbo.classics", "GENITOR"),
    _entry("CEP", Family.EP, False, "popbbo.classics", "CEP"),
    _entry("NM", Family.DS, False, "popbbo.classics", "NM"),
    _entry("HJ", Family.DS, False, "popbbo.classics", "HJ"),
    _entry("PRS", Family.RS, False, "popbbo.classics", "PRS"),
    _entry("GS", Family.RS, False, "popbbo.classics", "GS"),
]

_REGISTRY = {handle.variant_id: handle for handle in _VARIANTS}


def list_variants() -> list[str]:
    """All registered optimizer names."""
    return [handle.variant_id for handle in _VARIANTS]


def get_handle(variant_id: str) -> OptimizerHandle:
    """Case-insensitive registry lookup."""
    try:
        key = str(variant_id).upper()
    except Exception as exc:  # pragma: no cover
        raise UnknownVariant(f"bad variant id: {variant_id!r}") from exc
    handle = _REGISTRY.get(key)
    if handle is None:
        raise UnknownVariant(
            f"unknown optimizer {variant_id!r}; known: {', '.join(list_variants())}"
        )
    return handle


def create_optimizer(variant_id, problem: Problem, options) -> Optimizer:
    """Instantiate the named optimizer with validated options."""
    handle = get_handle(variant_id)
    cls = handle.load()
    return cls(problem, RunOptions.coerce(options))
