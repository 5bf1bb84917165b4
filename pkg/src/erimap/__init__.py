"""Spatial Bayesian belief mapping for emergency response observations."""

from .bn import (
    CptTable,
    Distribution,
    NetworkSpec,
    NodeSpec,
    ValidatedNetwork,
    build_network,
)
from .evidence import (
    Evidence,
    Hard,
    RegretPolicy,
    ReliabilityScore,
    Soft,
    Virtual,
    classify,
    soft_to_virtual,
    unambiguous_to_likelihood,
)
from .hazard import (
    CHLORINE,
    Exposure,
    ProbitParams,
    dose,
    exposure_to_soft_evidence,
    probit_to_probability,
    probit_value,
)
from .observations import (
    LikelihoodRatio,
    Observation,
    ProbRatio,
    UnambiguousState,
    parse_observation,
)
from .pipeline import BeliefSnapshot, Engine, ReplayResult, timeline_to_csv
from .spatial import (
    Area,
    AreaState,
    ThreatZone,
    beliefs_to_geojson,
    instantiate_areas,
    layer_to_evidence,
    max_zone_overlap,
)
from .bundle import ScenarioBundle, load_bundle, load_script

__all__ = [
    "Area",
    "AreaState",
    "BeliefSnapshot",
    "CHLORINE",
    "CptTable",
    "Distribution",
    "Engine",
    "Evidence",
    "Exposure",
    "Hard",
    "LikelihoodRatio",
    "NetworkSpec",
    "NodeSpec",
    "Observation",
    "ProbRatio",
    "ProbitParams",
    "RegretPolicy",
    "ReliabilityScore",
    "ReplayResult",
    "ScenarioBundle",
    "Soft",
    "ThreatZone",
    "UnambiguousState",
    "ValidatedNetwork",
    "Virtual",
    "beliefs_to_geojson",
    "build_network",
    "classify",
    "dose",
    "exposure_to_soft_evidence",
    "instantiate_areas",
    "layer_to_evidence",
    "load_bundle",
    "load_script",
    "max_zone_overlap",
    "parse_observation",
    "probit_to_probability",
    "probit_value",
    "soft_to_virtual",
    "timeline_to_csv",
    "unambiguous_to_likelihood",
]
