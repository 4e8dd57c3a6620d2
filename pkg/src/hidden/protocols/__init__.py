from .aggp import AggPDataCollector, AggPSensor, aggp_round, aggp_setup, tree_aggregate
from .eg import EGDataCollector, EGSensor, eg_round
from .scenario import ScenarioConfig, attack, run_scenario
from .schedule import WatermarkSchedule, watermark_at
from .transcript import RoundTranscript, Verdict

__all__ = [
    "AggPDataCollector", "AggPSensor", "aggp_round", "aggp_setup", "tree_aggregate",
    "EGDataCollector", "EGSensor", "eg_round",
    "ScenarioConfig", "attack", "run_scenario",
    "WatermarkSchedule", "watermark_at",
    "RoundTranscript", "Verdict",
]
