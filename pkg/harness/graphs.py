"""
Suite pipelines
===============
Each suite is a LangGraph pipeline over its own state.
"""

from __future__ import annotations

import logging
import time

from langgraph.graph import END, StateGraph

from harness.config import ExperimentConfig
from harness.nodes import (
    DrivingNode,
    GenerateNode,
    LawCompareNode,
    LawSampleNode,
    MeasureNode,
    RoundtripNode,
    VerdictNode,
    ViewpointNode,
)
from harness.report import Report, code_version
from harness.state import ConvergenceState, LawState, RoundtripState

logger = logging.getLogger(__name__)


def _stamp(report: Report, started: float) -> Report:
    report.meta.setdefault("version", code_version())
    report.meta["runtime_s"] = round(time.perf_counter() - started, 3)
    return report


class ConvergenceGraph:
    """
    Convergence Suite Graph
    =======================
    Pipeline: Generate → Viewpoints → Measure → Verdict

    Measures every metric between the approximants and the family's limit.
    """

    def __init__(self) -> None:
        self.generator = GenerateNode()
        self.viewpoints = ViewpointNode()
        self.measurer = MeasureNode()
        self.judge = VerdictNode()
        self.graph = None

    def build(self):
        g = StateGraph(ConvergenceState)
        g.add_node("generate", self.generator.generate)
        g.add_node("viewpoints", self.viewpoints.select)
        g.add_node("measure", self.measurer.measure)
        g.add_node("verdict", self.judge.verdict)

        g.set_entry_point("generate")
        g.add_edge("generate", "viewpoints")
        g.add_edge("viewpoints", "measure")
        g.add_edge("measure", "verdict")
        g.add_edge("verdict", END)

        self.graph = g.compile()
        return self.graph

    def run(self, cfg: ExperimentConfig) -> Report:
        if self.graph is None:
            self.build()
        logger.info("convergence suite %s: %s, j=%s", cfg.name, cfg.family.family, cfg.j_range)
        started = time.perf_counter()
        return _stamp(self.graph.invoke({"experiment": cfg})["report"], started)


class RoundtripGraph:
    """
    Roundtrip Suite Graph
    =====================
    Pipeline: Driving → Roundtrip → Verdict

    Drive→trace, drive→trace→unzip and trace→unzip errors over the step ladder.
    """

    def __init__(self) -> None:
        self.driving = DrivingNode()
        self.roundtrip = RoundtripNode()
        self.judge = VerdictNode()
        self.graph = None

    def build(self):
        g = StateGraph(RoundtripState)
        g.add_node("driving", self.driving.prepare)
        g.add_node("roundtrip", self.roundtrip.measure)
        g.add_node("verdict", self.judge.verdict)

        g.set_entry_point("driving")
        g.add_edge("driving", "roundtrip")
        g.add_edge("roundtrip", "verdict")
        g.add_edge("verdict", END)

        self.graph = g.compile()
        return self.graph

    def run(self, cfg: ExperimentConfig) -> Report:
        if self.graph is None:
            self.build()
        logger.info("roundtrip suite %s: %s driving, n=%s", cfg.name, cfg.driving, cfg.n_values)
        started = time.perf_counter()
        return _stamp(self.graph.invoke({"experiment": cfg})["report"], started)


class LawGraph:
    """
    Law Suite Graph
    ===============
    Pipeline: Sample → Compare

    Kolmogorov–Smirnov comparison of viewpoint driving marginals.
    """

    def __init__(self) -> None:
        self.sampler = LawSampleNode()
        self.comparer = LawCompareNode()
        self.graph = None

    def build(self):
        g = StateGraph(LawState)
        g.add_node("sample", self.sampler.sample)
        g.add_node("compare", self.comparer.compare)

        g.set_entry_point("sample")
        g.add_edge("sample", "compare")
        g.add_edge("compare", END)

        self.graph = g.compile()
        return self.graph

    def run(self, cfg: ExperimentConfig) -> Report:
        if self.graph is None:
            self.build()
        logger.info("law suite %s: kappa=%.3g, m=%d, %s", cfg.name, cfg.kappa, cfg.m, cfg.comparison)
        started = time.perf_counter()
        return _stamp(self.graph.invoke({"experiment": cfg})["report"], started)


def run_convergence_suite(cfg: ExperimentConfig) -> Report:
    return ConvergenceGraph().run(cfg)


def run_roundtrip_suite(cfg: ExperimentConfig) -> Report:
    return RoundtripGraph().run(cfg)


def run_law_convergence(cfg: ExperimentConfig) -> Report:
    return LawGraph().run(cfg)


def run_suite(cfg: ExperimentConfig) -> Report:
    """Dispatch on ``cfg.suite``."""
    return {
        "convergence": run_convergence_suite,
        "roundtrip": run_roundtrip_suite,
        "law": run_law_convergence,
    }[cfg.suite](cfg)
