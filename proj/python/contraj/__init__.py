# Copyright 2026 Contraj Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Continuous local trajectory optimization over signed distance fields."""

from contraj._core import (
    AnalyticScene,
    Box,
    Capsule,
    CostBreakdown,
    GridSdf,
    LocalWindow,
    PlanReport,
    PlannerConfig,
    QuinticTrajectory,
    SdfProvider,
    SdfSample,
    SirenFitOptions,
    SirenMlp,
    SolveReport,
    Sphere,
    chord_length_times,
    fit_siren,
    load_scene,
    plan_once,
    replan_loop,
    save_scene,
    select_local_goal,
    straight_line_state,
    total_cost,
    trajectory_clearance,
    write_trajectory_record,
    write_trajectory_table,
)

__all__ = [
    "AnalyticScene",
    "Box",
    "Capsule",
    "CostBreakdown",
    "GridSdf",
    "LocalWindow",
    "PlanReport",
    "PlannerConfig",
    "QuinticTrajectory",
    "SdfProvider",
    "SdfSample",
    "SirenFitOptions",
    "SirenMlp",
    "SolveReport",
    "Sphere",
    "chord_length_times",
    "fit_siren",
    "load_scene",
    "plan_once",
    "replan_loop",
    "save_scene",
    "select_local_goal",
    "straight_line_state",
    "total_cost",
    "trajectory_clearance",
    "write_trajectory_record",
    "write_trajectory_table",
]
