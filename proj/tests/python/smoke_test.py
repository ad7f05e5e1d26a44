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

"""Smoke tests for the python bindings, run by ctest."""

import math
import os

import contraj


def test_trajectory_basics():
    state = contraj.straight_line_state([0, 0, 0], [4, 0, 0])
    traj = contraj.QuinticTrajectory(state, [0, 0, 0], 2.0)
    mid = traj.position(0.5)
    assert abs(mid[0] - 2.0) < 1e-12 and abs(mid[1]) < 1e-12

    velocity = traj.derivative(0.25, 1)
    assert abs(velocity[0] - 2.0) < 1e-12

    assert len(traj.sample(5)) == 6
    assert abs(traj.chord_length(16) - 4.0) < 1e-12

    times = contraj.chord_length_times([[0, 0, 0], [1, 0, 0], [4, 0, 0]])
    assert abs(times[1] - 0.25) < 1e-15


def test_scene_eval():
    scene = contraj.AnalyticScene(
        [contraj.Sphere([0, 0, 0], 1.0)], [-5, -5, -5], [5, 5, 5]
    )
    sample = scene.eval([3, 0, 0])
    assert abs(sample.distance - 2.0) < 1e-12
    assert abs(sample.gradient[0] - 1.0) < 1e-12

    batch = scene.eval_batch([[3, 0, 0], [0, 2, 0]])
    assert abs(batch[1].distance - 1.0) < 1e-12


def test_grid_and_network_providers():
    scene = contraj.AnalyticScene(
        [contraj.Sphere([0, 0, 0], 1.0)], [-2, -2, -2], [2, 2, 2]
    )
    grid = contraj.GridSdf.build(scene, 0.25)
    assert abs(grid.eval([0, 0, 0]).distance - (-1.0)) < 1e-9

    mlp = contraj.SirenMlp.random_init(16, 2, 30.0, 3)
    sample = mlp.eval([0.5, -0.25, 0.1])
    assert math.isfinite(sample.distance)


def test_plan_on_empty_scene():
    scene = contraj.AnalyticScene([], [-50, -50, -50], [50, 50, 50])
    path = [[0.5 * i, 0.0, 1.0] for i in range(13)]
    config = contraj.PlannerConfig()
    window = contraj.LocalWindow(config.window_half_extents, path[0])
    report = contraj.plan_once(path, path[0], window, scene, config)
    assert not report.solver_failed
    end = report.trajectory.position(1.0)
    goal = report.local_goal_world
    gap = sum((end[i] - goal[i]) ** 2 for i in range(3)) ** 0.5
    assert gap < config.goal_tolerance

    mean, minimum = contraj.trajectory_clearance(report.trajectory, scene)
    assert minimum <= mean

    record = contraj.write_trajectory_record(report.trajectory)
    assert record.startswith("trajectory 1")


def test_bundled_scene_loads():
    scenes_dir = os.environ.get("CONTRAJ_SCENES_DIR")
    if not scenes_dir:
        return
    scene = contraj.load_scene(os.path.join(scenes_dir, "scenario1.scene"))
    sample = scene.eval([0.0, 0.3, 1.0])
    assert sample.distance < 0  # inside the bundled obstacle


def test_replan_with_snapshot_swap():
    empty = contraj.AnalyticScene([], [-50, -50, -50], [50, 50, 50])
    revealed = contraj.AnalyticScene(
        [contraj.Sphere([3.0, 0.2, 1.0], 0.5)], [-50, -50, -50], [50, 50, 50]
    )
    path = [[0.5 * i, 0.0, 1.0] for i in range(19)]
    config = contraj.PlannerConfig()
    config.safe_threshold = 0.6
    reports = contraj.replan_loop(
        path, empty, swaps=[(2, revealed)], config=config, steps=4
    )
    assert len(reports) == 4
    _, stale_min = contraj.trajectory_clearance(reports[1].trajectory, revealed)
    _, fresh_min = contraj.trajectory_clearance(reports[2].trajectory, revealed)
    assert fresh_min >= stale_min


def test_fit_tiny_network():
    scene = contraj.AnalyticScene(
        [contraj.Sphere([0, 0, 0], 1.0)], [-2, -2, -2], [2, 2, 2]
    )
    options = contraj.SirenFitOptions()
    options.sample_count = 1000
    options.holdout_count = 100
    options.iterations = 50
    options.hidden_width = 8
    options.hidden_layers = 2
    options.seed = 4
    mlp, rms = contraj.fit_siren(scene, options)
    assert math.isfinite(rms)
    assert math.isfinite(mlp.eval([0.3, 0.1, -0.2]).distance)


def main():
    tests = [
        test_trajectory_basics,
        test_scene_eval,
        test_grid_and_network_providers,
        test_plan_on_empty_scene,
        test_bundled_scene_loads,
        test_replan_with_snapshot_swap,
        test_fit_tiny_network,
    ]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print("python smoke tests passed")


if __name__ == "__main__":
    main()
