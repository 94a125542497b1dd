import math

import numpy as np
import pytest

from flightlab.aviary import Aviary
from flightlab.drones import (
    ConfigError,
    DroneConfig,
    FlightMode,
    PidStage,
    build_drone,
    load_builtin_config,
    quadx_mix,
)
from flightlab.drones.quadx import PITCH_SIGNS, ROLL_SIGNS, YAW_SIGNS
from flightlab.rigidbody import GRAVITY


def steady_rpm(drone, commands):
    for motor, command in zip(drone.motors, commands):
        motor.rpm = command * motor.params.max_rpm


def total_torque(drone):
    torque = np.zeros(3)
    for motor in drone.motors:
        load = motor.loads()
        torque += load.torque + np.cross(load.point, load.force)
    return torque


def total_force(drone):
    return sum((motor.loads().force for motor in drone.motors), np.zeros(3))


class TestQuadXMix:
    def test_pure_thrust_symmetry(self):
        assert np.allclose(quadx_mix([0.0, 0.0, 0.0, 0.37]), 0.37)

    def test_all_zero(self):
        assert np.array_equal(quadx_mix([0.0, 0.0, 0.0, 0.0]), np.zeros(4))

    def test_pure_roll_differential_keeps_total(self):
        out = quadx_mix([0.2, 0.0, 0.0, 0.5])
        left = out[[0, 2]]
        right = out[[1, 3]]
        assert (left > right).all()
        assert np.isclose(out.sum(), 2.0)

    def test_saturation_preserves_torque_ratios(self):
        out = quadx_mix([0.4, 0.2, 0.0, 0.9])
        assert out.max() <= 1.0 and out.min() >= 0.0
        differential = out - 0.9
        # scaled differential stays proportional to the commanded mix
        reference = 0.4 * ROLL_SIGNS + 0.2 * PITCH_SIGNS
        ratio = differential[0] / reference[0]
        assert np.allclose(differential, ratio * reference, atol=1e-12)
        assert 0.0 < ratio < 1.0

    @pytest.mark.parametrize(
        "command,axis,sign",
        [
            ([0.2, 0, 0, 0.5], 0, 1.0),
            ([-0.2, 0, 0, 0.5], 0, -1.0),
            ([0, 0.2, 0, 0.5], 1, 1.0),
            ([0, -0.2, 0, 0.5], 1, -1.0),
            ([0, 0, 0.2, 0.5], 2, 1.0),
            ([0, 0, -0.2, 0.5], 2, -1.0),
        ],
    )
    def test_torque_sign_matches_command_via_motor_loads(self, command, axis, sign):
        drone = build_drone(load_builtin_config("quadx_crazyflie"))
        steady_rpm(drone, quadx_mix(command))
        torque = total_torque(drone)
        assert sign * torque[axis] > 0.0
        others = [i for i in range(3) if i != axis]
        assert abs(torque[axis]) > 10 * max(abs(torque[i]) for i in others)


class TestQuadXControl:
    def make(self, name="quadx_crazyflie"):
        drone = build_drone(load_builtin_config(name))
        drone.set_armed(True)
        return drone

    def test_raw_mode_passthrough(self):
        drone = self.make()
        drone.set_mode(FlightMode.RAW)
        drone.set_setpoint([0.5, 0.5, 0.5, 0.5])
        drone.control_update(1 / 120)
        assert np.allclose(drone._motor_commands, 0.5)

    def test_rate_mode_thrust_passthrough_at_equilibrium(self):
        drone = self.make()
        drone.set_mode(FlightMode.BODY_RATES)
        drone.set_setpoint([0.0, 0.0, 0.0, 0.42])
        drone.control_update(1 / 120)
        assert np.allclose(drone._motor_commands, 0.42, atol=1e-12)

    def test_position_hold_zero_error_zero_torque(self):
        drone = self.make()
        drone.set_mode(FlightMode.POSITION_YAW)
        position = drone.state.position
        drone.set_setpoint([position[0], position[1], position[2], 0.0])
        drone.control_update(1 / 120)
        assert np.abs(drone.last_torque_command).max() < 1e-6
        assert drone.last_thrust_command == pytest.approx(drone.hover_throttle, abs=1e-9)

    def test_climb_setpoint_sign_for_higher_target(self):
        drone = self.make()
        drone.set_mode(FlightMode.POSITION_YAW)
        position = drone.state.position
        drone.set_setpoint([position[0], position[1], position[2] + 1.0, 0.0])
        drone.control_update(1 / 120)
        assert drone.last_velocity_setpoint[2] > 0.0

    def test_zero_error_all_cascade_modes(self):
        # zero error at every stage -> zero corrective torque
        for mode, setpoint in [
            (FlightMode.BODY_RATES, [0, 0, 0, 0.3]),
            (FlightMode.ANGLES_CLIMB, [0, 0, 0, 0]),
            (FlightMode.VELOCITY_YAW_RATE, [0, 0, 0, 0]),
            (FlightMode.VELOCITY_YAW, [0, 0, 0, 0]),
            (FlightMode.POSITION_YAW_RATE, [0, 0, 1, 0]),
            (FlightMode.POSITION_YAW, [0, 0, 1, 0]),
        ]:
            drone = self.make()
            drone.set_mode(mode)
            drone.set_setpoint(setpoint)
            drone.control_update(1 / 120)
            assert np.abs(drone.last_torque_command).max() < 1e-6, mode

    def test_hover_hold_drift_under_10cm_over_10s(self):
        drone = self.make()
        aviary = Aviary([drone], seed=0)
        aviary.set_mode(0, FlightMode.POSITION_YAW)
        aviary.set_setpoint(0, [0.0, 0.0, 1.0, 0.0])
        aviary.set_armed(0, True)
        max_drift = 0.0
        for _ in range(300):
            aviary.step()
            drift = float(np.linalg.norm(drone.state.position - np.array([0.0, 0.0, 1.0])))
            max_drift = max(max_drift, drift)
        assert max_drift < 0.1

    def test_disarmed_outputs_zero(self):
        drone = self.make()
        drone.set_mode(FlightMode.BODY_RATES)
        drone.set_setpoint([0.0, 0.0, 0.0, 0.8])
        drone.set_armed(False)
        drone.control_update(1 / 120)
        assert np.array_equal(drone._motor_commands, np.zeros(4))

    def test_crazyflie_thrust_to_weight(self):
        config = load_builtin_config("quadx_crazyflie")
        max_thrust = sum(p.thrust_coeff * p.max_rpm**2 for p in config.motors)
        assert max_thrust == pytest.approx(8.0 * config.mass * GRAVITY, rel=1e-4)

    def test_generic_preset_mass(self):
        assert load_builtin_config("quadx_generic").mass == 1.0

    def test_all_motors_max_net_upward_force(self):
        config = load_builtin_config("quadx_crazyflie")
        drone = build_drone(config)
        steady_rpm(drone, [1.0, 1.0, 1.0, 1.0])
        lift = total_force(drone)[2] - config.mass * GRAVITY
        expected = (8.0 - 1.0) * config.mass * GRAVITY
        assert lift == pytest.approx(expected, rel=1e-4)

    def test_wrong_motor_count_rejected(self):
        config = load_builtin_config("quadx_crazyflie")
        config.motors = config.motors[:3]
        with pytest.raises(ConfigError, match="4 motors"):
            build_drone(config)

    def test_setpoint_dimension_rejected(self):
        drone = self.make()
        with pytest.raises(ValueError, match="4 entries"):
            drone.set_setpoint([0.0, 0.0, 0.0])


class TestPidStage:
    def test_proportional_only(self):
        pid = PidStage(kp=2.0, limit=10.0)
        assert pid.update(3.0, 0.1)[0] == pytest.approx(6.0)

    def test_integral_accumulates_and_clamps(self):
        pid = PidStage(kp=0.0, ki=1.0, limit=0.5)
        for _ in range(100):
            out = pid.update(1.0, 0.1)
        assert out[0] == pytest.approx(0.5)

    def test_output_limit(self):
        pid = PidStage(kp=100.0, limit=1.0)
        assert pid.update(5.0, 0.1)[0] == 1.0

    def test_derivative_unprimed_first_call(self):
        pid = PidStage(kp=0.0, kd=1.0, limit=10.0)
        assert pid.update(5.0, 0.1)[0] == 0.0
        assert pid.update(6.0, 0.1)[0] == pytest.approx(10.0)  # (6-5)/0.1


class TestFixedwing:
    def test_default_mass_budget(self):
        assert load_builtin_config("fixedwing").mass == 2.35

    def test_max_static_thrust_is_0p8_weight(self):
        config = load_builtin_config("fixedwing")
        motor = config.motors[0]
        assert motor.thrust_coeff * motor.max_rpm**2 == pytest.approx(
            0.8 * 2.35 * GRAVITY, rel=1e-4
        )

    def test_aileron_full_command_reaches_30_degrees(self):
        drone = build_drone(load_builtin_config("fixedwing"))
        aviary = Aviary([drone], seed=0)
        aviary.set_armed(0, True)
        aviary.set_setpoint(0, [1.0, 0.0, 0.0, 0.3])
        for _ in range(30):  # one second >> 5 tau
            aviary.step()
        assert drone.surfaces["aileron_left"].deflection == pytest.approx(
            math.radians(30.0), rel=1e-3
        )
        assert drone.surfaces["aileron_right"].deflection == pytest.approx(
            -math.radians(30.0), rel=1e-3
        )

    def test_missing_surface_rejected(self):
        config = load_builtin_config("fixedwing")
        del config.surfaces["elevator"]
        with pytest.raises(ConfigError, match="elevator"):
            build_drone(config)

    def test_trimmed_flight_pitch_bounded_for_3_seconds(self):
        drone = build_drone(load_builtin_config("fixedwing"))
        drone.state.velocity = np.array([13.5, 0.0, 0.0])
        aviary = Aviary([drone], seed=0)
        aviary.set_armed(0, True)
        aviary.set_setpoint(0, [0.0, 0.0, 0.0, 0.35])
        for _ in range(90):
            aviary.step()
            assert abs(drone.state.angles[1]) < math.radians(45.0)
            assert drone.state.position[2] > drone.collision_radius

    def test_elevator_sign_pitches_nose_up(self):
        # positive elevator must push the nose above the horizon (negative
        # pitch tilts body x upward in this convention)
        drone = build_drone(load_builtin_config("fixedwing"))
        drone.state.velocity = np.array([13.5, 0.0, 0.0])
        aviary = Aviary([drone], seed=0)
        aviary.set_armed(0, True)
        aviary.set_setpoint(0, [0.0, 1.0, 0.0, 0.35])
        for _ in range(15):
            aviary.step()
        nose_z = -math.sin(drone.state.angles[1])
        assert nose_z > 0.05


class TestRocket:
    def make(self, fuel_fraction=1.0):
        drone = build_drone(load_builtin_config("rocket"), fuel_fraction=fuel_fraction)
        drone.set_armed(True)
        return drone

    def test_unlit_booster_consumes_nothing(self):
        drone = self.make()
        aviary = Aviary([drone], seed=0)
        aviary.set_armed(0, True)
        aviary.set_setpoint(0, [0, 0, 0, -1.0, 1.0, 0, 0])  # throttle up, no ignition
        fuel_before = drone.booster.fuel
        for _ in range(30):
            aviary.step()
        assert drone.booster.fuel == fuel_before
        assert not drone.booster.lit

    def test_full_throttle_burn_depletes_monotonically(self):
        drone = self.make(fuel_fraction=0.01)
        drone.set_setpoint([0, 0, 0, 1.0, 1.0, 0, 0])
        drone.control_update(1 / 120)
        fuel = drone.booster.fuel
        for _ in range(100):
            drone.physics_update(1 / 240, np.zeros(1))
            assert drone.booster.fuel < fuel
            fuel = drone.booster.fuel

    def test_burn_time_matches_fuel_over_flow_rate(self):
        drone = self.make(fuel_fraction=0.01)
        drone.set_setpoint([0, 0, 0, 1.0, 1.0, 0, 0])
        drone.control_update(1 / 120)
        dt = 1 / 240
        params = drone.booster.params
        expected = 0.01 * params.total_fuel / params.max_fuel_rate
        burn_ticks = 0
        for _ in range(int(expected / dt) + 100):
            drone.physics_update(dt, np.zeros(1))
            if drone.booster.thrust() > 0.0:
                burn_ticks += 1
        assert abs(burn_ticks * dt - expected) <= dt + 1e-12

    def test_gimbal_rotates_thrust_within_limits(self):
        drone = self.make(fuel_fraction=0.5)
        drone.set_setpoint([0, 0, 0, 1.0, 1.0, 1.0, 0.0])  # full gimbal on axis a
        drone.control_update(1 / 120)
        for _ in range(240):
            drone.physics_update(1 / 240, np.zeros(1))
        limit_a = drone.gimbal.params.limit_a
        thrust_dir = drone.gimbal.rotation() @ np.array([0.0, 0.0, 1.0])
        angle = math.acos(np.clip(thrust_dir @ np.array([0.0, 0.0, 1.0]), -1, 1))
        assert 0.5 * limit_a < angle <= limit_a + 1e-9

    def test_mass_tracks_fuel(self):
        drone = self.make(fuel_fraction=1.0)
        full = drone.mass_properties()
        assert full.mass == pytest.approx(25.6 + 395.7)
        drone.booster.fuel = 0.0
        empty = drone.mass_properties()
        assert empty.mass == pytest.approx(25.6)
        assert (full.inertia > empty.inertia).all()

    def test_missing_booster_rejected(self):
        config = load_builtin_config("rocket")
        config.boosters = []
        with pytest.raises(ConfigError):
            build_drone(config)


class TestDroneConfigRoundTrip:
    @pytest.mark.parametrize(
        "name", ["quadx_crazyflie", "quadx_generic", "fixedwing", "rocket"]
    )
    def test_parse_serialize_parse_identity(self, name, tmp_path):
        first = load_builtin_config(name)
        path = tmp_path / "config.yaml"
        path.write_text(first.dumps(), encoding="utf-8")
        from flightlab.drones import load_drone_config

        second = load_drone_config(path)
        assert first.to_dict() == second.to_dict()
        # serialization is deterministic
        assert first.dumps() == second.dumps()

    def test_validation_names_bad_fields(self):
        config = load_builtin_config("quadx_crazyflie")
        config.mass = -1.0
        config.motors[2].axis = np.array([0.0, 0.0, 2.0])
        problems = config.validate()
        assert any("mass" in p for p in problems)
        assert any("motors[2].axis" in p for p in problems)

    def test_shipped_configs_have_no_violations(self):
        for name in ("quadx_crazyflie", "quadx_generic", "fixedwing", "rocket"):
            assert load_builtin_config(name).validate() == []

    def test_unknown_builtin_rejected(self):
        with pytest.raises(ConfigError, match="available"):
            load_builtin_config("tricopter")

    def test_unknown_kind_rejected(self):
        config = load_builtin_config("rocket")
        config.kind = "blimp"
        with pytest.raises(ConfigError):
            build_drone(config)
