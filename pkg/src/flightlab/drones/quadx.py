"""Quadrotor in the X configuration with a cascaded PID mode stack.

Motor layout (top view, x forward, y left):

      0 (+x +y)   1 (+x -y)
             \\   //
              (x)
             //   \\
      2 (-x +y)   3 (-x -y)

Adjacent motors spin in opposite directions; the mix signs below follow
from torque = r x F plus the reaction torque of each propeller.
"""

from __future__ import annotations

import math

import numpy as np

from ..frames import wrap_angle
from .base import ConfigError, Drone, FlightMode, PidStage

ROLL_SIGNS = np.array([1.0, -1.0, 1.0, -1.0])     # +y motors raise for +roll torque
PITCH_SIGNS = np.array([-1.0, -1.0, 1.0, 1.0])    # -x motors raise for +pitch torque
YAW_SIGNS = np.array([-1.0, 1.0, 1.0, -1.0])      # matches the spin directions

EXPECTED_SPINS = (-1, 1, 1, -1)


def quadx_mix(command) -> np.ndarray:
    """Map normalized [roll, pitch, yaw, thrust] to four throttles in [0, 1].

    On saturation the differential (torque) part is scaled down by one
    common factor so the commanded torque ratios are preserved; the
    collective thrust is clamped first.
    """
    roll, pitch, yaw, thrust = (float(v) for v in command)
    base = min(max(thrust, 0.0), 1.0)
    differential = roll * ROLL_SIGNS + pitch * PITCH_SIGNS + yaw * YAW_SIGNS
    scale = 1.0
    for d in differential:
        if d > 1e-12:
            scale = min(scale, (1.0 - base) / d)
        elif d < -1e-12:
            scale = min(scale, base / -d)
    scale = max(scale, 0.0)
    return np.clip(base + scale * differential, 0.0, 1.0)


class QuadXDrone(Drone):
    """Four-motor vehicle; control modes -1 through 5."""

    kind = "quadx"
    setpoint_size = 4
    supported_modes = tuple(FlightMode)
    default_mode = FlightMode.BODY_RATES

    def __init__(self, config, physics_hz: float, control_hz: float):
        from ..components import Motor  # local import to avoid a cycle at module load

        super().__init__(config, physics_hz, control_hz)
        if len(config.motors) != 4:
            raise ConfigError(f"quadx needs exactly 4 motors, got {len(config.motors)}")
        for i, params in enumerate(config.motors):
            x, y = params.position[0], params.position[1]
            want_x = 1.0 if PITCH_SIGNS[i] < 0 else -1.0
            want_y = ROLL_SIGNS[i]
            if math.copysign(1.0, x) != want_x or math.copysign(1.0, y) != want_y:
                raise ConfigError(
                    f"motors[{i}].position: expected quadrant ({want_x:+.0f}x, {want_y:+.0f}y), "
                    f"got {params.position.tolist()}"
                )
            if params.spin != EXPECTED_SPINS[i]:
                raise ConfigError(
                    f"motors[{i}].spin: expected {EXPECTED_SPINS[i]} for this arm, got {params.spin}"
                )
        self.motors = [Motor(p, physics_hz) for p in config.motors]

        # throttle that balances weight at steady state (thrust ~ throttle^2)
        total_gain = sum(p.thrust_coeff * p.max_rpm**2 for p in config.motors)
        self.hover_throttle = math.sqrt(config.mass * 9.81 / total_gain)

        gains = config.controller
        limits = gains.get("limits", {})
        self.vel_xy_limit = float(limits.get("vel_xy", 5.0))
        self.vel_z_limit = float(limits.get("vel_z", 3.0))
        tilt_limit = float(limits.get("tilt", 0.45))
        rate_limit = float(limits.get("rate", 8.0))
        yaw_rate_limit = float(limits.get("yaw_rate", 4.0))
        torque_limit = float(limits.get("torque", 0.5))

        self.position_p = float(gains.get("position_p", 1.0))
        self.angle_p = float(gains.get("angle_p", 8.0))
        self.yaw_p = float(gains.get("yaw_p", 3.0))
        self._velocity_pid = PidStage(
            kp=gains.get("velocity_p", 0.12),
            ki=gains.get("velocity_i", 0.0),
            limit=tilt_limit,
            size=2,
        )
        self._climb_pid = PidStage(
            kp=gains.get("climb_p", 0.1),
            ki=gains.get("climb_i", 0.0),
            limit=0.5,
        )
        self._rate_pid = PidStage(
            kp=[gains.get("rate_p", 0.01)] * 2 + [gains.get("yaw_rate_p", 0.02)],
            ki=[gains.get("rate_i", 0.0)] * 2 + [0.0],
            kd=[gains.get("rate_d", 0.0)] * 2 + [0.0],
            limit=torque_limit,
            size=3,
        )
        self._rate_limits = np.array([rate_limit, rate_limit, yaw_rate_limit])
        self._motor_commands = np.zeros(4)

        # cascade intermediates, kept for tests and debugging
        self.last_velocity_setpoint = np.zeros(3)
        self.last_angle_setpoint = np.zeros(2)
        self.last_rate_setpoint = np.zeros(3)
        self.last_torque_command = np.zeros(3)
        self.last_thrust_command = 0.0

        self._spin_up()

    def _spin_up(self):
        # quads spawn airborne: start the motors at hover RPM so the first
        # control update is not fighting a free fall
        for motor in self.motors:
            motor.reset(rpm=self.hover_throttle * motor.params.max_rpm)

    def reset(self):
        super().reset()
        self.mode = FlightMode.BODY_RATES
        self._motor_commands = np.zeros(4)
        for pid in (self._velocity_pid, self._climb_pid, self._rate_pid):
            pid.reset()
        self._spin_up()

    @property
    def noise_count(self) -> int:
        return 4

    def set_mode(self, mode):
        changed = FlightMode(mode) != self.mode
        super().set_mode(mode)
        if changed:
            for pid in (self._velocity_pid, self._climb_pid, self._rate_pid):
                pid.reset()

    def control_update(self, dt: float):
        if not self.armed:
            self._motor_commands = np.zeros(4)
            return
        mode = self.mode
        setpoint = self.setpoint
        if mode == FlightMode.RAW:
            self._motor_commands = np.clip(setpoint, 0.0, 1.0)
            return

        state = self.state
        angles = state.angles
        if mode == FlightMode.BODY_RATES:
            rate_setpoint = np.clip(setpoint[:3], -self._rate_limits, self._rate_limits)
            thrust = min(max(float(setpoint[3]), 0.0), 1.0)
        elif mode == FlightMode.ANGLES_CLIMB:
            rate_setpoint = self._angle_loop(setpoint[0], setpoint[1], yaw_angle=setpoint[2])
            thrust = self._climb_loop(float(setpoint[3]), dt)
        else:
            if mode in (FlightMode.POSITION_YAW, FlightMode.POSITION_YAW_RATE):
                position_error = setpoint[:3] - state.position
                velocity_setpoint = self.position_p * position_error
            else:
                velocity_setpoint = setpoint[:3].copy()
            velocity_setpoint[:2] = np.clip(
                velocity_setpoint[:2], -self.vel_xy_limit, self.vel_xy_limit
            )
            velocity_setpoint[2] = min(
                max(velocity_setpoint[2], -self.vel_z_limit), self.vel_z_limit
            )
            self.last_velocity_setpoint = velocity_setpoint

            velocity_error = velocity_setpoint - state.velocity
            yaw = angles[2]
            forward = math.cos(yaw) * velocity_error[0] + math.sin(yaw) * velocity_error[1]
            left = -math.sin(yaw) * velocity_error[0] + math.cos(yaw) * velocity_error[1]
            tilt = self._velocity_pid.update(np.array([forward, left]), dt)
            # +pitch tilts thrust forward, +roll tilts it to the right
            pitch_setpoint = tilt[0]
            roll_setpoint = -tilt[1]

            if mode in (FlightMode.POSITION_YAW, FlightMode.VELOCITY_YAW):
                rate_setpoint = self._angle_loop(
                    roll_setpoint, pitch_setpoint, yaw_angle=setpoint[3]
                )
            else:
                rate_setpoint = self._angle_loop(
                    roll_setpoint, pitch_setpoint, yaw_rate=setpoint[3]
                )
            thrust = self._climb_loop(float(velocity_setpoint[2]), dt)

        self.last_rate_setpoint = rate_setpoint
        torque = self._rate_pid.update(rate_setpoint - state.body_rates, dt)
        self.last_torque_command = torque
        self.last_thrust_command = thrust
        self._motor_commands = quadx_mix([torque[0], torque[1], torque[2], thrust])

    def _angle_loop(self, roll_setpoint, pitch_setpoint, yaw_angle=None, yaw_rate=None):
        angles = self.state.angles
        self.last_angle_setpoint = np.array([roll_setpoint, pitch_setpoint])
        rates = np.empty(3)
        rates[0] = self.angle_p * float(wrap_angle(roll_setpoint - angles[0]))
        rates[1] = self.angle_p * float(wrap_angle(pitch_setpoint - angles[1]))
        if yaw_angle is not None:
            rates[2] = self.yaw_p * float(wrap_angle(yaw_angle - angles[2]))
        else:
            rates[2] = float(yaw_rate)
        return np.clip(rates, -self._rate_limits, self._rate_limits)

    def _climb_loop(self, climb_setpoint: float, dt: float) -> float:
        climb_error = climb_setpoint - self.state.velocity[2]
        correction = float(self._climb_pid.update(climb_error, dt)[0])
        # feedforward against thrust lost to tilt
        roll, pitch = self.state.angles[0], self.state.angles[1]
        tilt_factor = min(1.0 / max(math.cos(roll) * math.cos(pitch), 0.5), 1.5)
        return min(max((self.hover_throttle + correction) * tilt_factor, 0.0), 1.0)

    def physics_update(self, dt: float, noise: np.ndarray) -> tuple[bool, float]:
        loads = []
        for i, motor in enumerate(self.motors):
            motor.step(self._motor_commands[i], noise[i] if noise.size else 0.0)
            loads.append(motor.loads())
        return self._advance(loads, dt)

    def aux_state(self) -> np.ndarray:
        return np.array([m.rpm / m.params.max_rpm for m in self.motors])
