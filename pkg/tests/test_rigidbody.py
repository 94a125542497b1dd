import numpy as np
import pytest

from flightlab.rigidbody import (
    GRAVITY,
    AppliedLoad,
    MassProperties,
    RigidBodyState,
    SimulationDiverged,
    detect_collisions,
    resolve_ground_contact,
    step_body,
)


def kinetic_rotation_energy(state, mass):
    omega = state.body_rates
    return 0.5 * float(omega @ (mass.inertia * omega))


class TestStepBody:
    def test_free_fall_single_step(self):
        state = RigidBodyState(position=[0.0, 0.0, 10.0])
        mass = MassProperties(2.0, [0.1, 0.1, 0.1])
        dt = 1.0 / 240.0
        out = step_body(state, mass, [], dt)
        assert out.velocity[2] == pytest.approx(-GRAVITY * dt, abs=0.0)
        assert out.position[2] == pytest.approx(10.0 - GRAVITY * dt * dt, abs=0.0)

    def test_free_fall_velocity_accumulates_exactly(self):
        state = RigidBodyState(position=[0.0, 0.0, 100.0])
        mass = MassProperties(1.5, [0.1, 0.2, 0.3])
        dt = 1.0 / 240.0
        for _ in range(100):
            state = step_body(state, mass, [], dt)
        # repeated addition of -g*dt accumulates only float roundoff
        assert state.velocity[2] == pytest.approx(-GRAVITY * 100 * dt, rel=1e-13)
        assert state.velocity[0] == 0.0 and state.velocity[1] == 0.0

    def test_hover_force_balance(self):
        mass = MassProperties(0.75, [0.01, 0.01, 0.02])
        state = RigidBodyState(position=[1.0, 2.0, 3.0])
        load = AppliedLoad(force=[0.0, 0.0, mass.mass * GRAVITY])
        out = step_body(state, mass, [load], 1.0 / 240.0)
        assert np.abs(out.position - state.position).max() <= 1e-12
        assert np.abs(out.velocity).max() <= 1e-12
        assert np.abs(out.angles).max() <= 1e-12

    def test_off_center_force_produces_torque(self):
        mass = MassProperties(1.0, [0.1, 0.1, 0.1])
        state = RigidBodyState()
        # upward force on the +y arm rolls the body about +x
        load = AppliedLoad(force=[0.0, 0.0, 1.0], point=[0.0, 0.5, 0.0])
        out = step_body(state, mass, [load], 0.01)
        assert out.body_rates[0] > 0.0
        assert out.body_rates[1] == pytest.approx(0.0, abs=1e-15)

    def test_energy_conserved_torque_free_tumble(self):
        # oracle: reference integration at 100x finer steps
        mass = MassProperties(1.0, [0.1, 0.2, 0.3])
        initial = RigidBodyState(position=[0, 0, 1000.0], body_rates=[1.0, 2.0, 0.5])

        coarse = initial.copy()
        for _ in range(240):
            coarse = step_body(coarse, mass, [], 1.0 / 240.0)

        fine = initial.copy()
        for _ in range(24000):
            fine = step_body(fine, mass, [], 1.0 / 24000.0)

        e0 = kinetic_rotation_energy(initial, mass)
        e_coarse = kinetic_rotation_energy(coarse, mass)
        e_fine = kinetic_rotation_energy(fine, mass)
        assert abs(e_fine - e0) / e0 < 1e-3
        assert abs(e_coarse - e_fine) / e_fine < 1e-3

    def test_symmetric_body_rate_magnitude_constant(self):
        mass = MassProperties(2.0, [0.2, 0.2, 0.2])
        state = RigidBodyState(position=[0, 0, 1000.0], body_rates=[0.3, -1.1, 0.7])
        norm0 = np.linalg.norm(state.body_rates)
        for _ in range(1000):
            state = step_body(state, mass, [], 1.0 / 240.0)
            assert abs(np.linalg.norm(state.body_rates) - norm0) < 1e-9

    def test_determinism_bit_identical(self):
        mass = MassProperties(1.2, [0.05, 0.06, 0.07])
        loads = [AppliedLoad(force=[0.1, -0.2, 12.0], point=[0.01, 0.02, 0.0])]

        def run():
            state = RigidBodyState(position=[0, 0, 5.0], body_rates=[0.1, 0.2, 0.3])
            for _ in range(500):
                state = step_body(state, mass, loads, 1.0 / 240.0)
            return state

        a, b = run(), run()
        assert np.array_equal(a.position, b.position)
        assert np.array_equal(a.angles, b.angles)
        assert np.array_equal(a.velocity, b.velocity)
        assert np.array_equal(a.body_rates, b.body_rates)

    def test_divergence_raises(self):
        mass = MassProperties(1.0, [0.1, 0.1, 0.1])
        state = RigidBodyState(velocity=[np.inf, 0.0, 0.0])
        with pytest.raises(SimulationDiverged):
            step_body(state, mass, [], 0.01)

    def test_invalid_mass_rejected(self):
        with pytest.raises(ValueError):
            MassProperties(0.0, [0.1, 0.1, 0.1])
        with pytest.raises(ValueError):
            MassProperties(1.0, [0.1, -0.1, 0.1])


class TestGroundContact:
    def test_airborne_untouched(self):
        state = RigidBodyState(position=[0, 0, 5.0])
        out, contacted, speed = resolve_ground_contact(state, 0.1)
        assert not contacted
        assert speed == 0.0
        assert out is state

    def test_penetration_clamped(self):
        state = RigidBodyState(position=[1.0, 2.0, 0.05], velocity=[0.0, 0.0, -2.0])
        out, contacted, speed = resolve_ground_contact(state, 0.1)
        assert contacted
        assert out.position[2] == 0.1
        assert out.velocity[2] == 0.0
        assert speed == pytest.approx(2.0)

    def test_exact_radius_is_not_contact(self):
        state = RigidBodyState(position=[0, 0, 0.1], velocity=[0, 0, -1.0])
        _, contacted, _ = resolve_ground_contact(state, 0.1)
        assert not contacted

    def test_upward_velocity_preserved(self):
        state = RigidBodyState(position=[0, 0, 0.01], velocity=[1.0, 0.0, 0.5])
        out, contacted, speed = resolve_ground_contact(state, 0.1)
        assert contacted
        assert out.velocity[2] == 0.5
        assert speed == pytest.approx(np.sqrt(1.0 + 0.25))


class TestDetectCollisions:
    def test_far_apart(self):
        states = [RigidBodyState(position=[0, 0, 1]), RigidBodyState(position=[10, 0, 1])]
        assert detect_collisions(states, [0.5, 0.5]) == []

    def test_overlapping_pair(self):
        states = [RigidBodyState(position=[0, 0, 1]), RigidBodyState(position=[0.8, 0, 1])]
        assert detect_collisions(states, [0.5, 0.5]) == [(0, 1)]

    def test_touching_is_not_collision(self):
        states = [RigidBodyState(position=[0, 0, 1]), RigidBodyState(position=[1.0, 0, 1])]
        assert detect_collisions(states, [0.5, 0.5]) == []

    def test_three_coincident(self):
        states = [RigidBodyState(position=[1, 1, 1]) for _ in range(3)]
        assert detect_collisions(states, [0.2, 0.2, 0.2]) == [(0, 1), (0, 2), (1, 2)]

    def test_matches_brute_force_oracle_random_configs(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            n = int(rng.integers(2, 12))
            states = [RigidBodyState(position=rng.uniform(-3, 3, 3)) for _ in range(n)]
            radii = list(rng.uniform(0.1, 1.5, n))
            expected = []
            for i in range(n):
                for j in range(i + 1, n):
                    gap = np.linalg.norm(states[i].position - states[j].position)
                    if gap < radii[i] + radii[j]:
                        expected.append((i, j))
            assert detect_collisions(states, radii) == expected

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            detect_collisions([RigidBodyState()], [0.1, 0.2])
