"""Go potential: native helix geometry, energy terms, invariances, rmsd."""

import math

import numpy as np
import pytest

from qswarm.gomodel import (BOLTZMANN_KCAL, DEFAULT_EPSILON, GoEnergyError,
                            build_native_helix, contact_pair_energy,
                            extract_topology, go_energy,
                            init_box_conformations, load_native_coords,
                            make_go_objective, nonnative_pair_energy, rmsd,
                            save_native_coords)
from qswarm.sampling import RngStream

from oracles import (angles_bruteforce, bond_lengths_bruteforce,
                     dihedrals_bruteforce)


@pytest.fixture(scope="module")
def native():
    return build_native_helix(12)


@pytest.fixture(scope="module")
def top(native):
    return extract_topology(native)


def brute_energy(flat, top):
    """Full energy recomputed term by term with the geometry oracles."""
    coords = np.asarray(flat, dtype=float).reshape(-1, 3)
    eps = top.epsilon
    e = 0.0
    for length in bond_lengths_bruteforce(coords):
        delta = length - top.bond_length
        e += top.k_bond1 * delta ** 2 + top.k_bond2 * delta ** 4
    for a, a0 in zip(angles_bruteforce(coords), top.native_angles):
        e += top.k_angle * (a - a0) ** 2
    for phi in dihedrals_bruteforce(coords):
        e += top.dihedral_a * (1.0 + math.cos(phi))
        e += top.dihedral_b * (1.0 + math.cos(3.0 * phi))
    for (i, j), dij in zip(top.contact_pairs, top.contact_dists):
        r = math.dist(coords[i], coords[j])
        sigma = 2.0 ** (-1.0 / 6.0) * dij
        e += 4.0 * eps * ((sigma / r) ** 12 - (sigma / r) ** 6)
    for i, j in top.noncontact_pairs:
        r = math.dist(coords[i], coords[j])
        if r < top.d_cut:
            e += 4.0 * eps * ((top.sigma0 / r) ** 12 - (top.sigma0 / r) ** 6) + eps
    return e


class TestNativeHelix:
    def test_bond_lengths(self, native):
        for length in bond_lengths_bruteforce(native):
            assert length == pytest.approx(3.8, abs=1e-9)

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            build_native_helix(3)

    def test_shape(self, native):
        assert native.shape == (12, 3)


class TestTopology:
    def test_contact_count_and_cutoff(self, top):
        assert top.contact_pairs.shape[0] == 17
        assert np.all(top.contact_dists < 7.5)
        assert np.all(np.abs(top.contact_pairs[:, 0] - top.contact_pairs[:, 1]) >= 3)
        assert top.d_cut == pytest.approx(top.contact_dists.mean(), abs=1e-15)
        assert 5.0 < top.d_cut < 6.0

    def test_pair_partition(self, top):
        # every |i-j| >= 3 pair is either a contact or a non-contact
        assert top.contact_pairs.shape[0] + top.noncontact_pairs.shape[0] == 45

    def test_huge_cutoff_makes_everything_a_contact(self, native):
        t = extract_topology(native, contact_cutoff=1e6)
        assert t.contact_pairs.shape[0] == 45
        assert t.noncontact_pairs.shape[0] == 0

    def test_no_contacts_rejected(self, native):
        with pytest.raises(ValueError):
            extract_topology(native, contact_cutoff=1e-3)

    def test_epsilon_value(self, top):
        assert DEFAULT_EPSILON == pytest.approx(0.59616, abs=1e-4)
        assert top.epsilon == pytest.approx(BOLTZMANN_KCAL * 300.0, abs=1e-12)

    def test_force_constants(self, top):
        eps = top.epsilon
        assert top.k_bond1 == eps
        assert top.k_bond2 == 100.0 * eps
        assert top.k_angle == 10.0 * eps
        assert top.dihedral_a == 0.0
        assert top.dihedral_b == pytest.approx(0.2 * eps)


class TestPairEnergies:
    def test_contact_minimum_is_minus_epsilon(self, top):
        for dij, sigma in zip(top.contact_dists, top.contact_sigmas):
            assert contact_pair_energy(dij, sigma, top.epsilon) == \
                pytest.approx(-top.epsilon, abs=1e-12)

    def test_nonnative_continuous_at_cutoff(self, top):
        just_inside = top.d_cut * (1.0 - 1e-12)
        assert abs(nonnative_pair_energy(just_inside, top)) < 1e-9
        assert nonnative_pair_energy(top.d_cut, top) == 0.0
        assert nonnative_pair_energy(top.d_cut + 1.0, top) == 0.0

    def test_nonnative_repulsive_close_in(self, top):
        assert nonnative_pair_energy(0.5 * top.d_cut, top) > top.epsilon


class TestGoEnergy:
    def test_native_energy_components(self, native, top):
        # bonds and angles vanish at the native structure; contacts each sit
        # exactly at their minimum, so
        # E(native) = -17 eps + sum_dihedral B (1 + cos 3 phi)
        e_dih = sum(top.dihedral_b * (1.0 + math.cos(3.0 * phi))
                    for phi in dihedrals_bruteforce(native))
        expected = -17.0 * top.epsilon + e_dih
        assert go_energy(native.reshape(-1), top) == pytest.approx(expected, abs=1e-9)

    def test_matches_bruteforce_oracle(self, native, top):
        rng = np.random.default_rng(0)
        for _ in range(50):
            conf = (native + rng.normal(0.0, 1.0, native.shape)).reshape(-1)
            assert go_energy(conf, top) == pytest.approx(
                brute_energy(conf, top), rel=1e-9, abs=1e-9)

    def test_translation_invariance(self, native, top):
        conf = native.reshape(-1)
        shifted = (native + np.array([7.0, -3.0, 11.0])).reshape(-1)
        assert go_energy(shifted, top) == pytest.approx(
            go_energy(conf, top), abs=1e-9)

    def test_rotation_invariance(self, native, top):
        rng = np.random.default_rng(3)
        qmat, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        rotated = (native @ qmat.T).reshape(-1)
        assert go_energy(rotated, top) == pytest.approx(
            go_energy(native.reshape(-1), top), abs=1e-9)

    def test_batch_matches_scalar(self, native, top):
        rng = np.random.default_rng(1)
        confs = native.reshape(-1) + rng.normal(0.0, 0.5, (8, 36))
        batch = go_energy(confs, top)
        singles = [go_energy(c, top) for c in confs]
        assert np.allclose(batch, singles, rtol=1e-12)

    def test_native_is_local_minimum(self, native, top):
        e0 = go_energy(native.reshape(-1), top)
        rng = np.random.default_rng(2)
        higher = sum(
            go_energy((native + rng.normal(0.0, 0.05, native.shape)).reshape(-1),
                      top) > e0
            for _ in range(10))
        assert higher >= 9

    def test_singular_raises_by_default(self, top):
        with pytest.raises(GoEnergyError):
            go_energy(np.zeros(36), top)

    def test_singular_inf_mode(self, top, native):
        assert go_energy(np.zeros(36), top, on_singular="inf") == math.inf
        batch = np.stack([native.reshape(-1), np.zeros(36)])
        out = go_energy(batch, top, on_singular="inf")
        assert np.isfinite(out[0]) and out[1] == math.inf

    def test_bad_mode_rejected(self, top):
        with pytest.raises(ValueError):
            go_energy(np.zeros(36), top, on_singular="nan")

    def test_length_check(self, top):
        with pytest.raises(ValueError):
            go_energy(np.zeros(35), top)


class TestRmsd:
    def test_translation_example(self, native):
        # every bead moved by (3, 4, 0): per-bead distance 5
        moved = (native + np.array([3.0, 4.0, 0.0])).reshape(-1)
        assert rmsd(moved, native) == pytest.approx(5.0, abs=1e-12)

    def test_zero_at_reference(self, native):
        assert rmsd(native.reshape(-1), native) == 0.0

    def test_batch(self, native):
        flat = native.reshape(-1)
        batch = np.stack([flat, flat + 1.0])
        out = rmsd(batch, native)
        assert out.shape == (2,)
        assert out[0] == 0.0
        assert out[1] == pytest.approx(math.sqrt(3.0), abs=1e-12)

    def test_length_mismatch(self, native):
        with pytest.raises(ValueError):
            rmsd(np.zeros(30), native)


class TestInitBox:
    def test_range_and_shape(self):
        confs = init_box_conformations(50, 12, RngStream(0, 0))
        assert confs.shape == (50, 36)
        assert np.all(np.abs(confs) <= 60.0)
        assert abs(confs.mean()) < 2.0

    def test_deterministic(self):
        a = init_box_conformations(10, 12, RngStream(5, 1))
        b = init_box_conformations(10, 12, RngStream(5, 1))
        assert np.array_equal(a, b)


class TestCoordsIO:
    def test_round_trip(self, native, tmp_path):
        path = tmp_path / "native.txt"
        save_native_coords(path, native)
        loaded = load_native_coords(path)
        assert np.allclose(loaded, native, atol=1e-9)

    def test_bad_file_rejected(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1.0 2.0\n3.0 4.0\n")
        with pytest.raises(ValueError):
            load_native_coords(path)


class TestGoObjective:
    def test_handle_shape(self):
        h = make_go_objective(12)
        assert h.dimension == 36
        assert np.all(h.bounds.lower == -60.0) and np.all(h.bounds.upper == 60.0)
        assert h.known_optimum is None
        assert h.topology.n_residues == 12

    def test_guarded_inf_instead_of_raise(self):
        h = make_go_objective(12)
        assert h.evaluate(np.zeros(36)) == math.inf

    def test_native_scores_well(self, native):
        h = make_go_objective(12)
        assert h.evaluate(native.reshape(-1)) < -9.0
