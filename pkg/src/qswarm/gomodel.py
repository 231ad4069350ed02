"""Coarse-grained Go potential for a C-alpha polyalanine chain.

The objective variable is the flat coordinate vector of the beads.  The
energy is native-structure biased: harmonic-plus-quartic bonds, harmonic
angles, a threefold dihedral term, Lennard-Jones wells centered at the
native distances for native contacts, and a truncated-shifted repulsion for
every other long-range pair.
"""

from dataclasses import dataclass

import numpy as np

from .objective import Bounds, ObjectiveHandle
from .sampling import RngStream

__all__ = [
    "BOLTZMANN_KCAL",
    "DEFAULT_EPSILON",
    "GoTopology",
    "GoEnergyError",
    "build_native_helix",
    "extract_topology",
    "go_energy",
    "contact_pair_energy",
    "nonnative_pair_energy",
    "rmsd",
    "init_box_conformations",
    "make_go_objective",
    "load_native_coords",
    "save_native_coords",
]

BOLTZMANN_KCAL = 0.0019872  # kcal/(mol K)
DEFAULT_EPSILON = BOLTZMANN_KCAL * 300.0  # ~0.59616 kcal/mol at 300 K

BOND_LENGTH = 3.8  # Angstrom, consecutive C-alpha distance
BOX_HALF_WIDTH = 60.0  # initial conformations fill [-60, 60] per coordinate
CONTACT_CUTOFF = 7.5  # Angstrom, native-contact detection


class GoEnergyError(ValueError):
    """Raised for singular geometry (coincident beads in a pair term)."""


@dataclass(frozen=True)
class GoTopology:
    """Native-structure data plus force-field constants.

    Immutable after construction; shared freely across replica workers.
    """

    n_residues: int
    native_coords: np.ndarray        # (n, 3)
    bond_length: float               # d_0
    native_angles: np.ndarray        # (n - 2,)
    contact_pairs: np.ndarray        # (n_c, 2) int, |i - j| >= 3
    contact_dists: np.ndarray        # (n_c,) native distances
    noncontact_pairs: np.ndarray     # (n_nc, 2) int, remaining |i - j| >= 3 pairs
    d_cut: float                     # mean native contact distance
    epsilon: float

    @property
    def contact_sigmas(self) -> np.ndarray:
        return 2.0 ** (-1.0 / 6.0) * self.contact_dists

    @property
    def sigma0(self) -> float:
        return 2.0 ** (-1.0 / 6.0) * self.d_cut

    # force-field constants, all proportional to epsilon
    @property
    def k_bond1(self) -> float:
        return self.epsilon

    @property
    def k_bond2(self) -> float:
        return 100.0 * self.epsilon

    @property
    def k_angle(self) -> float:
        return 10.0 * self.epsilon

    @property
    def dihedral_a(self) -> float:
        return 0.0

    @property
    def dihedral_b(self) -> float:
        return 0.2 * self.epsilon


def build_native_helix(n: int) -> np.ndarray:
    """Ideal alpha-helix C-alpha trace with consecutive distances of 3.8 A.

    Residue i sits at (r cos(i phi), r sin(i phi), i h) with r = 2.3 A,
    phi = 100 degrees and rise h = 1.5 A, then the whole trace is uniformly
    rescaled so neighboring beads are exactly 3.8 A apart.
    """
    if n < 4:
        raise ValueError("need at least 4 residues (no dihedral otherwise)")
    i = np.arange(n, dtype=float)
    phi = np.deg2rad(100.0)
    coords = np.column_stack((2.3 * np.cos(i * phi), 2.3 * np.sin(i * phi), 1.5 * i))
    step = np.linalg.norm(coords[1] - coords[0])
    return coords * (BOND_LENGTH / step)


def _bond_vectors(coords):
    return coords[..., 1:, :] - coords[..., :-1, :]


def _angles(coords, strict: bool = True):
    """Interior angles between consecutive bonds, shape (..., n-2)."""
    b = _bond_vectors(coords)
    u = -b[..., :-1, :]
    v = b[..., 1:, :]
    nu = np.linalg.norm(u, axis=-1)
    nv = np.linalg.norm(v, axis=-1)
    if strict and (np.any(nu == 0.0) or np.any(nv == 0.0)):
        raise GoEnergyError("coincident consecutive beads: angle undefined")
    with np.errstate(divide="ignore", invalid="ignore"):
        cos = np.sum(u * v, axis=-1) / (nu * nv)
    return np.arccos(np.clip(cos, -1.0, 1.0))


def _dihedral_cosines(coords, strict: bool = True):
    """cos(phi) for each torsion of four consecutive beads, shape (..., n-3)."""
    b = _bond_vectors(coords)
    n1 = np.cross(b[..., :-2, :], b[..., 1:-1, :])
    n2 = np.cross(b[..., 1:-1, :], b[..., 2:, :])
    nn1 = np.linalg.norm(n1, axis=-1)
    nn2 = np.linalg.norm(n2, axis=-1)
    if strict and (np.any(nn1 == 0.0) or np.any(nn2 == 0.0)):
        raise GoEnergyError("collinear beads: dihedral undefined")
    with np.errstate(divide="ignore", invalid="ignore"):
        cos = np.sum(n1 * n2, axis=-1) / (nn1 * nn2)
    return np.clip(cos, -1.0, 1.0)


def extract_topology(native, contact_cutoff: float = CONTACT_CUTOFF,
                     epsilon: float = DEFAULT_EPSILON) -> GoTopology:
    """Derive bonds, angles, contacts and the cutoff distance from native coords.

    Native contacts are the |i - j| >= 3 pairs closer than ``contact_cutoff``
    in the native structure; d_cut is their mean distance.
    """
    native = np.asarray(native, dtype=float)
    if native.ndim != 2 or native.shape[1] != 3:
        raise ValueError("native coordinates must have shape (n, 3)")
    n = native.shape[0]
    angles = _angles(native)

    ii, jj = np.triu_indices(n, k=3)
    dists = np.linalg.norm(native[ii] - native[jj], axis=-1)
    in_contact = dists < contact_cutoff
    if not np.any(in_contact):
        raise ValueError("no native contacts below the cutoff")
    contact_pairs = np.column_stack((ii[in_contact], jj[in_contact]))
    contact_dists = dists[in_contact]
    noncontact_pairs = np.column_stack((ii[~in_contact], jj[~in_contact]))
    return GoTopology(
        n_residues=n,
        native_coords=native.copy(),
        bond_length=BOND_LENGTH,
        native_angles=angles,
        contact_pairs=contact_pairs,
        contact_dists=contact_dists,
        noncontact_pairs=noncontact_pairs,
        d_cut=float(contact_dists.mean()),
        epsilon=epsilon,
    )


def _pair_distances(coords, pairs, strict: bool = True):
    if pairs.shape[0] == 0:
        return np.zeros(coords.shape[:-2] + (0,))
    diff = coords[..., pairs[:, 0], :] - coords[..., pairs[:, 1], :]
    r = np.linalg.norm(diff, axis=-1)
    if strict and np.any(r == 0.0):
        raise GoEnergyError("coincident beads in a pair term")
    return r


def contact_pair_energy(r, sigma: float, epsilon: float):
    """Lennard-Jones well 4 eps ((sigma/r)^12 - (sigma/r)^6); minimum -eps at
    r = 2^(1/6) sigma, the native distance."""
    s6 = (sigma / np.asarray(r, dtype=float)) ** 6
    return 4.0 * epsilon * (s6 * s6 - s6)


def nonnative_pair_energy(r, top: GoTopology):
    """Truncated-shifted repulsion: LJ at sigma0 plus eps inside d_cut, zero
    beyond; continuous (and smooth) at the cutoff."""
    r = np.asarray(r, dtype=float)
    inside = contact_pair_energy(r, top.sigma0, top.epsilon) + top.epsilon
    out = np.where(r < top.d_cut, inside, 0.0)
    return float(out) if out.ndim == 0 else out


def go_energy(conformation, top: GoTopology, on_singular: str = "raise"):
    """Total Go energy (kcal/mol) of one conformation or a batch.

    Accepts a flat vector of length 3n or an array whose last axis has that
    length; returns a scalar or the matching batch of scalars.

    ``on_singular`` controls degenerate geometry (coincident beads in a pair
    term, collinear beads in a torsion): ``"raise"`` raises GoEnergyError,
    ``"inf"`` instead scores the offending conformations as +inf so batched
    optimizers can reject them without unwinding the whole evaluation.
    """
    if on_singular not in ("raise", "inf"):
        raise ValueError("on_singular must be 'raise' or 'inf'")
    strict = on_singular == "raise"
    x = np.asarray(conformation, dtype=float)
    scalar = x.ndim == 1
    n = top.n_residues
    if x.shape[-1] != 3 * n:
        raise ValueError(f"conformation length must be {3 * n}, got {x.shape[-1]}")
    coords = x.reshape(x.shape[:-1] + (n, 3))

    eps = top.epsilon
    d = np.linalg.norm(_bond_vectors(coords), axis=-1)
    if strict and np.any(d == 0.0):
        raise GoEnergyError("coincident consecutive beads")
    stretch = d - top.bond_length
    e_bond = np.sum(top.k_bond1 * stretch ** 2 + top.k_bond2 * stretch ** 4, axis=-1)

    e_angle = np.sum(top.k_angle * (_angles(coords, strict) - top.native_angles) ** 2,
                     axis=-1)

    cos_phi = _dihedral_cosines(coords, strict)
    cos_3phi = 4.0 * cos_phi ** 3 - 3.0 * cos_phi
    e_dihedral = np.sum(top.dihedral_a * (1.0 + cos_phi)
                        + top.dihedral_b * (1.0 + cos_3phi), axis=-1)

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        r_nat = _pair_distances(coords, top.contact_pairs, strict)
        e_native = np.sum(contact_pair_energy(r_nat, top.contact_sigmas, eps), axis=-1)

        r_non = _pair_distances(coords, top.noncontact_pairs, strict)
        if r_non.shape[-1]:
            e_nonnative = np.sum(nonnative_pair_energy(r_non, top), axis=-1)
        else:
            e_nonnative = 0.0

    total = e_bond + e_angle + e_dihedral + e_native + e_nonnative
    if not strict:
        total = np.where(np.isnan(total), np.inf, total)
    return float(total) if scalar else total


def rmsd(conformation, reference):
    """Root mean square deviation per residue, no superposition applied."""
    x = np.asarray(conformation, dtype=float)
    ref = np.asarray(reference, dtype=float)
    flat_ref = ref.reshape(-1)
    if x.shape[-1] != flat_ref.shape[0]:
        raise ValueError("conformation and reference lengths differ")
    n = flat_ref.shape[0] // 3
    diff = x.reshape(x.shape[:-1] + (n, 3)) - flat_ref.reshape(n, 3)
    out = np.sqrt(np.mean(np.sum(diff ** 2, axis=-1), axis=-1))
    return float(out) if x.ndim == 1 else out


def init_box_conformations(n_particles: int, n_residues: int,
                           stream: RngStream) -> np.ndarray:
    """Initial swarm positions: every coordinate uniform in [-60, 60] A."""
    u = stream.uniform((n_particles, 3 * n_residues))
    return (2.0 * u - 1.0) * BOX_HALF_WIDTH


def save_native_coords(path, coords) -> None:
    """Plain text, one residue per line, three whitespace-separated reals."""
    np.savetxt(path, np.asarray(coords, dtype=float), fmt="%.10f")


def load_native_coords(path) -> np.ndarray:
    coords = np.loadtxt(path, dtype=float)
    if coords.ndim != 2 or coords.shape[1] != 3:
        raise ValueError("native coordinate file must have three columns")
    return coords


def make_go_objective(n_residues: int = 12, native_coords=None,
                      contact_cutoff: float = CONTACT_CUTOFF,
                      epsilon: float = DEFAULT_EPSILON):
    """ObjectiveHandle for the folding problem; also returns topology via attribute.

    The search box is the initialization box [-60, 60] per coordinate.
    """
    native = (np.asarray(native_coords, dtype=float) if native_coords is not None
              else build_native_helix(n_residues))
    top = extract_topology(native, contact_cutoff=contact_cutoff, epsilon=epsilon)

    def guarded_energy(x):
        # clamping can park beads on top of each other; such conformations
        # are infinitely bad rather than fatal for the optimizer
        return go_energy(x, top, on_singular="inf")

    handle = ObjectiveHandle(
        name="go12" if n_residues == 12 else f"go{n_residues}",
        dimension=3 * n_residues,
        bounds=Bounds.cube(-BOX_HALF_WIDTH, BOX_HALF_WIDTH, 3 * n_residues),
        fn=guarded_energy,
        known_optimum=None,
    )
    handle.topology = top
    return handle
