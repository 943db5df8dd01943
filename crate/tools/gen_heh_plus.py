"""Generate the qubit-tapered HeH+ Hamiltonian grid (STO-3G, Jordan-Wigner).

Writes `data/heh_plus.txt` in the coefficient-grid format read by
`qaboa_core::problems::CoefficientGrid`. Requires PennyLane.

    python3 tools/gen_heh_plus.py > crates/core/data/heh_plus.txt
"""
import numpy as np
import pennylane as qml

ANGSTROM_TO_BOHR = 1.8897259886


def tapered(bond_length):
    coords = np.array([0.0, 0.0, 0.0, 0.0, 0.0, bond_length * ANGSTROM_TO_BOHR])
    mol = qml.qchem.Molecule(["He", "H"], coords, charge=1, basis_name="sto-3g")
    h, n_qubits = qml.qchem.molecular_hamiltonian(mol, method="dhf", mapping="jordan_wigner")
    generators = qml.symmetry_generators(h)
    paulixops = qml.paulix_ops(generators, n_qubits)
    sector = qml.qchem.optimal_sector(h, generators, 2)
    return qml.taper(h, generators, paulixops, sector)


def pauli_terms(h, wires):
    terms = {}
    for word, coeff in h.pauli_rep.items():
        label = "".join(word.get(w, "I") for w in wires)
        terms[label] = terms.get(label, 0.0) + float(np.real(coeff))
    return sorted(terms.items())


def main():
    print("# HeH+ qubit-tapered Hamiltonian, STO-3G, Jordan-Wigner; energies in Hartree")
    print("n_qubits=2")
    for length in np.round(np.arange(0.1, 3.0 + 1e-9, 0.05), 2):
        h = tapered(length)
        wires = sorted(h.wires.tolist())
        assert len(wires) <= 2
        while len(wires) < 2:
            wires.append(max(wires, default=-1) + 1)
        print(f"L={length:.2f}")
        for label, coeff in pauli_terms(h, wires):
            if abs(coeff) > 1e-12:
                print(f"{coeff:.12f} {label}")


if __name__ == "__main__":
    main()
