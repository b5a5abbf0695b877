#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "znsim/errors.hpp"

namespace znsim {

// Composite register: ancilla (x) links (x) fermion modes.
//
// Mixed-radix index convention, least significant first:
//   fermion modes (radix 2, mode order = row-major site order),
//   links (radix N, canonical link order),
//   ancilla (radix N, most significant).
struct RegisterLayout {
  int groupOrder = 2;     // N
  int numLinks = 0;
  int numModes = 0;
  int ancillaCount = 0;   // 0 or 1

  RegisterLayout() = default;
  RegisterLayout(int n, int links, int modes, int ancillas);

  std::int64_t fermionDim() const { return std::int64_t(1) << numModes; }
  std::int64_t dim() const;

  // Qudit slots: 0..numLinks-1 are links, slot numLinks is the ancilla.
  int ancillaSlot() const { return numLinks; }
  std::int64_t quditStride(int slot) const;
  int quditDigit(std::int64_t index, int slot) const {
    return int((index / quditStride(slot)) % groupOrder);
  }
  bool modeOccupied(std::int64_t index, int mode) const {
    return (index >> mode) & 1;
  }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

class StateVector {
 public:
  explicit StateVector(const RegisterLayout& layout);
  StateVector(const RegisterLayout& layout, Eigen::VectorXcd amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  RegisterLayout layout_;
  Eigen::VectorXcd amps_;
};

StateVector basis_state(const RegisterLayout& layout, int ancilla,
                        std::span<const int> linkValues, std::span<const int> occupations);

// Gate on k qudit slots (k <= 4), dimension N^k. slots[0] is the most
// significant digit of the gate's row/column index. Matrix-free: O(D) sweep.
void apply_qudit_gate(StateVector& s, std::span<const int> slots, const Eigen::MatrixXcd& gate);

// e^{-i theta (c_i^dag c_j + c_j^dag c_i)} with the Jordan-Wigner string
// between modes i and j (mode 0 least significant).
void apply_fermionic_exponential(StateVector& s, int i, int j, double theta);

// Multiplies amplitudes with mode occupied by e^{-i phi}.
void apply_number_phase(StateVector& s, int mode, double phi);

// exp(n_mode (x) a) for anti-Hermitian a acting on the ancilla: identity on the
// unoccupied subspace, e^{a} on the ancilla where the mode is occupied.
void apply_controlled_fermion_log(StateVector& s, int mode, const Eigen::MatrixXcd& a);

// |<a|b>| / (||a|| ||b||)
double fidelity_up_to_phase(const StateVector& a, const StateVector& b);

// 1 - <in~| rho~ |in~> for the reduced ancilla state; 0 iff the ancilla is
// back in |in~> and disentangled.
double ancilla_return_check(const StateVector& s);

// Binary snapshot: 32-byte header (magic "Z2SV", version, N, numLinks,
// numModes, ancillaCount, reserved), then D little-endian complex doubles.
void save_snapshot(const StateVector& s, const std::string& path);
StateVector load_snapshot(const std::string& path);

}  // namespace znsim
