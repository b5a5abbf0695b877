#include "znsim/state.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>

#include "znsim/algebra.hpp"

namespace znsim {

using cd = std::complex<double>;

namespace {
constexpr std::int64_t kMaxDim = std::int64_t(1) << 27;

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}
}  // namespace

RegisterLayout::RegisterLayout(int n, int links, int modes, int ancillas)
    : groupOrder(n), numLinks(links), numModes(modes), ancillaCount(ancillas) {
  if (n < 2) throw BadOrderError("BadOrder: group order must be >= 2");
  if (links < 0 || modes < 0 || (ancillas != 0 && ancillas != 1)) {
    throw OutOfRangeError("OutOfRange: invalid register layout");
  }
  // overflow-safe dimension guard
  double logDim = modes * std::log2(2.0) + (links + ancillas) * std::log2(double(n));
  if (logDim > 27.0 + 1e-9) {
    throw TooLargeError("TooLarge: register dimension exceeds 2^27");
  }
}

std::int64_t RegisterLayout::dim() const {
  return fermionDim() * ipow(groupOrder, numLinks + ancillaCount);
}

std::int64_t RegisterLayout::quditStride(int slot) const {
  if (slot < 0 || slot > numLinks || (slot == numLinks && ancillaCount == 0)) {
    throw OutOfRangeError("OutOfRange: bad qudit slot");
  }
  return fermionDim() * ipow(groupOrder, slot);
}

StateVector::StateVector(const RegisterLayout& layout)
    : layout_(layout), amps_(Eigen::VectorXcd::Zero(layout.dim())) {}

StateVector::StateVector(const RegisterLayout& layout, Eigen::VectorXcd amplitudes)
    : layout_(layout), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout.dim()) {
    throw DimMismatchError("DimMismatch: amplitude length does not match layout");
  }
}

StateVector basis_state(const RegisterLayout& layout, int ancilla,
                        std::span<const int> linkValues, std::span<const int> occupations) {
  if (int(linkValues.size()) != layout.numLinks || int(occupations.size()) != layout.numModes) {
    throw OutOfRangeError("OutOfRange: wrong number of link values or occupations");
  }
  if (layout.ancillaCount == 0 ? ancilla != 0 : (ancilla < 0 || ancilla >= layout.groupOrder)) {
    throw OutOfRangeError("OutOfRange: ancilla value");
  }
  std::int64_t index = 0;
  for (int m = 0; m < layout.numModes; ++m) {
    if (occupations[m] != 0 && occupations[m] != 1) {
      throw OutOfRangeError("OutOfRange: occupation must be 0 or 1");
    }
    index |= std::int64_t(occupations[m]) << m;
  }
  for (int l = 0; l < layout.numLinks; ++l) {
    if (linkValues[l] < 0 || linkValues[l] >= layout.groupOrder) {
      throw OutOfRangeError("OutOfRange: link value");
    }
    index += linkValues[l] * layout.quditStride(l);
  }
  if (layout.ancillaCount == 1) index += ancilla * layout.quditStride(layout.ancillaSlot());
  StateVector s(layout);
  s.amplitudes()(index) = 1.0;
  return s;
}

void apply_qudit_gate(StateVector& s, std::span<const int> slots, const Eigen::MatrixXcd& gate) {
  const RegisterLayout& layout = s.layout();
  const int k = int(slots.size());
  if (k < 1 || k > 4) throw DimMismatchError("DimMismatch: 1..4 targets supported");
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (slots[a] == slots[b]) throw DuplicateTargetError("DuplicateTarget: repeated slot");

  const int n = layout.groupOrder;
  const std::int64_t g = ipow(n, k);
  if (gate.rows() != g || gate.cols() != g) {
    throw DimMismatchError("DimMismatch: gate dimension must be N^k");
  }

  std::array<std::int64_t, 4> stride{};
  for (int a = 0; a < k; ++a) stride[a] = layout.quditStride(slots[a]);

  // offset(j): slots[0] is the most significant digit of j.
  std::vector<std::int64_t> offset(g, 0);
  for (std::int64_t j = 0; j < g; ++j) {
    std::int64_t rest = j;
    for (int a = k - 1; a >= 0; --a) {
      offset[j] += (rest % n) * stride[a];
      rest /= n;
    }
  }

  Eigen::VectorXcd x(g), y(g);
  Eigen::VectorXcd& amps = s.amplitudes();
  const std::int64_t dim = layout.dim();
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    bool base = true;
    for (int a = 0; a < k; ++a) {
      if ((idx / stride[a]) % n != 0) { base = false; break; }
    }
    if (!base) continue;
    for (std::int64_t j = 0; j < g; ++j) x(j) = amps(idx + offset[j]);
    y.noalias() = gate * x;
    for (std::int64_t j = 0; j < g; ++j) amps(idx + offset[j]) = y(j);
  }
}

void apply_fermionic_exponential(StateVector& s, int i, int j, double theta) {
  if (i == j) throw SameModeError("SameMode: bilinear needs two distinct modes");
  const RegisterLayout& layout = s.layout();
  if (i < 0 || j < 0 || i >= layout.numModes || j >= layout.numModes) {
    throw OutOfRangeError("OutOfRange: mode index");
  }
  const int lo = std::min(i, j), hi = std::max(i, j);
  const std::int64_t maskBetween =
      ((std::int64_t(1) << hi) - 1) & ~((std::int64_t(1) << (lo + 1)) - 1);
  const std::int64_t flip = (std::int64_t(1) << i) | (std::int64_t(1) << j);
  const double c = std::cos(theta);
  const cd ms(0.0, -std::sin(theta));

  Eigen::VectorXcd& amps = s.amplitudes();
  const std::int64_t dim = layout.dim();
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    if (!layout.modeOccupied(idx, i) || layout.modeOccupied(idx, j)) continue;
    const std::int64_t partner = idx ^ flip;
    // <1_i 0_j| c_i^dag c_j |0_i 1_j> = (-1)^{sum of occupations between}
    const double sign = (std::popcount(std::uint64_t(idx & maskBetween)) % 2 == 0) ? 1.0 : -1.0;
    const cd a = amps(idx), b = amps(partner);
    amps(idx) = c * a + sign * ms * b;
    amps(partner) = c * b + sign * ms * a;
  }
}

void apply_number_phase(StateVector& s, int mode, double phi) {
  const RegisterLayout& layout = s.layout();
  if (mode < 0 || mode >= layout.numModes) throw OutOfRangeError("OutOfRange: mode index");
  const cd phase = std::polar(1.0, -phi);
  Eigen::VectorXcd& amps = s.amplitudes();
  const std::int64_t dim = layout.dim();
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    if (layout.modeOccupied(idx, mode)) amps(idx) *= phase;
  }
}

void apply_controlled_fermion_log(StateVector& s, int mode, const Eigen::MatrixXcd& a) {
  const RegisterLayout& layout = s.layout();
  if (layout.ancillaCount == 0) throw NoAncillaError("NoAncilla: layout has no ancilla");
  if (mode < 0 || mode >= layout.numModes) throw OutOfRangeError("OutOfRange: mode index");
  const int n = layout.groupOrder;
  if (a.rows() != n || a.cols() != n) throw DimMismatchError("DimMismatch: ancilla operator");

  const Eigen::MatrixXcd expA = exp_anti_hermitian(a);
  const std::int64_t stride = layout.quditStride(layout.ancillaSlot());
  Eigen::VectorXcd x(n), y(n);
  Eigen::VectorXcd& amps = s.amplitudes();
  const std::int64_t dim = layout.dim();
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    if ((idx / stride) % n != 0 || !layout.modeOccupied(idx, mode)) continue;
    for (int m = 0; m < n; ++m) x(m) = amps(idx + m * stride);
    y.noalias() = expA * x;
    for (int m = 0; m < n; ++m) amps(idx + m * stride) = y(m);
  }
}

double fidelity_up_to_phase(const StateVector& a, const StateVector& b) {
  if (!(a.layout() == b.layout())) throw DimMismatchError("DimMismatch: layouts differ");
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.amplitudes().dot(b.amplitudes())) / (na * nb);
}

double ancilla_return_check(const StateVector& s) {
  const RegisterLayout& layout = s.layout();
  if (layout.ancillaCount == 0) throw NoAncillaError("NoAncilla: layout has no ancilla");
  const int n = layout.groupOrder;
  const std::int64_t stride = layout.quditStride(layout.ancillaSlot());
  // <in|rho|in> = (1/N) sum_{m,n} rho_{mn}; accumulate sum_rest |sum_m a_{m,rest}|^2.
  double overlap = 0.0;
  const Eigen::VectorXcd& amps = s.amplitudes();
  for (std::int64_t rest = 0; rest < stride; ++rest) {
    cd acc = 0.0;
    for (int m = 0; m < n; ++m) acc += amps(rest + m * stride);
    overlap += std::norm(acc);
  }
  const double n2 = s.amplitudes().squaredNorm();
  if (n2 == 0.0) return 1.0;
  return 1.0 - overlap / (n * n2);
}

namespace {
struct SnapshotHeader {
  char magic[4];
  std::uint32_t version;
  std::uint32_t groupOrder;
  std::uint32_t numLinks;
  std::uint32_t numModes;
  std::uint32_t ancillaCount;
  std::uint32_t reserved[2];
};
static_assert(sizeof(SnapshotHeader) == 32);
}  // namespace

void save_snapshot(const StateVector& s, const std::string& path) {
  SnapshotHeader h{};
  std::memcpy(h.magic, "Z2SV", 4);
  h.version = 1;
  h.groupOrder = std::uint32_t(s.layout().groupOrder);
  h.numLinks = std::uint32_t(s.layout().numLinks);
  h.numModes = std::uint32_t(s.layout().numModes);
  h.ancillaCount = std::uint32_t(s.layout().ancillaCount);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot open snapshot file for writing: " + path);
  out.write(reinterpret_cast<const char*>(&h), sizeof(h));
  out.write(reinterpret_cast<const char*>(s.amplitudes().data()),
            std::streamsize(sizeof(cd) * s.amplitudes().size()));
}

StateVector load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError("cannot open snapshot file: " + path);
  SnapshotHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (!in || std::memcmp(h.magic, "Z2SV", 4) != 0 || h.version != 1) {
    throw SimError("bad snapshot header: " + path);
  }
  RegisterLayout layout(int(h.groupOrder), int(h.numLinks), int(h.numModes), int(h.ancillaCount));
  Eigen::VectorXcd amps(layout.dim());
  in.read(reinterpret_cast<char*>(amps.data()), std::streamsize(sizeof(cd) * amps.size()));
  if (!in) throw SimError("truncated snapshot: " + path);
  return StateVector(layout, std::move(amps));
}

}  // namespace znsim
