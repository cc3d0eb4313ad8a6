#pragma once

// Spinless-fermion occupation bases over N <= 63 single-particle states and
// dense embeddings of k-body Hamiltonians and k0-particle transition
// operators.
//
// Sign convention: modes are ordered by bit index and a configuration
// {i1 < ... < ik} is created by A+ = c+_{i1} ... c+_{ik}; its annihilator is
// the adjoint A = c_{ik} ... c_{i1}. Acting with c or c+ on mode i contributes
// (-1)^(number of occupied modes below i).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace egue {

using Mask = std::uint64_t;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxModes = 63;

class FockBasis {
public:
  /// All masks with popcount m over N modes in increasing numeric order.
  FockBasis(int N, int m);

  int modes() const { return N_; }
  int particles() const { return m_; }
  std::size_t size() const { return states_.size(); }
  Mask operator[](std::size_t i) const { return states_[i]; }
  std::span<const Mask> states() const { return states_; }

  std::optional<std::size_t> index_of(Mask state) const;

  bool operator==(const FockBasis& other) const {
    return N_ == other.N_ && m_ == other.m_;
  }

private:
  int N_;
  int m_;
  std::vector<Mask> states_;
};

/// Equivalent to FockBasis(N, m); the name used by higher layers.
FockBasis build_basis(int N, int m);

struct SignedState {
  Mask state = 0;
  int sign = 1;

  bool operator==(const SignedState&) const = default;
};

/// A_config |state>: nullopt unless config is a subset of state.
std::optional<SignedState> annihilate_config(Mask state, Mask config);
/// A+_config |state>: nullopt unless config is disjoint from state.
std::optional<SignedState> create_config(Mask state, Mask config);

struct ManyBodyOperator {
  FockBasis rows_basis;
  FockBasis cols_basis;
  ComplexMatrix entries;
};

/// H = sum_ij V_ij A+_i A_j embedded in `target`. `defining` is the k-particle
/// basis that indexes V; V must be Hermitian to 1e-12 (relative).
ManyBodyOperator build_hamiltonian(const ComplexMatrix& V,
                                   const FockBasis& defining,
                                   const FockBasis& target);

/// O = sum_a V_a A_a (removal, final has m - k0 particles) or
/// O = sum_a V_a A+_a (addition, final has m + k0 particles), as a
/// final x initial matrix.
ManyBodyOperator build_transition(const ComplexVector& coeffs,
                                  const FockBasis& defining,
                                  const FockBasis& initial,
                                  const FockBasis& final_basis);

/// Matrix of a single A_config (or A+_config when `create` is set) from
/// `from` to `to`. Real entries in {0, +1, -1}.
Eigen::MatrixXd config_operator(Mask config, bool create, const FockBasis& from,
                                const FockBasis& to);

/// Relabel single-particle modes: bit i of `mask` moves to bit perm[i].
Mask permute_mask(Mask mask, std::span<const int> perm);

/// Calls fn(subset) for every k-element subset of the set bits of `mask`.
template <class Fn> void for_each_subset(Mask mask, int k, Fn&& fn) {
  int bits[64];
  int n = 0;
  for (Mask rest = mask; rest != 0; rest &= rest - 1) {
    bits[n++] = __builtin_ctzll(rest);
  }
  if (k < 0 || k > n) {
    return;
  }
  int pick[64];
  for (int i = 0; i < k; ++i) {
    pick[i] = i;
  }
  while (true) {
    Mask subset = 0;
    for (int i = 0; i < k; ++i) {
      subset |= Mask{1} << bits[pick[i]];
    }
    fn(subset);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) {
      --i;
    }
    if (i < 0) {
      return;
    }
    ++pick[i];
    for (int j = i + 1; j < k; ++j) {
      pick[j] = pick[j - 1] + 1;
    }
  }
}

} // namespace egue
