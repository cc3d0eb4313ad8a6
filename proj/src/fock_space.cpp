#include "egue/fock_space.hpp"

#include "egue/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace egue {

namespace {

Mask full_mask(int N) { return N >= 64 ? ~Mask{0} : (Mask{1} << N) - 1; }

int parity_below(Mask state, int mode) {
  const Mask below = state & ((Mask{1} << mode) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

} // namespace

FockBasis::FockBasis(int N, int m) : N_(N), m_(m) {
  if (N < 0 || N > kMaxModes || m < 0 || m > N) {
    throw DomainError("FockBasis: need 0 <= m <= N <= 63, got N=" +
                      std::to_string(N) + " m=" + std::to_string(m));
  }
  for_each_subset(full_mask(N), m, [&](Mask s) { states_.push_back(s); });
  std::sort(states_.begin(), states_.end());
}

std::optional<std::size_t> FockBasis::index_of(Mask state) const {
  const auto it = std::lower_bound(states_.begin(), states_.end(), state);
  if (it == states_.end() || *it != state) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - states_.begin());
}

FockBasis build_basis(int N, int m) { return FockBasis(N, m); }

std::optional<SignedState> annihilate_config(Mask state, Mask config) {
  if ((state & config) != config) {
    return std::nullopt;
  }
  // c_{i1} acts first, then c_{i2}, ...
  int sign = 1;
  for (Mask rest = config; rest != 0; rest &= rest - 1) {
    const int mode = std::countr_zero(rest);
    sign *= parity_below(state, mode);
    state &= ~(Mask{1} << mode);
  }
  return SignedState{state, sign};
}

std::optional<SignedState> create_config(Mask state, Mask config) {
  if ((state & config) != 0) {
    return std::nullopt;
  }
  // c+_{ik} acts first, then c+_{i(k-1)}, ...
  int sign = 1;
  for (Mask rest = config; rest != 0;) {
    const int mode = 63 - std::countl_zero(rest);
    rest &= ~(Mask{1} << mode);
    sign *= parity_below(state, mode);
    state |= Mask{1} << mode;
  }
  return SignedState{state, sign};
}

ManyBodyOperator build_hamiltonian(const ComplexMatrix& V,
                                   const FockBasis& defining,
                                   const FockBasis& target) {
  const auto dim = static_cast<Eigen::Index>(defining.size());
  if (V.rows() != dim || V.cols() != dim) {
    throw DomainError("build_hamiltonian: V must be C(N,k) x C(N,k)");
  }
  if (defining.modes() != target.modes()) {
    throw DomainError("build_hamiltonian: defining and target mode counts differ");
  }
  const double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
  if ((V - V.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("build_hamiltonian: V is not Hermitian");
  }
  const int k = defining.particles();
  const Mask all = full_mask(target.modes());
  const auto n = static_cast<Eigen::Index>(target.size());
  ComplexMatrix H = ComplexMatrix::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const Mask v = target[static_cast<std::size_t>(col)];
    for_each_subset(v, k, [&](Mask j) {
      const auto removed = annihilate_config(v, j);
      const auto jdx = static_cast<Eigen::Index>(*defining.index_of(j));
      for_each_subset(all & ~removed->state, k, [&](Mask i) {
        const auto added = create_config(removed->state, i);
        const auto row = static_cast<Eigen::Index>(*target.index_of(added->state));
        const auto idx = static_cast<Eigen::Index>(*defining.index_of(i));
        H(row, col) += V(idx, jdx) * static_cast<double>(removed->sign * added->sign);
      });
    });
  }
  return {target, target, std::move(H)};
}

ManyBodyOperator build_transition(const ComplexVector& coeffs,
                                  const FockBasis& defining,
                                  const FockBasis& initial,
                                  const FockBasis& final_basis) {
  if (coeffs.size() != static_cast<Eigen::Index>(defining.size())) {
    throw DomainError("build_transition: need one coefficient per k0-configuration");
  }
  const int k0 = defining.particles();
  const int N = initial.modes();
  if (defining.modes() != N || final_basis.modes() != N) {
    throw DomainError("build_transition: mode counts differ");
  }
  bool create = false;
  if (final_basis.particles() == initial.particles() - k0) {
    create = false;
  } else if (final_basis.particles() == initial.particles() + k0) {
    create = true;
  } else {
    throw DomainError("build_transition: final space must hold m -/+ k0 particles");
  }
  if (k0 == 0) {
    // With k0 = 0 both readings coincide; the operator is V_0 times identity.
    create = false;
  }
  const Mask all = full_mask(N);
  ComplexMatrix O = ComplexMatrix::Zero(static_cast<Eigen::Index>(final_basis.size()),
                                        static_cast<Eigen::Index>(initial.size()));
  for (std::size_t col = 0; col < initial.size(); ++col) {
    const Mask v = initial[col];
    const Mask pool = create ? (all & ~v) : v;
    for_each_subset(pool, k0, [&](Mask a) {
      const auto out = create ? create_config(v, a) : annihilate_config(v, a);
      const auto row = *final_basis.index_of(out->state);
      O(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
          coeffs(static_cast<Eigen::Index>(*defining.index_of(a))) *
          static_cast<double>(out->sign);
    });
  }
  return {final_basis, initial, std::move(O)};
}

Eigen::MatrixXd config_operator(Mask config, bool create, const FockBasis& from,
                                const FockBasis& to) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(to.size()),
                                            static_cast<Eigen::Index>(from.size()));
  for (std::size_t col = 0; col < from.size(); ++col) {
    const auto out = create ? create_config(from[col], config)
                            : annihilate_config(from[col], config);
    if (!out) {
      continue;
    }
    const auto row = to.index_of(out->state);
    if (!row) {
      throw DomainError("config_operator: result lies outside the target basis");
    }
    M(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) = out->sign;
  }
  return M;
}

Mask permute_mask(Mask mask, std::span<const int> perm) {
  Mask out = 0;
  for (Mask rest = mask; rest != 0; rest &= rest - 1) {
    const int mode = std::countr_zero(rest);
    if (static_cast<std::size_t>(mode) >= perm.size()) {
      throw DomainError("permute_mask: permutation too short");
    }
    out |= Mask{1} << perm[static_cast<std::size_t>(mode)];
  }
  return out;
}

} // namespace egue
