// Ensemble averages by Gaussian pair contraction.
//
// With H = sum_ij V_ij A+_i A_j and E[V_ab V_cd] = vh2 d_ad d_bc, each pair of
// H factors contracts to vh2 * sum_ab E_ab (x) E_ba where E_ab = A+_a A_b;
// O+ and O contract to vo2 * sum_alpha A+_alpha (x) A_alpha (removal). Mixed
// O/H pairs vanish by independence. Every E_ab and A_alpha maps an occupation
// state to at most one occupation state, so the trace of a contracted word is
// a signed count of closed paths through occupation states.

#include "egue/ensemble_mc.hpp"

#include "egue/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace egue {

namespace {

enum class StepKind { open_pair, close_pair, transition, transition_adjoint };

struct Step {
  StepKind kind;
  int pair = -1;
};

void pair_partitions(std::vector<int> open, std::vector<std::pair<int, int>>& current,
                     std::vector<std::vector<std::pair<int, int>>>& out) {
  if (open.empty()) {
    out.push_back(current);
    return;
  }
  const int first = open.front();
  for (std::size_t j = 1; j < open.size(); ++j) {
    std::vector<int> rest;
    for (std::size_t t = 1; t < open.size(); ++t) {
      if (t != j) {
        rest.push_back(open[t]);
      }
    }
    current.emplace_back(first, open[j]);
    pair_partitions(rest, current, out);
    current.pop_back();
  }
}

class PathCounter {
public:
  PathCounter(int N, int k, int k0, bool removal, std::vector<Step> steps, int pairs)
      : all_(N >= 64 ? ~Mask{0} : (Mask{1} << N) - 1), k_(k), k0_(k0),
        removal_(removal), steps_(std::move(steps)), open_(static_cast<std::size_t>(pairs)) {}

  long long closed_paths(Mask start) {
    start_ = start;
    total_ = 0;
    walk(0, start, 1);
    return total_;
  }

private:
  void walk(std::size_t pos, Mask state, int sign) {
    if (pos == steps_.size()) {
      if (state == start_) {
        total_ += sign;
      }
      return;
    }
    const Step& step = steps_[pos];
    switch (step.kind) {
    case StepKind::open_pair:
      // E_ab |state> for every admissible (a, b).
      for_each_subset(state, k_, [&](Mask b) {
        const auto removed = annihilate_config(state, b);
        for_each_subset(all_ & ~removed->state, k_, [&](Mask a) {
          const auto added = create_config(removed->state, a);
          open_[static_cast<std::size_t>(step.pair)] = {a, b};
          walk(pos + 1, added->state, sign * removed->sign * added->sign);
        });
      });
      break;
    case StepKind::close_pair: {
      // Partner factor E_ba.
      const auto [a, b] = open_[static_cast<std::size_t>(step.pair)];
      const auto removed = annihilate_config(state, a);
      if (!removed) {
        return;
      }
      const auto added = create_config(removed->state, b);
      if (!added) {
        return;
      }
      walk(pos + 1, added->state, sign * removed->sign * added->sign);
      break;
    }
    case StepKind::transition: {
      const Mask pool = removal_ ? state : (all_ & ~state);
      for_each_subset(pool, k0_, [&](Mask alpha) {
        const auto out = removal_ ? annihilate_config(state, alpha)
                                  : create_config(state, alpha);
        alpha_ = alpha;
        walk(pos + 1, out->state, sign * out->sign);
      });
      break;
    }
    case StepKind::transition_adjoint: {
      const auto out = removal_ ? create_config(state, alpha_)
                                : annihilate_config(state, alpha_);
      if (out) {
        walk(pos + 1, out->state, sign * out->sign);
      }
      break;
    }
    }
  }

  Mask all_;
  int k_;
  int k0_;
  bool removal_;
  std::vector<Step> steps_;
  std::vector<std::pair<Mask, Mask>> open_;
  Mask alpha_ = 0;
  Mask start_ = 0;
  long long total_ = 0;
};

void check_cap(const char* what, const ExactInt& dim, long cap) {
  if (dim > cap) {
    throw CostGuardError(std::string("wick_oracle: ") + what + " dimension " +
                         dim.str() + " exceeds cap " + std::to_string(cap));
  }
}

} // namespace

double wick_oracle(const ModelParams& params, Mode mode, int P, int Q, long cap) {
  validate_formula_domain(params, mode);
  if (P < 0 || Q < 0 || P + Q > 4) {
    throw DomainError("wick_oracle: need P, Q >= 0 and P + Q <= 4");
  }
  if (params.N > kMaxModes) {
    throw DomainError("wick_oracle: N must not exceed 63");
  }
  const long mf = final_particles(params, mode);
  check_cap("initial-space", binomial(params.N, params.m), cap);
  check_cap("final-space", binomial(params.N, mf), cap);
  check_cap("k-particle", binomial(params.N, params.k), cap);
  if ((P + Q) % 2 != 0) {
    return 0.0;
  }

  // Operator word, in order of action on the ket: H_i^P, O, H_f^Q, O+.
  std::vector<int> h_positions(static_cast<std::size_t>(P + Q));
  for (int i = 0; i < P + Q; ++i) {
    h_positions[static_cast<std::size_t>(i)] = i;
  }
  std::vector<std::vector<std::pair<int, int>>> partitions;
  std::vector<std::pair<int, int>> scratch;
  pair_partitions(h_positions, scratch, partitions);

  const FockBasis initial(static_cast<int>(params.N), static_cast<int>(params.m));
  long long total = 0;
  for (const auto& partition : partitions) {
    std::vector<Step> h_steps(static_cast<std::size_t>(P + Q));
    for (std::size_t pair = 0; pair < partition.size(); ++pair) {
      h_steps[static_cast<std::size_t>(partition[pair].first)] = {StepKind::open_pair,
                                                                 static_cast<int>(pair)};
      h_steps[static_cast<std::size_t>(partition[pair].second)] = {StepKind::close_pair,
                                                                  static_cast<int>(pair)};
    }
    std::vector<Step> word(h_steps.begin(), h_steps.begin() + P);
    word.push_back({StepKind::transition});
    word.insert(word.end(), h_steps.begin() + P, h_steps.end());
    word.push_back({StepKind::transition_adjoint});

    PathCounter counter(static_cast<int>(params.N), static_cast<int>(params.k),
                        static_cast<int>(params.k0), mode == Mode::removal, word,
                        static_cast<int>(partition.size()));
    for (const Mask start : initial.states()) {
      total += counter.closed_paths(start);
    }
  }
  return static_cast<double>(total) / static_cast<double>(initial.size());
}

BivariateMoments wick_moments(const ModelParams& params, Mode mode, long cap) {
  BivariateMoments out;
  out.m00 = wick_oracle(params, mode, 0, 0, cap);
  out.m20 = wick_oracle(params, mode, 2, 0, cap);
  out.m02 = wick_oracle(params, mode, 0, 2, cap);
  out.m40 = wick_oracle(params, mode, 4, 0, cap);
  out.m04 = wick_oracle(params, mode, 0, 4, cap);
  out.m11 = wick_oracle(params, mode, 1, 1, cap);
  out.m31 = wick_oracle(params, mode, 3, 1, cap);
  out.m13 = wick_oracle(params, mode, 1, 3, cap);
  out.m22 = wick_oracle(params, mode, 2, 2, cap);
  out.mode = mode;
  out.provenance = Provenance::wick;
  out.vh2 = params.vh2;
  out.vo2 = params.vo2;
  return out;
}

} // namespace egue
