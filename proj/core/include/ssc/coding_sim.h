// Copyright 2026 The SSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Superposition coding with random binning on small discrete sources.
//
// A U-codebook of N_p x N'_p words is drawn from P_U; below every U word
// sits a V-codebook of N_s x N'_s words drawn from P_{V|U}. Only the bin
// indices (m_p, m_s) are published. Authorized users recover the in-bin
// indices (m'_p, m'_s) by joint typicality with their side information.

#ifndef SSC_CODING_SIM_H_
#define SSC_CODING_SIM_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "ssc/access_structure.h"
#include "ssc/discrete.h"

namespace ssc {

struct Epsilons {
  double eps = 0.05;
  double eps1 = 0.10;
  double eps2 = 0.20;

  // Requires 0 < eps < eps1 < eps2 < 1.
  void Validate() const;
};

// Bits per symbol for each index.
struct RateSplit {
  double r_p = 0.0;
  double r_p_prime = 0.0;
  double r_s = 0.0;
  double r_s_prime = 0.0;
};

// Largest combined index width, in bits, that BuildCodebooks accepts.
inline constexpr double kMaxCodebookBits = 24.0;

// ceil(2^(n rate)), at least 1.
std::int64_t IndexSetSize(int n, double rate);

struct CodebookPair {
  int n = 0;
  RateSplit rates;
  Epsilons eps;
  std::uint64_t seed = 0;
  std::int64_t n_p = 1;
  std::int64_t n_p_prime = 1;
  std::int64_t n_s = 1;
  std::int64_t n_s_prime = 1;
  // U word j = m_p * n_p_prime + m'_p occupies [j n, (j + 1) n).
  std::vector<std::uint8_t> u_words;
  // V word k = m_s * n_s_prime + m'_s under U word j occupies
  // [(j n_v + k) n, (j n_v + k + 1) n) with n_v = n_s n_s_prime.
  std::vector<std::uint8_t> v_words;

  std::int64_t num_u() const { return n_p * n_p_prime; }
  std::int64_t num_v() const { return n_s * n_s_prime; }
  std::span<const std::uint8_t> u(std::int64_t j) const;
  std::span<const std::uint8_t> v(std::int64_t j, std::int64_t k) const;
};

// Throws kResource when log2 of the total index count exceeds
// kMaxCodebookBits, kInvalidParameter for n < 1 or negative rates.
CodebookPair BuildCodebooks(const DiscreteSourceSpec& spec, int n,
                            const RateSplit& rates, const Epsilons& eps,
                            std::uint64_t seed);

struct Message {
  std::int64_t m_p = 0;
  std::int64_t m_p_prime = 0;
  std::int64_t m_s = 0;
  std::int64_t m_s_prime = 0;
};

struct DecodeResult {
  bool ok = false;
  // Typical in-bin candidates seen; decoding succeeds only with exactly one.
  std::int64_t candidates = 0;
  std::vector<std::uint8_t> xhat;
};

// Encoder and decoders bound to one codebook. The exhaustive encoder map
// used for exact leakage is built on first use and read-only afterwards.
class BinningScheme {
 public:
  BinningScheme(DiscreteSourceSpec spec, CodebookPair codebook);

  const DiscreteSourceSpec& spec() const { return spec_; }
  const CodebookPair& codebook() const { return cb_; }
  const JointPmf& joint() const { return joint_; }

  // First jointly eps1-typical U word in index order, then the first V word
  // under it; nullopt on encode failure.
  std::optional<Message> Encode(std::span<const std::uint8_t> x) const;

  // y holds one sequence per user; only the users in a are read.
  DecodeResult Decode(std::int64_t m_p, std::int64_t m_s,
                      const std::vector<std::vector<std::uint8_t>>& y,
                      UserSubset a) const;

  // Public message id m_p * n_s + m_s, or FailureId() on encode failure.
  std::int64_t PublicId(const std::optional<Message>& m) const;
  std::int64_t FailureId() const { return cb_.n_p * cb_.n_s; }

  // Public id of every source sequence, indexed with x_1 most significant.
  // Throws kResource when |X|^n > 2^20.
  const std::vector<std::int32_t>& EncoderMap() const;

 private:
  struct DecodeTables {
    JointPmf uvy;
    std::vector<int> xhat;
  };
  const DecodeTables& TablesFor(UserSubset a) const;

  DiscreteSourceSpec spec_;
  CodebookPair cb_;
  JointPmf joint_;
  JointPmf p_ux_;
  JointPmf p_uvx_;

  mutable std::mutex mu_;
  mutable std::map<std::uint64_t, std::unique_ptr<DecodeTables>> tables_;
  mutable std::once_flag map_once_;
  mutable std::vector<std::int32_t> encoder_map_;
};

// Rate thresholds evaluated from the pmfs. The *_bound members are the
// asymptotic region (eps = 0, eta = 0); the remaining members use the
// supplied epsilons with eta = 0.
struct DiscreteRateRegion {
  double r_bound = 0.0;       // max_A I(V;X|Y_A)
  double delta_bound = 0.0;   // max_{A,B} I(V;X) - I(V;Y_A|U) + I(X;Y_B|U)
  double enc_u = 0.0;         // R_p + R'_p > (1 + eps1) I(U;X)
  double enc_v = 0.0;         // R_s + R'_s > (1 + eps1) I(V;X|U)
  double bin_total = 0.0;     // R'_p + R'_s < (1 - eps2) min_A I(V;Y_A)
  double bin_s = 0.0;         // R'_s < (1 - eps2) min_A I(V;Y_A|U)
  double leakage_split = 0.0; // Delta - R_s > max_B I(X;U,Y_B)
  // Constraint system before eliminating redundant rows.
  double pre_r1 = 0.0;
  double pre_r2 = 0.0;
  double pre_d3 = 0.0;
  double pre_d4 = 0.0;
  // Reduced system at the supplied epsilons.
  double reduced_r = 0.0;
  double reduced_delta = 0.0;
};

// Authorized sets range over minimal sets and unauthorized sets over
// maximal ones; every term is monotone under inclusion.
DiscreteRateRegion RateRegionDiscrete(const DiscreteSourceSpec& spec,
                                      const AccessStructure& structure,
                                      const Epsilons& eps = {});

// Rates margin times the encoding thresholds; binning rates are the largest
// multiples of 1/n strictly inside their limits scaled by 1/margin.
RateSplit RatesWithMargin(const DiscreteRateRegion& region, int n,
                          double margin);

struct LeakageEstimate {
  UserSubset set;
  double bits_per_symbol = 0.0;
  double std_error = 0.0;
  // Largest |sum of posterior - 1| over the samples.
  double posterior_normalization_error = 0.0;
  std::int64_t samples = 0;
};

// (1/n)[H(X^n) - E(-log2 P(X^n | M, Y_B^n))] with the posterior summed
// exactly over the encoder preimage of M.
LeakageEstimate LeakageExact(const BinningScheme& scheme, UserSubset b,
                             std::int64_t samples, std::uint64_t seed);

struct AuthorizedStats {
  UserSubset set;
  std::int64_t decode_errors = 0;
  // Encode failures plus decode errors.
  std::int64_t failures = 0;
  double mean_distortion = 0.0;
  // Mean over successful trials; 0 when there were none.
  double success_distortion = 0.0;
  double expected_distortion = 0.0;  // single-letter E d(X, x_hat_A)
};

struct SimOptions {
  // Leakage samples per unauthorized set; 0 means one per trial.
  std::int64_t leakage_samples = 0;
  bool compute_leakage = true;
};

struct SimResult {
  std::int64_t trials = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::int64_t encode_failures = 0;
  std::vector<AuthorizedStats> authorized;
  std::vector<LeakageEstimate> unauthorized;
  // Set when exact leakage was skipped (for example |X|^n > 2^20).
  bool leakage_skipped = false;
  DiscreteRateRegion feasible_rates;
};

// Every authorized set is decoded in every trial (d_max is charged on any
// failure). Leakage covers all unauthorized sets for L <= 6 and the maximal
// ones otherwise. Throws kInvalidParameter for trials < 1.
SimResult Simulate(const BinningScheme& scheme,
                   const AccessStructure& structure, std::int64_t trials,
                   std::uint64_t seed, const SimOptions& options = {});

// Draws (x^n, y_1^n, ..., y_L^n) i.i.d. from P_{XY}.
struct SourceBlock {
  std::vector<std::uint8_t> x;
  std::vector<std::vector<std::uint8_t>> y;
};
SourceBlock DrawSourceBlock(const DiscreteSourceSpec& spec, int n,
                            std::uint64_t seed);

}  // namespace ssc

#endif  // SSC_CODING_SIM_H_
