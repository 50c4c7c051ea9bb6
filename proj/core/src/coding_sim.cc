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

#include "ssc/coding_sim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ssc/errors.h"
#include "ssc/parallel.h"

namespace ssc {
namespace {

constexpr double kMaxEnumeratedSources = 1 << 20;
constexpr std::uint64_t kLeakageStream = 0x1EA4A6E5ULL;

// Inverse-CDF sampler over a pmf.
class Categorical {
 public:
  explicit Categorical(const std::vector<double>& p) : cdf_(p.size()) {
    double acc = 0.0;
    last_ = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      acc += p[i];
      cdf_[i] = acc;
      if (p[i] > 0.0) last_ = i;
    }
  }
  std::size_t operator()(std::mt19937_64& rng) const {
    const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng) *
                     cdf_.back();
    const std::size_t k = static_cast<std::size_t>(
        std::upper_bound(cdf_.begin(), cdf_.end(), r) - cdf_.begin());
    return std::min(k, last_);
  }

 private:
  std::vector<double> cdf_;
  std::size_t last_ = 0;
};

double Pow(double base, int exp) {
  return std::pow(base, static_cast<double>(exp));
}

// Largest k / n strictly below limit, floored at zero.
double LatticeBelow(int n, double limit) {
  if (!(limit > 0.0)) return 0.0;
  const double k = std::ceil(n * limit - 1e-12) - 1.0;
  return std::max(0.0, k) / n;
}

std::vector<UserSubset> AuthorizedSetsToDecode(const AccessStructure& a) {
  std::vector<UserSubset> out;
  if (a.num_users() <= kMaxEnumerationUsers) {
    const std::uint64_t full = UserSubset::Full(a.num_users()).mask();
    for (std::uint64_t m = 1; m <= full; ++m) {
      if (a.IsAuthorized(UserSubset::FromMask(m))) {
        out.push_back(UserSubset::FromMask(m));
      }
    }
  } else {
    out = a.minimal_sets();
  }
  std::sort(out.begin(), out.end(), LexLess);
  return out;
}

std::vector<UserSubset> UnauthorizedSetsForLeakage(const AccessStructure& a) {
  constexpr int kAllSetsUpTo = 6;
  if (a.num_users() > kAllSetsUpTo) return UnauthorizedMaximalSets(a);
  std::vector<UserSubset> out;
  const std::uint64_t full = UserSubset::Full(a.num_users()).mask();
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (!a.IsAuthorized(UserSubset::FromMask(m))) {
      out.push_back(UserSubset::FromMask(m));
    }
  }
  std::sort(out.begin(), out.end(), LexLess);
  return out;
}

}  // namespace

void Epsilons::Validate() const {
  Require(eps > 0.0 && eps < eps1 && eps1 < eps2 && eps2 < 1.0,
          ErrorKind::kInvalidParameter,
          "epsilons must satisfy 0 < eps < eps1 < eps2 < 1");
}

std::int64_t IndexSetSize(int n, double rate) {
  Require(n >= 1, ErrorKind::kInvalidParameter, "block length must be >= 1");
  Require(std::isfinite(rate) && rate >= 0.0, ErrorKind::kInvalidParameter,
          "rates must be finite and nonnegative");
  const double bits = n * rate;
  Require(bits <= kMaxCodebookBits, ErrorKind::kResource,
          "index width " + std::to_string(bits) + " bits exceeds the guard");
  return std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(std::exp2(bits) - 1e-9)));
}

std::span<const std::uint8_t> CodebookPair::u(std::int64_t j) const {
  return {u_words.data() + j * n, static_cast<std::size_t>(n)};
}

std::span<const std::uint8_t> CodebookPair::v(std::int64_t j,
                                              std::int64_t k) const {
  return {v_words.data() + (j * num_v() + k) * n,
          static_cast<std::size_t>(n)};
}

CodebookPair BuildCodebooks(const DiscreteSourceSpec& spec, int n,
                            const RateSplit& rates, const Epsilons& eps,
                            std::uint64_t seed) {
  eps.Validate();
  const JointPmf joint = BuildFullJoint(spec);
  const VarIds ids(spec.num_users());
  CodebookPair cb;
  cb.n = n;
  cb.rates = rates;
  cb.eps = eps;
  cb.seed = seed;
  cb.n_p = IndexSetSize(n, rates.r_p);
  cb.n_p_prime = IndexSetSize(n, rates.r_p_prime);
  cb.n_s = IndexSetSize(n, rates.r_s);
  cb.n_s_prime = IndexSetSize(n, rates.r_s_prime);
  const double total_bits =
      std::log2(static_cast<double>(cb.num_u())) +
      std::log2(static_cast<double>(cb.num_v()));
  Require(total_bits <= kMaxCodebookBits + 1e-9, ErrorKind::kResource,
          "codebook needs 2^" + std::to_string(total_bits) +
              " words; the guard is 2^24");

  const JointPmf p_uv = joint.Marginal({ids.u(), ids.v()});
  std::vector<double> p_u(static_cast<std::size_t>(spec.u_card), 0.0);
  for (int u = 0; u < spec.u_card; ++u) {
    for (int v = 0; v < spec.v_card; ++v)
      p_u[u] += p_uv.probs()[u * spec.v_card + v];
  }
  std::vector<Categorical> v_given_u;
  for (int u = 0; u < spec.u_card; ++u) {
    std::vector<double> row(static_cast<std::size_t>(spec.v_card), 0.0);
    for (int v = 0; v < spec.v_card; ++v) {
      row[v] = p_u[u] > 0.0 ? p_uv.probs()[u * spec.v_card + v] / p_u[u]
                            : (v == 0 ? 1.0 : 0.0);
    }
    v_given_u.emplace_back(row);
  }
  const Categorical draw_u(p_u);

  std::mt19937_64 rng(seed);
  cb.u_words.resize(static_cast<std::size_t>(cb.num_u() * n));
  for (auto& s : cb.u_words) s = static_cast<std::uint8_t>(draw_u(rng));
  cb.v_words.resize(static_cast<std::size_t>(cb.num_u() * cb.num_v() * n));
  for (std::int64_t j = 0; j < cb.num_u(); ++j) {
    const std::span<const std::uint8_t> uj =
        std::span<const std::uint8_t>(cb.u_words).subspan(
            static_cast<std::size_t>(j * n), static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < cb.num_v(); ++k) {
      std::uint8_t* out = cb.v_words.data() + (j * cb.num_v() + k) * n;
      for (int i = 0; i < n; ++i) {
        out[i] = static_cast<std::uint8_t>(v_given_u[uj[i]](rng));
      }
    }
  }
  return cb;
}

BinningScheme::BinningScheme(DiscreteSourceSpec spec, CodebookPair codebook)
    : spec_(std::move(spec)), cb_(std::move(codebook)) {
  joint_ = BuildFullJoint(spec_);
  cb_.eps.Validate();
  const VarIds ids(spec_.num_users());
  p_ux_ = joint_.Marginal({ids.u(), ids.x()});
  p_uvx_ = joint_.Marginal({ids.u(), ids.v(), ids.x()});
  Require(cb_.u_words.size() == static_cast<std::size_t>(cb_.num_u() * cb_.n) &&
              cb_.v_words.size() ==
                  static_cast<std::size_t>(cb_.num_u() * cb_.num_v() * cb_.n),
          ErrorKind::kValidation, "codebook storage does not match its sizes");
}

std::optional<Message> BinningScheme::Encode(
    std::span<const std::uint8_t> x) const {
  Require(static_cast<int>(x.size()) == cb_.n, ErrorKind::kInvalidParameter,
          "source block has the wrong length");
  for (std::int64_t j = 0; j < cb_.num_u(); ++j) {
    if (!IsJointlyTypical({cb_.u(j), x}, p_ux_, cb_.eps.eps1)) continue;
    for (std::int64_t k = 0; k < cb_.num_v(); ++k) {
      if (IsJointlyTypical({cb_.u(j), cb_.v(j, k), x}, p_uvx_,
                           cb_.eps.eps1)) {
        return Message{j / cb_.n_p_prime, j % cb_.n_p_prime,
                       k / cb_.n_s_prime, k % cb_.n_s_prime};
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

const BinningScheme::DecodeTables& BinningScheme::TablesFor(
    UserSubset a) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = tables_.find(a.mask());
  if (it != tables_.end()) return *it->second;
  const VarIds ids(spec_.num_users());
  std::vector<int> vars = {ids.u(), ids.v()};
  const std::vector<int> ya = ids.ys(a);
  vars.insert(vars.end(), ya.begin(), ya.end());
  auto t = std::make_unique<DecodeTables>();
  t->uvy = joint_.Marginal(vars);
  t->xhat = ReconstructionFor(spec_, joint_, a);
  const DecodeTables& ref = *t;
  tables_.emplace(a.mask(), std::move(t));
  return ref;
}

DecodeResult BinningScheme::Decode(
    std::int64_t m_p, std::int64_t m_s,
    const std::vector<std::vector<std::uint8_t>>& y, UserSubset a) const {
  Require(m_p >= 0 && m_p < cb_.n_p && m_s >= 0 && m_s < cb_.n_s,
          ErrorKind::kInvalidParameter, "message index out of range");
  Require(!a.empty() && a.FitsIn(spec_.num_users()),
          ErrorKind::kInvalidParameter, "decoding set is not valid");
  Require(static_cast<int>(y.size()) == spec_.num_users(),
          ErrorKind::kInvalidParameter, "need one side-information sequence "
                                        "per user");
  const std::vector<int> users = a.members();
  for (int u : users) {
    Require(static_cast<int>(y[u].size()) == cb_.n,
            ErrorKind::kInvalidParameter,
            "side information has the wrong length");
  }
  const DecodeTables& tables = TablesFor(a);

  DecodeResult result;
  std::int64_t found_j = -1;
  std::int64_t found_k = -1;
  if (cb_.n_p_prime * cb_.n_s_prime == 1) {
    found_j = m_p;
    found_k = m_s;
    result.candidates = 1;
  } else {
    std::vector<std::span<const std::uint8_t>> seqs(2 + users.size());
    for (std::size_t q = 0; q < users.size(); ++q) seqs[2 + q] = y[users[q]];
    for (std::int64_t pp = 0; pp < cb_.n_p_prime; ++pp) {
      const std::int64_t j = m_p * cb_.n_p_prime + pp;
      seqs[0] = cb_.u(j);
      for (std::int64_t sp = 0; sp < cb_.n_s_prime; ++sp) {
        const std::int64_t k = m_s * cb_.n_s_prime + sp;
        seqs[1] = cb_.v(j, k);
        if (IsJointlyTypical(seqs, tables.uvy, cb_.eps.eps2)) {
          ++result.candidates;
          found_j = j;
          found_k = k;
        }
      }
    }
  }
  if (result.candidates != 1) return result;

  const std::span<const std::uint8_t> v = cb_.v(found_j, found_k);
  result.xhat.resize(static_cast<std::size_t>(cb_.n));
  for (int i = 0; i < cb_.n; ++i) {
    std::size_t cell = v[i];
    for (int u : users) {
      cell = cell * static_cast<std::size_t>(spec_.y_cards[u]) + y[u][i];
    }
    result.xhat[i] = static_cast<std::uint8_t>(tables.xhat[cell]);
  }
  result.ok = true;
  return result;
}

std::int64_t BinningScheme::PublicId(const std::optional<Message>& m) const {
  if (!m) return FailureId();
  return m->m_p * cb_.n_s + m->m_s;
}

const std::vector<std::int32_t>& BinningScheme::EncoderMap() const {
  const double count = Pow(spec_.x_card, cb_.n);
  Require(count <= kMaxEnumeratedSources, ErrorKind::kResource,
          "|X|^n = " + std::to_string(count) +
              " exceeds the exact-enumeration guard 2^20");
  Require(FailureId() < std::numeric_limits<std::int32_t>::max(),
          ErrorKind::kResource, "too many public messages");
  std::call_once(map_once_, [&] {
    const std::size_t total = static_cast<std::size_t>(count);
    std::vector<std::int32_t> map(total);
    ParallelFor(total, [&](std::size_t idx) {
      std::vector<std::uint8_t> x(static_cast<std::size_t>(cb_.n));
      std::size_t rest = idx;
      for (int i = cb_.n - 1; i >= 0; --i) {
        x[i] = static_cast<std::uint8_t>(rest % spec_.x_card);
        rest /= spec_.x_card;
      }
      map[idx] = static_cast<std::int32_t>(PublicId(Encode(x)));
    });
    encoder_map_ = std::move(map);
  });
  return encoder_map_;
}

DiscreteRateRegion RateRegionDiscrete(const DiscreteSourceSpec& spec,
                                      const AccessStructure& structure,
                                      const Epsilons& eps) {
  Require(structure.num_users() == spec.num_users(), ErrorKind::kValidation,
          "access structure and source spec disagree on the number of users");
  const JointPmf joint = BuildFullJoint(spec);
  const VarIds ids(spec.num_users());
  const std::vector<int> x = {ids.x()};
  const std::vector<int> v = {ids.v()};
  const std::vector<int> u = {ids.u()};
  auto plus = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  const double i_vx = joint.MutualInformation(v, x);
  const double i_ux = joint.MutualInformation(u, x);
  const double i_vx_u = joint.MutualInformation(v, x, u);

  double max_vx_ya = 0.0;
  double min_vya = std::numeric_limits<double>::infinity();
  double min_vya_u = std::numeric_limits<double>::infinity();
  for (UserSubset a : structure.minimal_sets()) {
    const std::vector<int> ya = ids.ys(a);
    max_vx_ya = std::max(max_vx_ya, joint.MutualInformation(v, x, ya));
    min_vya = std::min(min_vya, joint.MutualInformation(v, ya));
    min_vya_u = std::min(min_vya_u, joint.MutualInformation(v, ya, u));
  }
  const std::vector<int> y_all = ids.ys(UserSubset::Full(spec.num_users()));
  const double max_vya = joint.MutualInformation(v, y_all);
  const double max_vya_u = joint.MutualInformation(v, y_all, u);

  double max_xyb_u = 0.0;
  double max_xuyb = 0.0;
  for (UserSubset b : UnauthorizedMaximalSets(structure)) {
    const std::vector<int> yb = ids.ys(b);
    max_xyb_u = std::max(
        max_xyb_u, yb.empty() ? 0.0 : joint.MutualInformation(x, yb, u));
    max_xuyb = std::max(max_xuyb, joint.MutualInformation(x, plus(u, yb)));
  }

  DiscreteRateRegion r;
  r.r_bound = max_vx_ya;
  r.delta_bound = i_vx - min_vya_u + max_xyb_u;
  r.enc_u = (1.0 + eps.eps1) * i_ux;
  r.enc_v = (1.0 + eps.eps1) * i_vx_u;
  r.bin_total = (1.0 - eps.eps2) * min_vya;
  r.bin_s = (1.0 - eps.eps2) * min_vya_u;
  r.leakage_split = max_xuyb;
  const double e1 = eps.eps1;
  const double e2 = eps.eps2;
  r.pre_r1 = i_vx_u - (1.0 - e2) * min_vya_u + e1 * i_vx_u;
  r.pre_r2 = i_vx - (1.0 - e2) * min_vya + e1 * i_ux + e1 * i_vx_u;
  r.pre_d3 = i_vx_u - (1.0 - e2) * min_vya + max_xuyb + e1 * i_vx_u;
  r.pre_d4 = i_vx_u - (1.0 - e2) * min_vya_u + max_xuyb + e1 * i_vx_u;
  r.reduced_r = max_vx_ya + e2 * max_vya + e1 * (i_ux + i_vx_u);
  r.reduced_delta = r.delta_bound + e2 * max_vya_u + e1 * (i_ux + i_vx_u);
  return r;
}

RateSplit RatesWithMargin(const DiscreteRateRegion& region, int n,
                          double margin) {
  Require(n >= 1 && margin >= 1.0, ErrorKind::kInvalidParameter,
          "need n >= 1 and margin >= 1");
  RateSplit rates;
  rates.r_s_prime = LatticeBelow(n, region.bin_s / margin);
  // A trivial U has I(U;X) = 0 up to rounding and gets no binning.
  constexpr double kZeroRate = 1e-12;
  if (region.enc_u > kZeroRate) {
    rates.r_p_prime =
        LatticeBelow(n, region.bin_total / margin - rates.r_s_prime);
  }
  rates.r_p = region.enc_u > kZeroRate
                  ? std::max(0.0, margin * region.enc_u - rates.r_p_prime)
                  : 0.0;
  rates.r_s = std::max(0.0, margin * region.enc_v - rates.r_s_prime);
  return rates;
}

SourceBlock DrawSourceBlock(const DiscreteSourceSpec& spec, int n,
                            std::uint64_t seed) {
  Require(n >= 1, ErrorKind::kInvalidParameter, "block length must be >= 1");
  const Categorical draw(spec.p_xy);
  const int num_users = spec.num_users();
  SourceBlock b;
  b.x.resize(static_cast<std::size_t>(n));
  b.y.assign(static_cast<std::size_t>(num_users),
             std::vector<std::uint8_t>(static_cast<std::size_t>(n)));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    std::size_t idx = draw(rng);
    for (int l = num_users - 1; l >= 0; --l) {
      b.y[l][i] = static_cast<std::uint8_t>(idx % spec.y_cards[l]);
      idx /= spec.y_cards[l];
    }
    b.x[i] = static_cast<std::uint8_t>(idx);
  }
  return b;
}

LeakageEstimate LeakageExact(const BinningScheme& scheme, UserSubset b,
                             std::int64_t samples, std::uint64_t seed) {
  Require(samples >= 1, ErrorKind::kInvalidParameter,
          "leakage needs at least one sample");
  const DiscreteSourceSpec& spec = scheme.spec();
  Require(b.FitsIn(spec.num_users()), ErrorKind::kInvalidParameter,
          "unauthorized set exceeds the users");
  const std::vector<std::int32_t>& map = scheme.EncoderMap();
  const int n = scheme.codebook().n;
  const int xc = spec.x_card;
  const VarIds ids(spec.num_users());
  const std::vector<int> users = b.members();

  // log2 P(x) and log2 P(y_B | x) per symbol.
  std::vector<int> vars = {ids.x()};
  const std::vector<int> yb = ids.ys(b);
  vars.insert(vars.end(), yb.begin(), yb.end());
  const JointPmf pxyb = scheme.joint().Marginal(vars);
  const std::size_t yb_cells = pxyb.size() / static_cast<std::size_t>(xc);
  std::vector<double> px(static_cast<std::size_t>(xc), 0.0);
  for (int x = 0; x < xc; ++x) {
    for (std::size_t c = 0; c < yb_cells; ++c) px[x] += pxyb.probs()[x * yb_cells + c];
  }
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_px(px.size());
  std::vector<double> log_cond(pxyb.size());
  double h_x = 0.0;
  for (int x = 0; x < xc; ++x) {
    log_px[x] = px[x] > 0.0 ? std::log2(px[x]) : kNegInf;
    if (px[x] > 0.0) h_x -= px[x] * std::log2(px[x]);
    for (std::size_t c = 0; c < yb_cells; ++c) {
      const double p = pxyb.probs()[x * yb_cells + c];
      log_cond[x * yb_cells + c] =
          (px[x] > 0.0 && p > 0.0) ? std::log2(p / px[x]) : kNegInf;
    }
  }

  const std::size_t total = map.size();
  std::vector<std::uint8_t> digits(total * static_cast<std::size_t>(n));
  std::vector<double> log_prior(total, 0.0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      const int s = static_cast<int>(rest % xc);
      digits[idx * n + i] = static_cast<std::uint8_t>(s);
      log_prior[idx] += log_px[s];
      rest /= xc;
    }
  }
  std::vector<std::vector<std::uint32_t>> preimage(
      static_cast<std::size_t>(scheme.FailureId() + 1));
  for (std::size_t idx = 0; idx < total; ++idx) {
    preimage[map[idx]].push_back(static_cast<std::uint32_t>(idx));
  }

  std::vector<double> nll(static_cast<std::size_t>(samples));
  std::vector<double> norm_err(static_cast<std::size_t>(samples));
  ParallelFor(static_cast<std::size_t>(samples), [&](std::size_t s) {
    const SourceBlock blk = DrawSourceBlock(spec, n, DeriveSeed(seed, s));
    std::size_t xidx = 0;
    std::vector<std::size_t> ycell(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      xidx = xidx * xc + blk.x[i];
      for (int u : users) {
        ycell[i] = ycell[i] * spec.y_cards[u] + blk.y[u][i];
      }
    }
    const std::vector<std::uint32_t>& pre = preimage[map[xidx]];
    std::vector<double> logs(pre.size());
    double peak = kNegInf;
    double own = kNegInf;
    for (std::size_t q = 0; q < pre.size(); ++q) {
      double l = log_prior[pre[q]];
      const std::uint8_t* d = &digits[pre[q] * static_cast<std::size_t>(n)];
      for (int i = 0; i < n && l != kNegInf; ++i) {
        l += log_cond[d[i] * yb_cells + ycell[i]];
      }
      logs[q] = l;
      peak = std::max(peak, l);
      if (pre[q] == xidx) own = l;
    }
    double sum = 0.0;
    for (double l : logs) {
      if (l != kNegInf) sum += std::exp2(l - peak);
    }
    const double log_norm = peak + std::log2(sum);
    double mass = 0.0;
    for (double l : logs) {
      if (l != kNegInf) mass += std::exp2(l - log_norm);
    }
    nll[s] = log_norm - own;
    norm_err[s] = std::abs(mass - 1.0);
  });

  double mean = 0.0;
  for (double v : nll) mean += v;
  mean /= static_cast<double>(samples);
  double var = 0.0;
  for (double v : nll) var += (v - mean) * (v - mean);
  var = samples > 1 ? var / static_cast<double>(samples - 1) : 0.0;

  LeakageEstimate est;
  est.set = b;
  est.samples = samples;
  est.bits_per_symbol = h_x - mean / n;
  est.std_error = std::sqrt(var / static_cast<double>(samples)) / n;
  est.posterior_normalization_error =
      *std::max_element(norm_err.begin(), norm_err.end());
  return est;
}

SimResult Simulate(const BinningScheme& scheme,
                   const AccessStructure& structure, std::int64_t trials,
                   std::uint64_t seed, const SimOptions& options) {
  Require(trials >= 1, ErrorKind::kInvalidParameter, "trials must be >= 1");
  const DiscreteSourceSpec& spec = scheme.spec();
  Require(structure.num_users() == spec.num_users(), ErrorKind::kValidation,
          "access structure and source spec disagree on the number of users");
  const int n = scheme.codebook().n;
  const double d_max = spec.d_max();
  const std::vector<UserSubset> sets = AuthorizedSetsToDecode(structure);
  const std::size_t num_sets = sets.size();

  std::vector<std::uint8_t> enc_fail(static_cast<std::size_t>(trials), 0);
  std::vector<std::uint8_t> dec_ok(static_cast<std::size_t>(trials) * num_sets,
                                   0);
  std::vector<double> dist(static_cast<std::size_t>(trials) * num_sets, 0.0);
  ParallelFor(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const SourceBlock blk = DrawSourceBlock(spec, n, DeriveSeed(seed, t));
    const std::optional<Message> msg = scheme.Encode(blk.x);
    enc_fail[t] = msg ? 0 : 1;
    for (std::size_t s = 0; s < num_sets; ++s) {
      double d = d_max;
      if (msg) {
        const DecodeResult r = scheme.Decode(msg->m_p, msg->m_s, blk.y, sets[s]);
        if (r.ok) {
          dec_ok[t * num_sets + s] = 1;
          double acc = 0.0;
          for (int i = 0; i < n; ++i) {
            acc += spec.distortion[blk.x[i] * spec.xhat_card + r.xhat[i]];
          }
          d = acc / n;
        }
      }
      dist[t * num_sets + s] = d;
    }
  });

  SimResult result;
  result.trials = trials;
  result.n = n;
  result.seed = seed;
  for (std::uint8_t f : enc_fail) result.encode_failures += f;
  for (std::size_t s = 0; s < num_sets; ++s) {
    AuthorizedStats st;
    st.set = sets[s];
    double total = 0.0;
    double success_total = 0.0;
    std::int64_t successes = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
      const std::size_t k = static_cast<std::size_t>(t) * num_sets + s;
      total += dist[k];
      if (dec_ok[k]) {
        success_total += dist[k];
        ++successes;
      } else if (!enc_fail[t]) {
        ++st.decode_errors;
      }
    }
    st.failures = trials - successes;
    st.mean_distortion = total / static_cast<double>(trials);
    st.success_distortion =
        successes > 0 ? success_total / static_cast<double>(successes) : 0.0;
    st.expected_distortion = ExpectedDistortion(spec, scheme.joint(), sets[s]);
    result.authorized.push_back(st);
  }

  if (options.compute_leakage) {
    if (Pow(spec.x_card, n) > kMaxEnumeratedSources) {
      result.leakage_skipped = true;
    } else {
      const std::int64_t samples =
          options.leakage_samples > 0 ? options.leakage_samples : trials;
      const std::vector<UserSubset> bs = UnauthorizedSetsForLeakage(structure);
      for (std::size_t k = 0; k < bs.size(); ++k) {
        result.unauthorized.push_back(LeakageExact(
            scheme, bs[k], samples, DeriveSeed(seed ^ kLeakageStream, k)));
      }
    }
  } else {
    result.leakage_skipped = true;
  }
  result.feasible_rates =
      RateRegionDiscrete(spec, structure, scheme.codebook().eps);
  return result;
}

}  // namespace ssc
