#include "prg/instances.hpp"

#include <algorithm>
#include <cmath>

#include "prg/equilibria.hpp"
#include "prg/loading.hpp"
#include "prg/optimum.hpp"

namespace prg {

namespace {

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a && (a > 0) == (b > 0)) q += 1;
  return q;
}

BigInt ceil_of(const Rational& r) {
  return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

// Rational enclosure [lo, hi] of e from the factorial series truncated after
// 1/40!; the tail is below 1/(40! * 40).
struct EBounds {
  Rational lo;
  Rational hi;
  EBounds() {
    constexpr int kTerms = 40;
    BigInt fact = 1;
    lo = 0;
    for (int j = 0; j <= kTerms; ++j) {
      if (j > 0) fact *= j;
      lo += Rational(BigInt(1), fact);
    }
    hi = lo + Rational(BigInt(1), fact * kTerms);
  }
};

const EBounds& e_bounds() {
  static const EBounds bounds;
  return bounds;
}

std::int64_t to_i64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

// Binary splitting of sum 1/j over [a, b] into an unreduced fraction p/q.
void harmonic_split(std::int64_t a, std::int64_t b, BigInt& p, BigInt& q) {
  if (a == b) {
    p = 1;
    q = a;
    return;
  }
  const std::int64_t mid = a + (b - a) / 2;
  BigInt p1, q1, p2, q2;
  harmonic_split(a, mid, p1, q1);
  harmonic_split(mid + 1, b, p2, q2);
  p = p1 * q2 + p2 * q1;
  q = q1 * q2;
}

}  // namespace

std::int64_t ceil_e_times(std::int64_t x) {
  const auto& e = e_bounds();
  const BigInt lo = ceil_of(e.lo * x);
  const BigInt hi = ceil_of(e.hi * x);
  if (lo != hi) throw Error("ceil(e*" + std::to_string(x) + ") is not resolved by the embedded enclosure of e");
  return to_i64(lo);
}

LowerBoundParams lower_bound_params(std::int64_t i) {
  if (i < 1) throw Error("lower-bound index i must be positive");
  LowerBoundParams p;
  p.i = i;
  p.k = ceil_e_times(i);
  p.l = i;
  p.n = 1;
  for (std::int64_t f = 2; f <= p.k; ++f) p.n *= f;
  for (std::int64_t j = 2; j <= p.k - p.l; ++j) {
    const BigInt a = p.n / (p.k - j + 1);
    const BigInt b = p.n / (p.k - j + 2);
    if (a * (p.k - j + 1) != p.n || b * (p.k - j + 2) != p.n) {
      throw std::logic_error("special transit time is not integral");
    }
    p.tau_special[j] = a - b + 2;
  }
  return p;
}

LinearMultigraph gen_gkl(std::int64_t k, std::int64_t l, const std::map<std::int64_t, Time>& tau) {
  if (k < 1 || l < 0 || l >= k) throw Error("G_{k,l} requires 0 <= l < k");
  std::vector<std::vector<Time>> layers;
  for (std::int64_t j = 1; j <= k - l; ++j) {
    std::vector<Time> row(static_cast<std::size_t>(k - (j - 1)), 1);
    if (j >= 2) {
      const auto it = tau.find(j);
      if (it == tau.end() || it->second < 1) {
        throw Error("special transit of layer " + std::to_string(j) + " must be a positive integer");
      }
      row.insert(row.end(), static_cast<std::size_t>(j - 1), it->second);
    }
    layers.push_back(std::move(row));
  }
  return make_graph(layers);
}

Game gen_lower_bound_game(std::int64_t i, std::int64_t simulation_cap) {
  const auto p = lower_bound_params(i);
  if (p.n > simulation_cap) {
    throw Error("lower-bound game i=" + std::to_string(i) + " has n = " + p.n.str() +
                " players, above the simulation cap " + std::to_string(simulation_cap) + "; use analytic mode");
  }
  std::map<std::int64_t, Time> tau;
  for (const auto& [j, t] : p.tau_special) tau[j] = to_i64(t);
  return make_game(gen_gkl(p.k, p.l, tau), static_cast<std::size_t>(to_i64(p.n)));
}

BigInt eq_completion_closed_form(const LowerBoundParams& p) {
  return BigInt(p.k - p.l - 1) + p.n / (p.l + 1);
}

Rational opt_upper_bound_closed_form(const LowerBoundParams& p) {
  const BigInt k = p.k;
  const BigInt l = p.l;
  const Rational head(BigInt(3 * k * k - 4 * k * l - k + l * l + l), BigInt(2 * k));
  const Rational slope = Rational(BigInt(k - l - 1), BigInt((l + 1) * k)) + Rational(BigInt(1), k) -
                         harmonic_range(p.l + 2, p.k) / Rational(k);
  return head + Rational(p.n) * slope;
}

std::vector<BigInt> analytic_path_lengths(const LowerBoundParams& p) {
  std::vector<BigInt> lengths;
  for (std::int64_t path = 1; path <= p.k; ++path) {
    BigInt len = 0;
    for (std::int64_t j = 1; j <= p.k - p.l; ++j) {
      const std::int64_t standard = p.k - (j - 1);
      len += path <= standard ? BigInt(1) : p.tau_special.at(j);
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

BigInt analytic_min_horizon(const std::vector<BigInt>& sorted_lengths, const BigInt& n) {
  BigInt prefix = 0;
  for (std::size_t m = 1; m <= sorted_lengths.size(); ++m) {
    prefix += sorted_lengths[m - 1];
    // On [len_m, len_{m+1}) exactly m paths are usable and deliver m(C+1) - prefix.
    const BigInt mm = static_cast<std::int64_t>(m);
    BigInt c = ceil_div(n + prefix - mm, mm);
    if (c < sorted_lengths[m - 1]) c = sorted_lengths[m - 1];
    if (m == sorted_lengths.size() || c < sorted_lengths[m]) return c;
  }
  throw Error("graph has no path");
}

RatioReport pos_report(std::int64_t i, RatioMode mode, std::int64_t simulation_cap) {
  RatioReport r;
  r.i = i;
  r.params = lower_bound_params(i);
  if (mode == RatioMode::Simulate) {
    const auto game = gen_lower_bound_game(i, simulation_cap);
    const auto eq = sequential_equilibrium(game, GreedyQueue{});
    const auto loaded = load(game, eq);
    r.eq_makespan = loaded.makespan;
    r.simulated = true;
    r.opt_horizon = min_horizon(game);
  } else {
    r.eq_makespan = eq_completion_closed_form(r.params);
    r.opt_horizon = analytic_min_horizon(analytic_path_lengths(r.params), r.params.n);
  }
  r.ratio = Rational(r.eq_makespan, r.opt_horizon);
  return r;
}

Rational pos_ratio(std::int64_t i, RatioMode mode, std::int64_t simulation_cap) {
  return pos_report(i, mode, simulation_cap).ratio;
}

Rational harmonic_range(std::int64_t a, std::int64_t b) {
  if (a < 1) throw Error("harmonic sums start at 1");
  if (a > b) return Rational(0);
  BigInt p, q;
  harmonic_split(a, b, p, q);
  return Rational(p, q);
}

Rational limit_bound(std::int64_t l) {
  if (l < 1) throw Error("limit bound requires l >= 1");
  const std::int64_t k = ceil_e_times(l);
  const Rational inner = Rational(BigInt(l + 1), BigInt(k)) * harmonic_range(l + 2, k);
  return Rational(1) / (Rational(1) - inner);
}

double e_over_e_minus_1() {
  const double e = std::exp(1.0);
  return e / (e - 1.0);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace prg
