#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "prg/model.hpp"

namespace prg {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Parameters of the i-th lower-bound game: k = ceil(e*i), l = i, n = k!,
// special transit tau_j = n/(k-j+1) - n/(k-j+2) + 2 for 2 <= j <= k-l.
struct LowerBoundParams {
  std::int64_t i = 1;
  std::int64_t k = 1;
  std::int64_t l = 0;
  BigInt n;
  std::map<std::int64_t, BigInt> tau_special;
};

enum class RatioMode { Simulate, Analytic };

inline constexpr std::int64_t kDefaultSimulationCap = 1'000'000;

// ceil(e * x), exact for any x representable here.
std::int64_t ceil_e_times(std::int64_t x);

LowerBoundParams lower_bound_params(std::int64_t i);

// k - l layers; layer j holds k-(j-1) standard edges of transit 1 followed by
// j-1 special edges of transit tau[j].
LinearMultigraph gen_gkl(std::int64_t k, std::int64_t l, const std::map<std::int64_t, Time>& tau);

Game gen_lower_bound_game(std::int64_t i, std::int64_t simulation_cap = kDefaultSimulationCap);

// (k - l - 1) + n / (l + 1)
BigInt eq_completion_closed_form(const LowerBoundParams& p);

// Upper bound on the optimal makespan obtained by bounding the path count by k.
Rational opt_upper_bound_closed_form(const LowerBoundParams& p);

// Lengths of the k edge-disjoint cheapest paths, in big integers.
std::vector<BigInt> analytic_path_lengths(const LowerBoundParams& p);

// Smallest C with sum over paths with len <= C of (C - len + 1) >= n.
BigInt analytic_min_horizon(const std::vector<BigInt>& sorted_lengths, const BigInt& n);

struct RatioReport {
  std::int64_t i = 0;
  LowerBoundParams params;
  BigInt eq_makespan;
  bool simulated = false;
  BigInt opt_horizon;
  Rational ratio;
};

RatioReport pos_report(std::int64_t i, RatioMode mode, std::int64_t simulation_cap = kDefaultSimulationCap);
Rational pos_ratio(std::int64_t i, RatioMode mode, std::int64_t simulation_cap = kDefaultSimulationCap);

// sum_{j=a}^{b} 1/j, exact.
Rational harmonic_range(std::int64_t a, std::int64_t b);

// 1 / (1 - ((l+1)/ceil(e*l)) * (H_ceil(e*l) - H_(l+1)))
Rational limit_bound(std::int64_t l);

// e / (e - 1) to double precision.
double e_over_e_minus_1();

double to_double(const Rational& r);
std::string to_string(const Rational& r);

}  // namespace prg
